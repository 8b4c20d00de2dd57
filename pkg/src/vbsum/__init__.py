"""Exact variable-base sum approximations of irrational numbers.

Rationals are :class:`fractions.Fraction`. The main entry points:

* :mod:`vbsum.rational`: base-b expansions of rationals
* :mod:`vbsum.oracles`: bracketing oracles for sqrt(k) - floor(sqrt(k)) and alpha
* :mod:`vbsum.sumapprox`: sum approximations from below and above
* :mod:`vbsum.schedules`: exponent schedules and the growth inequalities
* :mod:`vbsum.alpha`: the alpha numbers and their algorithms
* :mod:`vbsum.conversions`: trace plus cut versus general sum approximation
"""

from .alpha import AlphaNumber, alpha_number, dedekind_cut, fast_sum_below_term, recover_next_value, trace_above
from .oracles import Side, cut, make_oracle, real_prefix
from .rational import digit_at, expansion_shape, format_rational, parse_rational
from .sumapprox import general_sum, general_sum_above, sum_above, sum_below

__all__ = [
    "AlphaNumber",
    "Side",
    "alpha_number",
    "cut",
    "dedekind_cut",
    "digit_at",
    "expansion_shape",
    "fast_sum_below_term",
    "format_rational",
    "general_sum",
    "general_sum_above",
    "make_oracle",
    "parse_rational",
    "real_prefix",
    "recover_next_value",
    "sum_above",
    "sum_below",
    "trace_above",
]
