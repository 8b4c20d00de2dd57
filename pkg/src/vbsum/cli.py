"""Command-line front end: ``vbs <verb> [flags]``.

Exit codes: 0 success, 1 failed verification, 2 usage or input error,
3 when a schedule runs out, a guard fails or oracles disagree.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import alpha as alpha_mod
from .conversions import (
    GsumSource,
    cut_from_gsum,
    gsum_terms_from_trace_and_cut,
    native_cut,
    native_trace_below,
    trace_below_from_gsum,
)
from .errors import (
    BudgetExceeded,
    GuardFailed,
    InconsistentOracles,
    ScheduleExhausted,
    SearchFailed,
    VBSError,
)
from .oracles import Side, cut, make_oracle, parse_real_spec, real_prefix
from .rational import expand_prefix, expansion_shape, format_rational, parse_rational
from .schedules import get_schedule
from .sumapprox import general_sum, sum_above, sum_below
from .verify import run_suite

HARD_FAILURES = (ScheduleExhausted, GuardFailed, InconsistentOracles, SearchFailed, BudgetExceeded)


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _natural(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be natural: {text!r}")
    return value


def _real(text: str) -> str:
    body = text
    for prefix in ("native:", "gsum:"):
        if text.startswith(prefix):
            body = text[len(prefix):]
    try:
        parse_real_spec(body)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return text


FLAGS = {
    "rat": dict(type=_rational, metavar="C/D"),
    "base": dict(type=_natural, metavar="N"),
    "real": dict(type=_real, metavar="SPEC"),
    "schedule": dict(metavar="ID|@FILE"),
    "q": dict(type=_rational, metavar="C/D"),
    "terms": dict(type=_natural, metavar="N"),
    "n": dict(type=_natural, metavar="N"),
    "h": dict(type=_natural, metavar="N"),
    "horizon": dict(type=_natural, metavar="N"),
    "max": dict(type=_natural, metavar="N"),
    "from": dict(type=_natural, metavar="N", dest="start"),
    "count": dict(type=_natural, metavar="N"),
    "suite": dict(metavar="NAME"),
}

VERBS = {
    "analyze": (["rat", "base"], "finite/periodic structure of a rational's expansion"),
    "digits": (["rat", "real", "base", "from", "count", "n"], "base-b digits of a rational or real"),
    "sum-below": (["real", "base", "terms"], "base-b sum approximation from below"),
    "sum-above": (["real", "base", "terms"], "base-b sum approximation from above"),
    "gsum": (["real", "base", "n"], "general sum approximation G(b, n)"),
    "alpha": (["schedule", "n"], "partial sum alpha_n"),
    "beta": (["schedule", "n"], "companion beta_n"),
    "cut": (["real", "q"], "Dedekind cut: 0 iff q is below the value"),
    "trace-above": (["schedule", "q"], "trace of alpha from above (0 when q < alpha)"),
    "trace-below": (["real", "q"], "trace from below built from G"),
    "fast-term": (["schedule", "base", "n"], "n-th sum term of alpha via the fast path"),
    "recover": (["schedule", "n", "h"], "recover h(n+1) from h(n) and G"),
    "convert": (["real", "base", "n", "terms"], "rebuild G(b, n) from a trace and a cut"),
    "verify": (["suite", "schedule", "real", "base", "terms", "horizon", "max", "from", "count"], "run a self-check suite"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vbs", description="Variable-base sum approximations of irrationals.")
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")
    for verb, (flags, help_text) in VERBS.items():
        p = sub.add_parser(verb, help=help_text, description=help_text)
        for flag in flags:
            p.add_argument(f"--{flag}", **FLAGS[flag])
        p.add_argument("--json", action="store_true", help="emit one JSON object on stdout")
    return parser


def _need(args, *names):
    missing = [n for n in names if getattr(args, n if n != "from" else "start") is None]
    if missing:
        raise UsageError("missing " + ", ".join(f"--{n}" for n in missing))


def _need_base(args):
    _need(args, "base")
    if args.base < 2:
        raise UsageError("--base must be at least 2")


def _oracle(args):
    spec = args.real
    for prefix in ("native:", "gsum:"):
        if spec.startswith(prefix):
            spec = spec[len(prefix):]
    return make_oracle(spec)


def _alpha(args):
    _need(args, "schedule")
    return alpha_mod.alpha_number(get_schedule(args.schedule)) if args.schedule.startswith("@") else alpha_mod.alpha_number(args.schedule)


# each handler returns (text for stdout, JSON result, trace or None)


def cmd_analyze(args):
    _need(args, "rat")
    _need_base(args)
    shape = expansion_shape(args.rat, args.base)
    result = shape.as_dict()
    return json.dumps(result, separators=(",", ":")), result, None


def cmd_digits(args):
    _need_base(args)
    start = args.start or 1
    count = args.count if args.count is not None else args.n
    if count is None:
        raise UsageError("missing --count (or --n)")
    if (args.rat is None) == (args.real is None):
        raise UsageError("give exactly one of --rat and --real")
    if args.rat is not None:
        digits = list(expand_prefix(args.rat, args.base, count, start).digits)
    else:
        digits = list(real_prefix(_oracle(args), args.base, start + count - 1).digits[start - 1:])
    return ",".join(map(str, digits)), digits, None


def _sum(args, fn):
    _need(args, "real", "terms")
    _need_base(args)
    seq = fn(_oracle(args), args.base, args.terms)
    result = {
        "terms": [{"D": t.digit, "b": t.base, "k": t.exponent} for t in seq],
        "partial": format_rational(sum((t.value for t in seq), Fraction(0))),
    }
    return seq.serialize(), result, None


def cmd_sum_below(args):
    return _sum(args, sum_below)


def cmd_sum_above(args):
    return _sum(args, sum_above)


def cmd_gsum(args):
    _need(args, "real", "base", "n")
    value = general_sum(_oracle(args), args.base, args.n)
    return format_rational(value), format_rational(value), None


def cmd_alpha(args):
    _need(args, "n")
    value = alpha_mod.partial_alpha(_alpha(args), args.n)
    return format_rational(value), format_rational(value), None


def cmd_beta(args):
    _need(args, "n")
    value = alpha_mod.beta(_alpha(args), args.n)
    return format_rational(value), format_rational(value), None


def cmd_cut(args):
    _need(args, "real", "q")
    value = 0 if cut(_oracle(args), args.q) is Side.BELOW else 1
    return str(value), value, None


def _check_unit(q):
    if not 0 < q < 1:
        raise UsageError("--q must lie strictly between 0 and 1")


def cmd_trace_above(args):
    _need(args, "q")
    _check_unit(args.q)
    value, step = alpha_mod.trace_above_with_step(_alpha(args), args.q)
    return format_rational(value), format_rational(value), {"step": step}


def cmd_trace_below(args):
    _need(args, "real", "q")
    _check_unit(args.q)
    o = _oracle(args)
    if args.real.startswith("native:"):
        value = native_trace_below(o)(args.q)
    else:
        value = trace_below_from_gsum(GsumSource(o), args.q)
    return format_rational(value), format_rational(value), None


def cmd_fast_term(args):
    _need(args, "n")
    _need_base(args)
    if args.n < 1:
        raise UsageError("--n must be positive")
    term, trace = alpha_mod.fast_sum_below_term(_alpha(args), args.base, args.n)
    result = {"D": term.digit, "b": term.base, "k": term.exponent, "value": format_rational(term.value)}
    return str(term), result, trace.as_dict()


def cmd_recover(args):
    _need(args, "n", "h")
    value = alpha_mod.recover_next_value(_alpha(args), args.n, args.h)
    return str(value), value, None


def cmd_convert(args):
    _need(args, "real")
    _need_base(args)
    count = args.terms if args.terms is not None else args.n
    if count is None:
        raise UsageError("missing --n or --terms")
    o = _oracle(args)
    if args.real.startswith("native:"):
        trace, dcut = native_trace_below(o), native_cut(o)
    else:
        src = GsumSource(o)
        trace = lambda q: trace_below_from_gsum(src, q)
        dcut = lambda q: cut_from_gsum(src, q)
    terms = gsum_terms_from_trace_and_cut(trace, dcut, args.base, count)
    if args.terms is None:
        value = terms[-1] if terms else Fraction(0)
        return format_rational(value), format_rational(value), None
    values = [format_rational(t) for t in terms]
    return "\n".join(values), values, None


def cmd_verify(args):
    _need(args, "suite")
    options = dict(schedule=args.schedule, real=args.real, base=args.base, terms=args.terms,
                   horizon=args.horizon, start=args.start, count=args.count)
    if args.suite == "expansions":
        options["max_den"] = args.max
    elif args.suite in ("lemma3", "lemma4"):
        options["max_j"] = args.max
    else:
        options["max"] = args.max
    if args.real is not None:
        options["real"] = args.real.split(":", 1)[1] if args.real.startswith(("native:", "gsum:")) else args.real
    report = run_suite(args.suite, **options)
    result = {"suite": report.suite, "passed": report.passed, "total": len(report.checks),
              "checks": [{"name": n, "ok": ok} for n, ok in report.checks]}
    return "\n".join(report.lines()), result, None, report.ok


HANDLERS = {verb: globals()["cmd_" + verb.replace("-", "_")] for verb in VERBS}


def run(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    want_json = "--json" in argv
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 2
        if want_json and code != 0:
            print(json.dumps({"ok": False, "result": None, "trace": None, "error": "usage"}))
        return code

    def fail(code, message):
        print(f"vbs: {message}", file=sys.stderr)
        if args.json:
            print(json.dumps({"ok": False, "result": None, "trace": None, "error": message}))
        return code

    try:
        out = HANDLERS[args.verb](args)
    except UsageError as exc:
        return fail(2, str(exc))
    except HARD_FAILURES as exc:
        return fail(3, f"{type(exc).__name__}: {exc}")
    except (VBSError, ValueError, ZeroDivisionError) as exc:
        return fail(2, f"{type(exc).__name__}: {exc}")
    text, result, trace = out[:3]
    ok = out[3] if len(out) > 3 else True
    if args.json:
        print(json.dumps({"ok": ok, "result": result, "trace": trace}))
    else:
        print(text)
    return 0 if ok else 1


def main() -> None:
    sys.exit(run())
