"""Exception types shared across the package."""


class VBSError(Exception):
    """Base class for all library errors."""


class ZeroDenominator(VBSError, ZeroDivisionError):
    pass


class BadBase(VBSError, ValueError):
    pass


class OutOfRange(VBSError, ValueError):
    pass


class NotCoprime(VBSError, ValueError):
    pass


class NotFoundWithinCap(VBSError, LookupError):
    """Fewer than the requested number of nonzero digits inside the window."""


class SieveLimit(VBSError, IndexError):
    pass


class ScheduleExhausted(VBSError, LookupError):
    """A schedule value beyond the finite table was needed."""


class GuardFailed(VBSError):
    """A runtime-checked inequality needed by an algorithm does not hold."""

    def __init__(self, name, detail=""):
        self.name = name
        super().__init__(f"guard {name!r} failed" + (f": {detail}" if detail else ""))


class Undecidable(GuardFailed):
    """A symbolic comparison could not be settled inside the bit budget."""


class PremiseViolated(VBSError, ValueError):
    pass


class SearchFailed(VBSError):
    pass


class InconsistentOracles(VBSError):
    """Trace and cut do not describe one irrational number."""


class InvalidSchedule(VBSError, ValueError):
    pass


class UnknownSuite(VBSError, KeyError):
    pass


class BudgetExceeded(VBSError):
    """Materializing a power value would exceed the configured bit budget."""
