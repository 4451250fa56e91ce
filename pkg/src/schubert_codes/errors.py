"""Exception types raised across the package."""


class SchubertError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInput(SchubertError, ValueError):
    """Malformed or out-of-range arguments."""


class NonPrime(InvalidInput):
    pass


class OrderTooLarge(InvalidInput):
    pass


class DivisionByZero(SchubertError, ZeroDivisionError):
    pass


class AmbientMismatch(InvalidInput):
    pass


class DimensionMismatch(InvalidInput):
    pass


class DegreeOverflow(InvalidInput):
    pass


class DegreeMismatch(InvalidInput):
    pass


class ZeroInput(InvalidInput):
    pass


class DegreeEqualsAmbient(InvalidInput):
    pass


class ZeroDimension(InvalidInput):
    pass


class RankDeficient(InvalidInput):
    pass


class NotStrictlyIncreasing(InvalidInput):
    pass


class OutOfRange(InvalidInput):
    pass


class EllTooSmall(InvalidInput):
    pass


class BudgetExceeded(SchubertError):
    """An exhaustive computation would exceed its configured budget.

    ``what`` names the resource, ``needed`` and ``budget`` are the counts.
    """

    def __init__(self, what: str, needed: int, budget: int):
        self.what = what
        self.needed = needed
        self.budget = budget
        super().__init__(f"{what}: need {needed}, budget is {budget}")


class RankMismatch(SchubertError):
    """Computed rank of the evaluation matrix disagrees with the determinant formula."""


class MinimumDistanceMismatch(SchubertError):
    """Exhaustive minimum distance differs from q**delta."""
