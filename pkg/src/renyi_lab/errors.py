"""Exception hierarchy shared by every module."""


class RenyiError(Exception):
    """Base class for all errors raised by renyi_lab."""


class ValidationError(RenyiError, ValueError):
    """An input object violates one of its invariants."""


class SpaceMismatchError(ValidationError):
    """Two objects that must live on the same alphabet do not."""


class OutOfSupportError(RenyiError, ValueError):
    """Conditioning on an outcome of zero probability."""


class UnsupportedOrderError(RenyiError, ValueError):
    """The requested order lies outside the domain of the operation."""


class GridTooLargeError(RenyiError, ValueError):
    """A brute-force oracle would enumerate more points than allowed."""

    def __init__(self, size, limit):
        self.size = size
        self.limit = limit
        super().__init__(f"grid has {size:.3g} points, limit is {limit:.3g}")


class PropertyViolation(RenyiError, AssertionError):
    """A checked inequality or identity failed beyond its tolerance."""
