"""Exception types shared across the library."""


class OverinterpError(Exception):
    """Base class for all library errors."""


class DomainError(OverinterpError):
    """A parameter lies outside the domain an operation is defined on."""


class OscillationError(OverinterpError):
    """Circle-maximum sampling failed to stabilize within the refinement cap."""


class BoundaryZeroError(OverinterpError):
    """A zero sits on (or too near) every candidate counting circle."""


class UnresolvedError(OverinterpError):
    """Winding-number quadrature did not stabilize to an integer."""


class ConditioningError(OverinterpError):
    """Divided differences blew up; `gap` holds the offending node distance."""

    def __init__(self, msg: str, gap: float | None = None):
        super().__init__(msg)
        self.gap = gap


class NotApplicableError(OverinterpError):
    """A certificate precondition is violated for the supplied parameters."""


class DivergesError(OverinterpError):
    """A tail sum is not summable over the supplied horizon."""


class DegenerateError(OverinterpError):
    """Every candidate denominator vanishes at the origin.

    `solution` carries the linearized (P, Q) pair that was found anyway.
    """

    def __init__(self, msg: str, solution=None):
        super().__init__(msg)
        self.solution = solution


class GridTooCoarseError(OverinterpError):
    """Circle-selection grid refinement hit its cap with empty intersection."""


class NoCurveUpToCapError(OverinterpError):
    """No curve of degree <= cap passes through the point set.

    `profile` holds the (degree, sigma_min/sigma_max) pairs examined.
    """

    def __init__(self, msg: str, profile=None):
        super().__init__(msg)
        self.profile = profile


class ConfigError(OverinterpError):
    """Invalid experiment configuration."""
