"""Exception hierarchy shared by every module."""


class HyperboundError(Exception):
    """Base class for all library errors."""


class PoleError(HyperboundError, ZeroDivisionError):
    """A gamma function or Pochhammer product hit a pole."""


class DomainError(HyperboundError, ValueError):
    """Argument lies outside the region where the requested method is valid."""


class ShapeError(HyperboundError, ValueError):
    """Parameter vectors have lengths the operation does not accept."""


class DimensionMismatch(ShapeError):
    pass


class NonPositiveParameter(HyperboundError, ValueError):
    pass


class SpecViolation(HyperboundError, ValueError):
    """Representation preconditions (split sizes, excess sign, ...) fail."""


class ConvergenceConditionViolated(SpecViolation):
    pass


class NonConvergence(HyperboundError, ArithmeticError):
    """Series or iteration could not reach the requested accuracy."""


class NoConvergence(NonConvergence):
    """Quadrature exhausted its refinement levels."""


class DegenerateParameters(HyperboundError, ValueError):
    pass


class ContourDivergence(HyperboundError, ValueError):
    pass


class HypothesisFailed(HyperboundError):
    """Raised only on request; certificates normally record failures instead."""
