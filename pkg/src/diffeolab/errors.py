"""Semantic exception hierarchy shared by all diffeolab modules."""


class DiffeolabError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(DiffeolabError, ValueError):
    """A numeric argument is outside its admissible range."""


class DomainError(DiffeolabError, ValueError):
    """A point falls outside the open unit interval (or another declared domain)."""

    def __init__(self, point, message=None):
        self.point = point
        super().__init__(message or f"point {point!r} outside the open domain")


class QuadratureError(DiffeolabError):
    """Adaptive quadrature exhausted its subdivision budget.

    Carries the best available estimate and the residual error bound so the
    caller can decide whether the partial answer is still usable.
    """

    def __init__(self, best, residual, message=None):
        self.best = best
        self.residual = residual
        super().__init__(
            message
            or f"quadrature did not converge: best={best!r}, residual={residual!r}"
        )


class NotAttainedError(DiffeolabError):
    """A target value lies outside the closure of the sampled range.

    This is the operational signal that a candidate flow has violated the
    interval boundary: inversion of the time-t map fails at the probe point.
    """

    def __init__(self, target, low, high):
        self.target = target
        self.low = low
        self.high = high
        super().__init__(
            f"value {target!r} not attained: sampled range is [{low!r}, {high!r}]"
        )


class StencilError(DiffeolabError):
    """A finite-difference stencil would leave the open interval."""

    def __init__(self, x, extent, message=None):
        self.x = x
        self.extent = extent
        super().__init__(
            message
            or f"stencil of half-width {extent!r} at x={x!r} exits (0, 1); "
            "use a smaller step"
        )


class FieldError(DiffeolabError):
    """A velocity field produced a non-finite value."""

    def __init__(self, t, x, value):
        self.t = t
        self.x = x
        self.value = value
        super().__init__(f"non-finite field value {value!r} at t={t!r}, x={x!r}")


class BoundaryViolationError(DiffeolabError):
    """A path of maps ceased to cover the requested point of the interval."""


class IntegrationError(DiffeolabError):
    """The state of an integration became non-finite before classification."""
