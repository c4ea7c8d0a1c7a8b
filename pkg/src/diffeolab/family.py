"""The mollified-translation family on the open unit interval.

For a shift parameter t with |t| <= 1/4, the map moves every point of the
middle plateau [2|t|, 1 - 2|t|] by exactly t and tapers the displacement to
zero toward the endpoints by convolving an indicator with the width-|t|
mollifier.  Three facts drive everything downstream:

* the displacement factor lies in [0, 1], so the map never leaves (0, 1);
* the space derivative is 1 + t * (mollifier terms) and the mollifier peak
  is below 1, so the derivative stays above 1 - peak > 0 and each member is
  a genuine increasing diffeomorphism;
* on the plateau the map is literally x + t, so the time derivative of the
  family at t = 0 is the constant function 1 on the whole interval.

Evaluation is piecewise: the plateau branch involves no quadrature at all,
only the two edge branches integrate the mollifier.
"""

from __future__ import annotations

import functools

from .diffeo import Diffeo
from .errors import DomainError, ParameterError
from .mollifier import mollifier_mass, scaled_mollifier

__all__ = [
    "MAX_SHIFT",
    "evaluate",
    "member",
    "plateau_radius",
    "space_derivative",
    "time_derivative_at_zero",
]

# closed upper bound on |t|: the plateau [2|t|, 1-2|t|] degenerates to the
# single point 1/2 at |t| = 1/4 but every formula below remains valid there
MAX_SHIFT = 0.25

EDGE_QUADRATURE_TOL = 1e-11


def _validate(t: float, x: float) -> None:
    if abs(t) > MAX_SHIFT:
        raise ParameterError(f"shift must satisfy |t| <= {MAX_SHIFT}, got {t!r}")
    if not 0.0 < x < 1.0:
        raise DomainError(x)


def evaluate(t: float, x: float, tol: float = EDGE_QUADRATURE_TOL) -> float:
    """Value of the shift-t member at x.

    Branches: exact identity at t = 0; exact translation x + t on the
    plateau; mollifier partial masses on the two edge zones.  The result
    always lies strictly between 0 and 1.
    """
    _validate(t, x)
    if t == 0.0:
        return x
    at = abs(t)
    if x < 2.0 * at:
        return x + t * mollifier_mass(at, at - x, at, tol)
    if x <= 1.0 - 2.0 * at:
        return x + t
    return x + t * mollifier_mass(at, -at, 1.0 - at - x, tol)


def space_derivative(t: float, x: float) -> float:
    """Derivative in x: 1 + t * (rising edge bump - falling edge bump).

    The two bump terms have disjoint supports for |t| <= 1/4 and each is
    bounded by the mollifier peak, so the value stays within (1 - peak,
    1 + peak) and in particular strictly positive.  No quadrature is
    involved.
    """
    _validate(t, x)
    if t == 0.0:
        return 1.0
    at = abs(t)
    return 1.0 + t * (
        scaled_mollifier(at, x - at) - scaled_mollifier(at, x - 1.0 + at)
    )


def time_derivative_at_zero(x: float) -> float:
    """Velocity of the family at t = 0: identically 1 on (0, 1).

    For |t| below plateau_radius(x) the evaluation at x is exactly x + t,
    so the centered difference quotient in t collapses to 1; the value is
    analytic, not approximated.
    """
    if not 0.0 < x < 1.0:
        raise DomainError(x)
    return 1.0


def plateau_radius(x: float) -> float:
    """Largest r such that |t| < r forces the exact-translation branch at x."""
    if not 0.0 < x < 1.0:
        raise DomainError(x)
    return 0.25 * min(x, 1.0 - x)


def member(t: float, tol: float = EDGE_QUADRATURE_TOL) -> Diffeo:
    """Package the shift-t map and its analytic derivative as a Diffeo."""
    if abs(t) > MAX_SHIFT:
        raise ParameterError(f"shift must satisfy |t| <= {MAX_SHIFT}, got {t!r}")
    return Diffeo(
        func=functools.partial(evaluate, t, tol=tol),
        deriv=functools.partial(space_derivative, t),
        label=f"mollified translation t={t!r}",
    )
