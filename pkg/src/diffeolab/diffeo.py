"""Candidate diffeomorphisms of the open unit interval.

A candidate is just an evaluation handle plus an optional analytic first
derivative.  Membership in the group under study means two things, checked
on explicit probe grids: the map sends (0, 1) into itself with boundary
limits 0 and 1 (endpoint anchoring), and its derivative has a strictly
positive sampled infimum.  True limits at the open endpoints are not
computable, so geometric probe sequences with a monotone-approach
requirement stand in for them; the grids are fixed and reported so every
verdict is reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional, Sequence

import numpy as np

from .errors import DomainError, NotAttainedError, ParameterError, StencilError

__all__ = [
    "Diffeo",
    "DerivativeEstimate",
    "MembershipReport",
    "ProbeGrid",
    "check_anchoring",
    "check_membership",
    "compose",
    "differentiate",
    "identity",
    "invert",
]


def _require_interior(x: float) -> None:
    if not 0.0 < x < 1.0:
        raise DomainError(x)


@dataclass(frozen=True)
class Diffeo:
    """A smooth self-map candidate of (0, 1) with optional analytic derivative."""

    func: Callable[[float], float]
    deriv: Optional[Callable[[float], float]] = None
    label: str = ""

    def __call__(self, x: float) -> float:
        _require_interior(x)
        return self.func(x)

    def derivative(self, x: float, step: float = 1e-6) -> float:
        """Analytic derivative when present, central difference otherwise.

        The fallback step is shrunk near the endpoints so the stencil stays
        inside (0, 1) even for probe points within 1e-12 of the boundary.
        """
        _require_interior(x)
        if self.deriv is not None:
            return self.deriv(x)
        h = min(step, 0.25 * x, 0.25 * (1.0 - x))
        return differentiate(self, x, order=1, step=h).value


def identity() -> Diffeo:
    return Diffeo(func=lambda x: x, deriv=lambda x: 1.0, label="identity")


@dataclass(frozen=True)
class ProbeGrid:
    """Probe points for membership tests.

    left approaches 0 and right approaches 1 geometrically (distances
    10^-2 down to 10^-12 from the endpoint); interior is uniform.  The
    endpoint-concentrated parts catch derivative degeneration that a
    uniform grid would miss.
    """

    left: tuple[float, ...]
    right: tuple[float, ...]
    interior: tuple[float, ...]
    description: str = ""

    @staticmethod
    def default(
        per_side: int = 200, interior: int = 600, closest: float = 1e-12
    ) -> "ProbeGrid":
        exponents = np.linspace(-2.0, math.log10(closest), per_side)
        dists = np.power(10.0, exponents)
        left = tuple(dists.tolist())
        right = tuple((1.0 - dists).tolist())
        inner = tuple(np.linspace(0.01, 0.99, interior).tolist())
        return ProbeGrid(
            left=left,
            right=right,
            interior=inner,
            description=(
                f"{per_side} geometric points per endpoint "
                f"(distance 1e-02 .. {closest:.0e}), {interior} uniform interior"
            ),
        )

    def all_points(self) -> tuple[float, ...]:
        return self.left + self.interior + self.right

    def validate(self) -> None:
        for x in self.all_points():
            if not 0.0 < x < 1.0:
                raise DomainError(x, f"probe point {x!r} outside (0, 1)")


@dataclass(frozen=True)
class MembershipReport:
    """Outcome of the endpoint-anchoring and derivative-infimum tests."""

    anchored: bool
    is_member: bool
    left_limit_estimate: float
    right_limit_estimate: float
    deriv_inf_estimate: float
    probe_description: str
    tol: float
    failures: tuple[str, ...] = field(default=())


def _monotone_approach(values: Sequence[float]) -> bool:
    # values ordered from the farthest probe to the closest; the gap to the
    # limit must never grow on the way in (tiny slack for round-off)
    slack = 1e-15
    return all(b <= a + slack for a, b in zip(values, values[1:]))


def check_anchoring(
    f: Diffeo, probe: Optional[ProbeGrid] = None, tol: float = 1e-6
) -> MembershipReport:
    """Does f map (0, 1) into itself with boundary limits 0 and 1?

    Probes must approach the limits monotonically and get within tol at the
    closest probe; any value landing outside (0, 1) is a failure (this is
    exactly how the shifted candidates x + t are rejected).
    """
    if tol <= 0.0:
        raise ParameterError(f"tolerance must be positive, got {tol!r}")
    grid = probe if probe is not None else ProbeGrid.default()
    grid.validate()

    failures: list[str] = []
    # grid.left runs from distance 1e-2 down to the closest probe, so both
    # lists below are ordered farthest-from-endpoint first
    left_vals = [f(x) for x in grid.left]
    right_vals = [f(x) for x in grid.right]
    interior_vals = [f(x) for x in grid.interior]

    points = list(grid.left) + list(grid.interior) + list(grid.right)
    for x, y in zip(points, left_vals + interior_vals + right_vals):
        if not 0.0 < y < 1.0:
            failures.append(f"f({x!r}) = {y!r} outside (0, 1)")
            break

    left_gaps = [abs(v) for v in left_vals]
    right_gaps = [abs(v - 1.0) for v in right_vals]
    if left_gaps[-1] > tol:
        failures.append(f"left limit gap {left_gaps[-1]!r} above tol")
    if right_gaps[-1] > tol:
        failures.append(f"right limit gap {right_gaps[-1]!r} above tol")
    if not _monotone_approach(left_gaps):
        failures.append("approach to 0 not monotone")
    if not _monotone_approach(right_gaps):
        failures.append("approach to 1 not monotone")

    return MembershipReport(
        anchored=not failures,
        is_member=False,
        left_limit_estimate=left_vals[-1],
        right_limit_estimate=right_vals[-1],
        deriv_inf_estimate=math.nan,
        probe_description=grid.description,
        tol=tol,
        failures=tuple(failures),
    )


def check_membership(
    f: Diffeo, probe: Optional[ProbeGrid] = None, tol: float = 1e-6
) -> MembershipReport:
    """Anchoring plus a strictly positive sampled derivative infimum.

    The infimum is taken over the same endpoint-concentrated grids, because
    for the maps in play it is attained either in the interior or in the
    limit at an endpoint.
    """
    grid = probe if probe is not None else ProbeGrid.default()
    base = check_anchoring(f, grid, tol)
    deriv_vals = [f.derivative(x) for x in grid.all_points()]
    inf_est = min(deriv_vals)
    failures = list(base.failures)
    if not inf_est > tol:
        failures.append(f"derivative infimum estimate {inf_est!r} not above {tol!r}")
    return MembershipReport(
        anchored=base.anchored,
        is_member=base.anchored and inf_est > tol,
        left_limit_estimate=base.left_limit_estimate,
        right_limit_estimate=base.right_limit_estimate,
        deriv_inf_estimate=inf_est,
        probe_description=base.probe_description,
        tol=tol,
        failures=tuple(failures),
    )


def compose(outer: Diffeo, inner: Diffeo) -> Diffeo:
    """Pointwise composition outer(inner(x)); chain-rule derivative when both exist.

    Evaluation raises DomainError if the inner value escapes (0, 1).
    """
    deriv = None
    if outer.deriv is not None and inner.deriv is not None:
        outer_d, inner_d, inner_f = outer.deriv, inner.deriv, inner.func

        def deriv(x: float) -> float:
            return outer_d(inner_f(x)) * inner_d(x)

    def func(x: float) -> float:
        y = inner.func(x)
        _require_interior(y)
        return outer.func(y)

    return Diffeo(func=func, deriv=deriv, label=f"({outer.label} o {inner.label})")


def invert(f: Diffeo, y: float, tol: float = 1e-12, newton: bool = True) -> float:
    """Solve f(x) = y for a strictly increasing f by bracketing bisection.

    Newton steps polish the iterate when an analytic derivative is available
    and positive; bisection alone is unconditionally convergent thanks to
    monotonicity.  Raises NotAttainedError when y falls outside the sampled
    range, the signal used to detect boundary violation of candidate flows.
    """
    if not 0.0 < y < 1.0:
        raise ParameterError(f"target must lie in (0, 1), got {y!r}")
    if tol <= 0.0:
        raise ParameterError(f"tolerance must be positive, got {tol!r}")
    lo, hi = 1e-15, 1.0 - 1e-15
    f_lo, f_hi = f(lo), f(hi)
    if not (f_lo <= y <= f_hi):
        raise NotAttainedError(target=y, low=f_lo, high=f_hi)

    x = 0.5 * (lo + hi)
    for _ in range(90):
        fx = f(x)
        if abs(fx - y) <= tol:
            return x
        if fx < y:
            lo = x
        else:
            hi = x
        x_next = 0.5 * (lo + hi)
        if newton and f.deriv is not None:
            d = f.deriv(x)
            if d > 0.0:
                cand = x - (fx - y) / d
                if lo < cand < hi:
                    x_next = cand
        if x_next == x:
            break
        x = x_next
    if abs(f(x) - y) <= max(tol, 1e-13):
        return x
    raise NotAttainedError(target=y, low=f(lo), high=f(hi))


class DerivativeEstimate(NamedTuple):
    value: float
    error: float


_STENCIL_EXTENT = {1: 1.0, 2: 1.0, 3: 2.0, 4: 2.0}


def _central(f: Callable[[float], float], x: float, k: int, h: float) -> float:
    if k == 1:
        return (f(x + h) - f(x - h)) / (2.0 * h)
    if k == 2:
        return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)
    if k == 3:
        return (f(x + 2 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2 * h)) / (
            2.0 * h**3
        )
    if k == 4:
        return (
            f(x + 2 * h) - 4.0 * f(x + h) + 6.0 * f(x) - 4.0 * f(x - h) + f(x - 2 * h)
        ) / h**4
    raise ParameterError(f"derivative order must be in 1..4, got {k!r}")


def differentiate(
    f: Callable[[float], float] | Diffeo,
    x: float,
    order: int = 1,
    step: float = 1e-5,
) -> DerivativeEstimate:
    """Central finite difference of the given order with one Richardson step.

    Both the step-h and step-h/2 stencils are second-order accurate; the
    Richardson combination (4 D(h/2) - D(h)) / 3 is fourth-order.  The
    reported error is the gap between the extrapolated value and the finer
    raw level.  Raises StencilError when the stencil would exit (0, 1).
    """
    if order not in _STENCIL_EXTENT:
        raise ParameterError(f"derivative order must be in 1..4, got {order!r}")
    if step <= 0.0:
        raise ParameterError(f"step must be positive, got {step!r}")
    _require_interior(x)
    g = f.func if isinstance(f, Diffeo) else f
    extent = _STENCIL_EXTENT[order] * step
    if x - extent <= 0.0 or x + extent >= 1.0:
        raise StencilError(x, extent)
    coarse = _central(g, x, order, step)
    fine = _central(g, x, order, 0.5 * step)
    value = (4.0 * fine - coarse) / 3.0
    return DerivativeEstimate(value=value, error=abs(value - fine))
