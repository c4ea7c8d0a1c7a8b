"""Flow integration on the open unit interval and the non-integrability witness.

A velocity field v(t, x) is integrated by characteristics: for every seed y
the scalar ODE dx/dt = v(t, x), x(0) = y, is solved with classic
fourth-order Runge-Kutta, so that x(t) is the time-t map applied to y.
Because the interval is open, "leaves the interval" is operationalized as
exiting the band [margin, 1 - margin]; the first exit time is refined by
bisection inside the bracketing step.

The witness at the center of this package: the constant field v = 1 forces
the candidate solution x + t (the integrator reproduces it to round-off),
and for every t > 0 that candidate fails the endpoint-anchoring test
because its right limit is 1 + t.  A smooth one-parameter family of
increasing interval maps can therefore never solve the equation, while a
field like the logistic one, which vanishes at the endpoints, flows happily
forever.  The contrast is the point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .diffeo import Diffeo, MembershipReport, ProbeGrid, check_anchoring, invert
from .errors import (
    BoundaryViolationError,
    FieldError,
    NotAttainedError,
    ParameterError,
)

__all__ = [
    "ExpAttempt",
    "FlowResult",
    "NonIntegrabilityReport",
    "SeedTrajectory",
    "VelocityField",
    "attempt_exponential",
    "integrate_flow",
    "logistic_field",
    "non_integrability_report",
    "right_log_derivative",
    "unit_field",
    "zero_field",
]

REMAINS = "remains-in-D"
BOUNDARY_VIOLATION = "boundary-violation"
ESCAPE = "escape"


@dataclass(frozen=True)
class VelocityField:
    """Right-hand side v(t, x) of the characteristic ODE, with a display name."""

    v: Callable[[float, float], float]
    label: str = ""

    def __call__(self, t: float, x: float) -> float:
        value = self.v(t, x)
        if not math.isfinite(value):
            raise FieldError(t, x, value)
        return value


def zero_field() -> VelocityField:
    return VelocityField(v=lambda t, x: 0.0, label="zero")


def unit_field() -> VelocityField:
    return VelocityField(v=lambda t, x: 1.0, label="one")


def logistic_field() -> VelocityField:
    return VelocityField(v=lambda t, x: x * (1.0 - x), label="logistic")


@dataclass(frozen=True)
class SeedTrajectory:
    seed: float
    times: tuple[float, ...]
    states: tuple[float, ...]
    escaped: bool
    escape_time: Optional[float]


@dataclass(frozen=True)
class FlowResult:
    seeds: tuple[float, ...]
    trajectories: tuple[SeedTrajectory, ...]
    residual_max: float
    residual_sum: float
    margin: float
    classification: str

    def escape_times(self) -> list[Optional[float]]:
        return [tr.escape_time for tr in self.trajectories]


def _rk4_step(
    field: VelocityField, t: float, x: float, dt: float
) -> float:
    k1 = field(t, x)
    k2 = field(t + 0.5 * dt, x + 0.5 * dt * k1)
    k3 = field(t + 0.5 * dt, x + 0.5 * dt * k2)
    k4 = field(t + dt, x + dt * k3)
    return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _refine_escape(
    field: VelocityField,
    t0: float,
    x0: float,
    dt: float,
    lo_band: float,
    hi_band: float,
    time_tol: float = 1e-10,
) -> float:
    """First time within [t0, t0 + dt] at which the state exits the band.

    Bisection on the step fraction; each trial is a single RK4 step from the
    accepted state, so the refinement is as accurate as the integrator.
    """
    inside, outside = 0.0, 1.0
    while (outside - inside) * dt > time_tol:
        mid = 0.5 * (inside + outside)
        x_mid = _rk4_step(field, t0, x0, mid * dt)
        if lo_band <= x_mid <= hi_band:
            inside = mid
        else:
            outside = mid
    return t0 + outside * dt


def _integrate_seed(
    field: VelocityField,
    seed: float,
    t_max: float,
    dt: float,
    lo_band: float,
    hi_band: float,
) -> tuple[SeedTrajectory, float, float]:
    times = [0.0]
    states = [seed]
    residual_max = 0.0
    residual_sum = 0.0
    n_steps = math.ceil(t_max / dt - 1e-12)
    x = seed
    for i in range(n_steps):
        t = i * dt
        step = min(dt, t_max - t)
        x_full = _rk4_step(field, t, x, step)
        x_half = _rk4_step(
            field, t + 0.5 * step, _rk4_step(field, t, x, 0.5 * step), 0.5 * step
        )
        residual = abs(x_full - x_half)
        residual_max = max(residual_max, residual)
        residual_sum += residual
        if not lo_band <= x_full <= hi_band:
            t_esc = _refine_escape(field, t, x, step, lo_band, hi_band)
            times.append(t_esc)
            states.append(_rk4_step(field, t, x, t_esc - t))
            return (
                SeedTrajectory(
                    seed=seed,
                    times=tuple(times),
                    states=tuple(states),
                    escaped=True,
                    escape_time=t_esc,
                ),
                residual_max,
                residual_sum,
            )
        x = x_full
        times.append(t + step)
        states.append(x)
    return (
        SeedTrajectory(
            seed=seed,
            times=tuple(times),
            states=tuple(states),
            escaped=False,
            escape_time=None,
        ),
        residual_max,
        residual_sum,
    )


def _order_preserved(trajectories: Sequence[SeedTrajectory]) -> bool:
    """Strict seed order at every common sample time, up to the earlier escape."""
    for a, b in zip(trajectories, trajectories[1:]):
        n = min(len(a.states), len(b.states))
        # the final sample of an escaped trajectory sits at a refined time,
        # not on the common grid, so compare full steps only
        n_common = n - 1 if (a.escaped or b.escaped) else n
        for i in range(n_common):
            if not a.states[i] < b.states[i]:
                return False
    return True


def integrate_flow(
    field: VelocityField,
    seeds: Sequence[float],
    t_max: float,
    dt: float,
    margin: float = 1e-9,
) -> FlowResult:
    """Integrate the characteristic ODE from every seed.

    Seeds must be given in increasing order inside (0, 1).  A seed is marked
    escaped at its first exit from [margin, 1 - margin], with the exit time
    refined to 1e-10.  residual_max is the largest single-step discrepancy
    between one full step and two half steps (a step-doubling local error
    estimate); residual_sum accumulates those discrepancies and bounds the
    drift of the whole run.
    """
    if t_max <= 0.0:
        raise ParameterError(f"t_max must be positive, got {t_max!r}")
    if dt <= 0.0 or dt >= t_max:
        raise ParameterError(f"need 0 < dt < t_max, got dt={dt!r}, t_max={t_max!r}")
    if not 0.0 < margin < 1e-3:
        raise ParameterError(f"margin must lie in (0, 1e-3), got {margin!r}")
    seeds = list(seeds)
    if not seeds:
        raise ParameterError("at least one seed is required")
    if any(not margin <= y <= 1.0 - margin for y in seeds):
        raise ParameterError(f"seeds must lie inside [{margin}, {1 - margin}]")
    if any(not a < b for a, b in zip(seeds, seeds[1:])):
        raise ParameterError("seeds must be strictly increasing")

    trajectories = []
    residual_max = 0.0
    residual_sum = 0.0
    for y in seeds:
        tr, r_max, r_sum = _integrate_seed(field, y, t_max, dt, margin, 1.0 - margin)
        trajectories.append(tr)
        residual_max = max(residual_max, r_max)
        residual_sum = max(residual_sum, r_sum)

    if any(tr.escaped for tr in trajectories):
        classification = ESCAPE
    elif not _order_preserved(trajectories):
        classification = BOUNDARY_VIOLATION
    else:
        classification = REMAINS
    return FlowResult(
        seeds=tuple(seeds),
        trajectories=tuple(trajectories),
        residual_max=residual_max,
        residual_sum=residual_sum,
        margin=margin,
        classification=classification,
    )


def right_log_derivative(
    path: Callable[[float], Diffeo],
    t: float,
    x: float,
    h: float = 1e-3,
    tol: float = 1e-12,
) -> float:
    """Velocity of a path of maps, translated back to the point x.

    Computes (path(t+h)(y) - path(t-h)(y)) / (2h) with y the preimage of x
    under path(t).  When the inversion fails, the path has stopped covering
    x and a BoundaryViolationError is raised: exactly the signal that a
    candidate flow has violated the interval boundary.
    """
    if h <= 0.0:
        raise ParameterError(f"step must be positive, got {h!r}")
    try:
        y = invert(path(t), x, tol)
    except NotAttainedError as exc:
        raise BoundaryViolationError(
            f"path at time {t!r} does not attain {x!r}: {exc}"
        ) from exc
    return (path(t + h)(y) - path(t - h)(y)) / (2.0 * h)


@dataclass(frozen=True)
class WitnessEntry:
    t: float
    report: MembershipReport


@dataclass(frozen=True)
class NonIntegrabilityReport:
    """Verdict that the unit field's forced candidates leave the interval."""

    entries: tuple[WitnessEntry, ...]
    all_rejected: bool
    verdict: str


def non_integrability_report(
    t_list: Sequence[float] = (0.01, 0.05, 0.1, 0.2),
    probe: Optional[ProbeGrid] = None,
    tol: float = 1e-6,
) -> NonIntegrabilityReport:
    """Check that the translation x + t fails endpoint anchoring for each t > 0.

    For the constant unit field, plateau exactness of the mollified family
    forces any solution path to act as the pure translation, so rejecting
    x + t for every positive t certifies that the constant velocity 1 is
    not integrable inside the group of interval diffeomorphisms.  t = 0 is
    allowed as the degenerate boundary case (the identity, which passes).
    """
    entries = []
    for t in t_list:
        if t < 0.0 or t >= 0.5:
            raise ParameterError(f"witness shifts must lie in [0, 1/2), got {t!r}")
        candidate = Diffeo(
            func=lambda x, t=t: x + t,
            deriv=lambda x: 1.0,
            label=f"translation by {t!r}",
        )
        entries.append(WitnessEntry(t=t, report=check_anchoring(candidate, probe, tol)))
    rejected = all(e.report.anchored == (e.t == 0.0) for e in entries)
    if rejected:
        verdict = (
            "constant unit velocity is not integrable in the diffeomorphism "
            "group: the forced translation solution leaves the interval for "
            "every tested t > 0"
        )
    else:
        verdict = "witness inconclusive: some positive shift passed anchoring"
    return NonIntegrabilityReport(
        entries=tuple(entries), all_rejected=rejected, verdict=verdict
    )


@dataclass(frozen=True)
class ExpAttempt:
    classification: str
    min_escape_time: Optional[float]
    flow: FlowResult


def attempt_exponential(
    field: VelocityField,
    t_max: float,
    dt: float,
    margin: float = 1e-9,
    seeds: Sequence[float] = (0.1, 0.3, 0.5, 0.7, 0.9),
) -> ExpAttempt:
    """Try to flow the field to time t_max from a spread of seeds.

    Classification is "remains-in-D" when nothing escapes and seed order is
    preserved, and "escape" otherwise, with the earliest escape time
    attached.  An order violation without escape is reported as
    "boundary-violation".
    """
    result = integrate_flow(field, seeds, t_max, dt, margin)
    esc = [t for t in result.escape_times() if t is not None]
    return ExpAttempt(
        classification=result.classification,
        min_escape_time=min(esc) if esc else None,
        flow=result,
    )
