"""Seminorms realizing uniform convergence of derivatives on compact windows.

The n-th window is [1/(n+1), n/(n+1)], a compact exhaustion of (0, 1); the
(n, k) seminorm is the sup of the k-th derivative magnitude over that
window.  Together these seminorms generate the smooth compact-open
topology, and a family converging in every one of them converges with all
derivatives, uniformly on every compact subset.

Sups are approximated by grid maxima.  All functions in play here are
smooth with bounded higher derivatives on the windows, so a dense grid
plus a refinement check is enough; no global optimizer is warranted.
Finite differences above order 4 are noise-dominated at double precision,
so higher orders are refused unless explicitly allowed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .diffeo import Diffeo, differentiate
from .errors import ParameterError
from . import family

__all__ = [
    "ConvergenceReport",
    "SeminormIndex",
    "SeminormResult",
    "convergence_report",
    "seminorm",
    "seminorm_distance",
    "window",
]

Evaluable = Union[Diffeo, Callable[[float], float]]

# order-adapted central-difference steps, near the round-off optimum for
# each order at double precision
_FD_STEPS = {1: 1e-5, 2: 1e-4, 3: 7e-4, 4: 2.5e-3}

MAX_PLAIN_ORDER = 4


@dataclass(frozen=True)
class SeminormIndex:
    """Window selector n >= 1 and derivative order k >= 0."""

    n: int
    k: int

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError(f"window index must be >= 1, got {self.n!r}")
        if self.k < 0:
            raise ParameterError(f"derivative order must be >= 0, got {self.k!r}")

    def label(self) -> str:
        return f"n{self.n}k{self.k}"


@dataclass(frozen=True)
class SeminormResult:
    """Grid maximum together with the point where it was attained."""

    value: float
    argmax: float

    def __float__(self) -> float:
        return self.value


def window(n: int) -> tuple[float, float]:
    """Compact window [1/(n+1), n/(n+1)]; degenerates to {1/2} at n = 1."""
    if n < 1:
        raise ParameterError(f"window index must be >= 1, got {n!r}")
    return 1.0 / (n + 1), n / (n + 1.0)


def _as_callable(f: Evaluable) -> tuple[Callable[[float], float], Optional[Callable]]:
    if isinstance(f, Diffeo):
        return f.func, f.deriv
    return f, None


def _derivative_values(f: Evaluable, xs: Sequence[float], k: int) -> list[float]:
    func, deriv = _as_callable(f)
    if k == 0:
        return [func(x) for x in xs]
    if k == 1 and deriv is not None:
        return [deriv(x) for x in xs]
    step = _FD_STEPS[k]
    out = []
    for x in xs:
        h = min(step, 0.2 * x, 0.2 * (1.0 - x))
        out.append(differentiate(func, x, order=k, step=h).value)
    return out


def seminorm(
    f: Evaluable,
    idx: SeminormIndex,
    grid_points: int = 4001,
    allow_high_order: bool = False,
) -> SeminormResult:
    """Sup of |D^k f| over the n-th window, approximated on a uniform grid.

    Analytic derivatives are used when the input carries one (k = 1);
    otherwise central differences with an order-adapted step.  Orders above
    4 require allow_high_order=True and come with documented accuracy loss.
    """
    if grid_points < 101:
        raise ParameterError(f"grid must have at least 101 points, got {grid_points!r}")
    if idx.k > MAX_PLAIN_ORDER and not allow_high_order:
        raise ParameterError(
            f"derivative order {idx.k} is noise-dominated in double precision; "
            "pass allow_high_order=True to force it"
        )
    lo, hi = window(idx.n)
    xs = np.linspace(lo, hi, grid_points).tolist()
    vals = _derivative_values(f, xs, idx.k)
    best_i = max(range(len(xs)), key=lambda i: abs(vals[i]))
    return SeminormResult(value=abs(vals[best_i]), argmax=xs[best_i])


def seminorm_distance(
    f: Evaluable,
    g: Evaluable,
    idx: SeminormIndex,
    grid_points: int = 4001,
) -> SeminormResult:
    """Seminorm of the pointwise difference f - g.

    The difference inherits an analytic derivative whenever both inputs
    carry one, which keeps the k = 1 columns of convergence tables free of
    finite-difference noise.
    """
    f_func, f_deriv = _as_callable(f)
    g_func, g_deriv = _as_callable(g)
    deriv = None
    if f_deriv is not None and g_deriv is not None:
        deriv = lambda x: f_deriv(x) - g_deriv(x)
    diff = Diffeo(func=lambda x: f_func(x) - g_func(x), deriv=deriv, label="difference")
    return seminorm(diff, idx, grid_points)


@dataclass(frozen=True)
class ConvergenceReport:
    """Seminorm distances to the identity for a list of shift parameters.

    values[i][j] is the (indices[j]) seminorm of (shift t_values[i] member)
    minus identity.  Each column decreasing to zero certifies convergence
    of the family to the identity in the compact-open topology.
    """

    t_values: tuple[float, ...]
    indices: tuple[SeminormIndex, ...]
    values: tuple[tuple[float, ...], ...]

    def column(self, j: int) -> tuple[float, ...]:
        return tuple(row[j] for row in self.values)

    def header(self) -> list[str]:
        return ["t"] + [idx.label() for idx in self.indices]

    def rows(self) -> list[list[float]]:
        return [[t, *row] for t, row in zip(self.t_values, self.values)]


def convergence_report(
    t_values: Sequence[float],
    indices: Sequence[SeminormIndex],
    grid_points: int = 1001,
) -> ConvergenceReport:
    """Tabulate seminorm distances between family members and the identity."""
    ident = Diffeo(func=lambda x: x, deriv=lambda x: 1.0, label="identity")
    rows = []
    for t in t_values:
        f = family.member(t)
        rows.append(
            tuple(
                seminorm_distance(f, ident, idx, grid_points).value for idx in indices
            )
        )
    return ConvergenceReport(
        t_values=tuple(t_values), indices=tuple(indices), values=tuple(rows)
    )
