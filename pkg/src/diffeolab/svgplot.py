"""Minimal SVG line-plot writer with no external dependencies.

Good enough to eyeball a family of curves or a trajectory; not a plotting
library.  Output is a standalone SVG document as a string.
"""

from __future__ import annotations

from typing import Sequence

__all__ = ["line_plot"]

_PALETTE = ("#1f6fb2", "#c23b22", "#2e8b57", "#8a2be2", "#d4820a", "#3b3b3b")


def _ticks(lo: float, hi: float) -> tuple[float, float]:
    if lo == hi:
        return lo - 0.5, hi + 0.5
    return lo, hi


def line_plot(
    series: Sequence[tuple[str, Sequence[float], Sequence[float]]],
    title: str = "",
    width: int = 640,
    height: int = 480,
) -> str:
    """Render (label, xs, ys) series as polylines in one SVG document."""
    pad_l, pad_r, pad_t, pad_b = 64, 16, 28, 40
    xs_all = [x for _, xs, _ in series for x in xs]
    ys_all = [y for _, _, ys in series for y in ys]
    if not xs_all:
        xs_all, ys_all = [0.0, 1.0], [0.0, 1.0]
    x_lo, x_hi = _ticks(min(xs_all), max(xs_all))
    y_lo, y_hi = _ticks(min(ys_all), max(ys_all))

    def px(x: float) -> float:
        return pad_l + (x - x_lo) / (x_hi - x_lo) * (width - pad_l - pad_r)

    def py(y: float) -> float:
        return height - pad_b - (y - y_lo) / (y_hi - y_lo) * (height - pad_t - pad_b)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.1f}" y="18" text-anchor="middle" '
        f'font-family="monospace" font-size="13">{title}</text>',
        # axes
        f'<line x1="{pad_l}" y1="{height - pad_b}" x2="{width - pad_r}" '
        f'y2="{height - pad_b}" stroke="black"/>',
        f'<line x1="{pad_l}" y1="{pad_t}" x2="{pad_l}" y2="{height - pad_b}" '
        f'stroke="black"/>',
    ]
    for value, anchor_x, anchor_y, align in (
        (x_lo, px(x_lo), height - pad_b + 16, "middle"),
        (x_hi, px(x_hi), height - pad_b + 16, "middle"),
        (y_lo, pad_l - 6, py(y_lo) + 4, "end"),
        (y_hi, pad_l - 6, py(y_hi) + 4, "end"),
    ):
        parts.append(
            f'<text x="{anchor_x:.1f}" y="{anchor_y:.1f}" text-anchor="{align}" '
            f'font-family="monospace" font-size="11">{value:.6g}</text>'
        )
    for i, (label, xs, ys) in enumerate(series):
        color = _PALETTE[i % len(_PALETTE)]
        points = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys))
        parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
            f'points="{points}"/>'
        )
        parts.append(
            f'<text x="{width - pad_r - 4}" y="{pad_t + 14 + 14 * i}" '
            f'text-anchor="end" font-family="monospace" font-size="11" '
            f'fill="{color}">{label}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
