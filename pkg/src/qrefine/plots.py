"""Static SVG charts: error decay on a log axis, and the 2-D walk of the
center across levels. Hand-emitted markup, no plotting dependency."""

from __future__ import annotations

import math
from typing import Optional, Sequence

from .refine import RefinementTrace

_W, _H = 800, 600
_MARGIN = 70


def _svg_open() -> list[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {_W} {_H}" '
        f'width="{_W}" height="{_H}">',
        f'<rect x="0" y="0" width="{_W}" height="{_H}" fill="white"/>',
    ]


def decay_svg(trace: RefinementTrace) -> str:
    """log10(error vs truth) against solve ordinal."""
    pts = [
        (r.ordinal, math.log10(r.error_vs_truth))
        for r in trace.records
        if r.error_vs_truth is not None and r.error_vs_truth > 0.0
    ]
    parts = _svg_open()
    parts.append(
        f'<text x="{_W // 2}" y="28" text-anchor="middle" font-size="16" '
        'font-family="sans-serif">error decay (log10 error vs QUBO solve)</text>'
    )
    if not pts:
        parts.append(
            f'<text x="{_W // 2}" y="{_H // 2}" text-anchor="middle" '
            'font-size="14" font-family="sans-serif">no positive errors to plot</text></svg>'
        )
        return "\n".join(parts)

    x_lo, x_hi = 1, max(p[0] for p in pts)
    y_lo = math.floor(min(p[1] for p in pts))
    y_hi = math.ceil(max(p[1] for p in pts))
    if x_hi == x_lo:
        x_hi += 1
    if y_hi == y_lo:
        y_hi += 1

    def sx(x: float) -> float:
        return _MARGIN + (x - x_lo) / (x_hi - x_lo) * (_W - 2 * _MARGIN)

    def sy(y: float) -> float:
        return (_H - _MARGIN) - (y - y_lo) / (y_hi - y_lo) * (_H - 2 * _MARGIN)

    decade_step = max(1, math.ceil((y_hi - y_lo) / 12))
    for d in range(y_lo, y_hi + 1, decade_step):
        y = sy(d)
        parts.append(
            f'<line x1="{_MARGIN}" y1="{y:.2f}" x2="{_W - _MARGIN}" y2="{y:.2f}" '
            'stroke="#cccccc" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_MARGIN - 8}" y="{y + 4:.2f}" text-anchor="end" '
            f'font-size="12" font-family="sans-serif">1e{d}</text>'
        )
    parts.append(
        f'<line x1="{_MARGIN}" y1="{_H - _MARGIN}" x2="{_W - _MARGIN}" '
        f'y2="{_H - _MARGIN}" stroke="black" stroke-width="1.5"/>'
    )
    parts.append(
        f'<line x1="{_MARGIN}" y1="{_MARGIN}" x2="{_MARGIN}" '
        f'y2="{_H - _MARGIN}" stroke="black" stroke-width="1.5"/>'
    )
    parts.append(
        f'<text x="{_W // 2}" y="{_H - 24}" text-anchor="middle" font-size="13" '
        'font-family="sans-serif">QUBO solve ordinal</text>'
    )
    coords = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in pts)
    if len(pts) == 1:
        x, y = pts[0]
        parts.append(f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="4" fill="#1f4e9c"/>')
    else:
        parts.append(
            f'<polyline points="{coords}" fill="none" stroke="#1f4e9c" stroke-width="2"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts)


def trajectory_svg(trace: RefinementTrace, truth: Optional[Sequence[float]] = None) -> str:
    """Center walk for 2-unknown systems, level-final centers emphasized."""
    if len(trace.final_center) != 2:
        raise ValueError("trajectory plot needs exactly 2 unknowns")
    centers = [r.center_after.to_floats() for r in trace.records]
    level_final = set()
    for i, r in enumerate(trace.records):
        if i + 1 == len(trace.records) or trace.records[i + 1].level != r.level:
            level_final.add(i)

    xs = [c[0] for c in centers]
    ys = [c[1] for c in centers]
    if truth is not None:
        xs.append(float(truth[0]))
        ys.append(float(truth[1]))
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    pad_x = (x_hi - x_lo) * 0.08 or 1.0
    pad_y = (y_hi - y_lo) * 0.08 or 1.0
    x_lo, x_hi = x_lo - pad_x, x_hi + pad_x
    y_lo, y_hi = y_lo - pad_y, y_hi + pad_y

    def sx(x: float) -> float:
        return _MARGIN + (x - x_lo) / (x_hi - x_lo) * (_W - 2 * _MARGIN)

    def sy(y: float) -> float:
        return (_H - _MARGIN) - (y - y_lo) / (y_hi - y_lo) * (_H - 2 * _MARGIN)

    parts = _svg_open()
    parts.append(
        f'<text x="{_W // 2}" y="28" text-anchor="middle" font-size="16" '
        'font-family="sans-serif">center trajectory</text>'
    )
    if len(centers) > 1:
        coords = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in centers)
        parts.append(
            f'<polyline points="{coords}" fill="none" stroke="#777777" stroke-width="1"/>'
        )
    for i, (x, y) in enumerate(centers):
        r = 3.5 if i in level_final else 1.5
        fill = "#1f4e9c" if i in level_final else "#999999"
        parts.append(f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="{r}" fill="{fill}"/>')
    if truth is not None:
        tx, ty = sx(float(truth[0])), sy(float(truth[1]))
        parts.append(
            f'<path d="M {tx:.2f} {ty - 8:.2f} L {tx + 2.4:.2f} {ty - 2.4:.2f} '
            f'L {tx + 8:.2f} {ty:.2f} L {tx + 2.4:.2f} {ty + 2.4:.2f} '
            f'L {tx:.2f} {ty + 8:.2f} L {tx - 2.4:.2f} {ty + 2.4:.2f} '
            f'L {tx - 8:.2f} {ty:.2f} L {tx - 2.4:.2f} {ty - 2.4:.2f} Z" '
            'fill="#c0392b"/>'
        )
        parts.append(
            f'<text x="{tx + 12:.2f}" y="{ty + 4:.2f}" font-size="12" '
            'font-family="sans-serif" fill="#c0392b">solution</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts)


def emit_plots(
    trace: RefinementTrace,
    out_prefix: str,
    truth: Optional[Sequence[float]] = None,
) -> list[str]:
    """Write the available charts; returns the paths written.

    The decay chart needs recorded errors (a supplied truth); the
    trajectory chart needs exactly two unknowns. Whatever does not
    apply is skipped, never an error.
    """
    if not trace.records:
        raise ValueError("cannot plot an empty trace")
    written = []
    if any(r.error_vs_truth is not None for r in trace.records):
        path = f"{out_prefix}_decay.svg"
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(decay_svg(trace) + "\n")
        written.append(path)
    if len(trace.final_center) == 2:
        path = f"{out_prefix}_trajectory.svg"
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(trajectory_svg(trace, truth) + "\n")
        written.append(path)
    return written
