"""Static SVG output on a fixed 1000 x 1000 canvas."""

from __future__ import annotations

import numpy as np

SIZE = 1000
MARGIN = 40
COLORS = ("#1f4e99", "#b5332e", "#2e8540", "#7a4fa3", "#c77c02")


def _fit(point_sets):
    allpts = np.vstack([np.asarray(p, dtype=float) for p in point_sets])
    lo, hi = allpts.min(axis=0), allpts.max(axis=0)
    span = max(float(np.max(hi - lo)), 1e-12)
    scale = (SIZE - 2 * MARGIN) / span
    center = 0.5 * (lo + hi)

    def to_canvas(p):
        p = np.asarray(p, dtype=float)
        x = SIZE / 2 + (p[..., 0] - center[0]) * scale
        y = SIZE / 2 - (p[..., 1] - center[1]) * scale
        return np.stack([x, y], axis=-1)

    return to_canvas


def svg(paths, markers=None, closed=True, segments=None) -> str:
    """SVG text for polylines ``paths`` (each (m, 2)), point ``markers`` and
    thin line ``segments`` given as (p, q) pairs."""
    paths = [np.asarray(p, dtype=float) for p in paths]
    markers = [] if markers is None else [np.asarray(m, dtype=float).reshape(-1, 2) for m in markers]
    segments = [] if segments is None else [np.asarray(s, dtype=float) for s in segments]
    to_canvas = _fit(paths + [m for m in markers if len(m)] + segments)
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
           f'viewBox="0 0 {SIZE} {SIZE}">',
           f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>']
    for i, p in enumerate(paths):
        pts = " ".join(f"{x:.3f},{y:.3f}" for x, y in to_canvas(p))
        tag = "polygon" if closed else "polyline"
        out.append(f'<{tag} points="{pts}" fill="none" stroke="{COLORS[i % len(COLORS)]}" '
                   f'stroke-width="2"/>')
    for seg in segments:
        (x1, y1), (x2, y2) = to_canvas(seg)
        out.append(f'<line x1="{x1:.3f}" y1="{y1:.3f}" x2="{x2:.3f}" y2="{y2:.3f}" '
                   f'stroke="gray" stroke-width="1"/>')
    for m in markers:
        for x, y in to_canvas(m):
            out.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="5" fill="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
