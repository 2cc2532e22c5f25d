"""Deterministic SVG and CSV output for portrait data."""

from __future__ import annotations

import io
from xml.sax.saxutils import escape

from .phase import PortraitData

__all__ = ["render", "KIND_COLOURS"]

SIZE = 800
MARGIN = 40
KIND_COLOURS = {
    "HyperbolicSaddle": "#d62728",
    "Saddle": "#d62728",
    "HyperbolicStableNode": "#1f77b4",
    "StableNode": "#1f77b4",
    "HyperbolicUnstableNode": "#ff7f0e",
    "UnstableNode": "#ff7f0e",
    "HyperbolicFocus": "#2ca02c",
    "FocusOrCenter": "#2ca02c",
    "HyperbolicCenterCandidate": "#9467bd",
}
DEFAULT_COLOUR = "#7f7f7f"


def _mapper(window):
    xmin, xmax, ymin, ymax = window
    span = SIZE - 2 * MARGIN

    def to_px(x: float, y: float) -> tuple[float, float]:
        return (MARGIN + (x - xmin) / (xmax - xmin) * span,
                SIZE - MARGIN - (y - ymin) / (ymax - ymin) * span)

    return to_px


def _svg(data: PortraitData) -> str:
    px = _mapper(data.window)
    xmin, xmax, ymin, ymax = data.window
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>',
        f'<rect x="{MARGIN}" y="{MARGIN}" width="{SIZE - 2 * MARGIN}" height="{SIZE - 2 * MARGIN}" '
        'fill="none" stroke="black"/>',
    ]
    if xmin <= 0 <= xmax:
        ax, _ = px(0.0, ymin)
        out.append(f'<line class="axis" x1="{ax:.3f}" y1="{MARGIN}" x2="{ax:.3f}" y2="{SIZE - MARGIN}" stroke="#999"/>')
    if ymin <= 0 <= ymax:
        _, ay = px(xmin, 0.0)
        out.append(f'<line class="axis" x1="{MARGIN}" y1="{ay:.3f}" x2="{SIZE - MARGIN}" y2="{ay:.3f}" stroke="#999"/>')
    out.append(f'<text x="{MARGIN}" y="{SIZE - 10}" font-size="12">x in [{xmin:g}, {xmax:g}], y in [{ymin:g}, {ymax:g}]</text>')

    for tr in data.trajectories:
        pts = [px(x, y) for _, x, y in tr.samples]
        if len(pts) < 2:
            continue
        coords = " ".join(f"{x:.3f},{y:.3f}" for x, y in pts)
        out.append(f'<polyline class="trajectory" points="{coords}" fill="none" stroke="#333" stroke-width="0.7"/>')
        # arrowhead at the middle sample, pointing along increasing |t|
        i = len(pts) // 2
        (x1, y1), (x2, y2) = pts[i - 1], pts[i]
        if tr.direction == "backward":
            (x1, y1), (x2, y2) = (x2, y2), (x1, y1)
        dx, dy = x2 - x1, y2 - y1
        norm = (dx * dx + dy * dy) ** 0.5
        if norm > 0:
            ux, uy = dx / norm, dy / norm
            tip = (x2, y2)
            left = (x2 - 6 * ux + 3 * uy, y2 - 6 * uy - 3 * ux)
            right = (x2 - 6 * ux - 3 * uy, y2 - 6 * uy + 3 * ux)
            out.append('<polygon class="arrow" points="' + " ".join(f"{a:.3f},{b:.3f}" for a, b in (tip, left, right))
                       + '" fill="#333"/>')

    kinds = []
    for x, y, kind in data.critical_points:
        if not (xmin <= x <= xmax and ymin <= y <= ymax):
            continue
        cx, cy = px(x, y)
        colour = KIND_COLOURS.get(kind, DEFAULT_COLOUR)
        out.append(f'<circle class="critical-point" data-kind="{escape(kind)}" cx="{cx:.3f}" cy="{cy:.3f}" '
                   f'r="6" fill="{colour}" stroke="black"/>')
        if kind not in kinds:
            kinds.append(kind)
    for i, kind in enumerate(kinds):
        y = MARGIN + 16 + 18 * i
        colour = KIND_COLOURS.get(kind, DEFAULT_COLOUR)
        out.append(f'<rect class="legend-swatch" x="{SIZE - MARGIN - 190}" y="{y - 10}" width="12" height="12" fill="{colour}"/>')
        out.append(f'<text class="legend" x="{SIZE - MARGIN - 172}" y="{y}" font-size="12">{escape(kind)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _csv(data: PortraitData) -> str:
    buf = io.StringIO()
    buf.write("trajectory_id,t,x,y\n")
    for tid, tr in enumerate(data.trajectories):
        for t, x, y in tr.samples:
            buf.write(f"{tid},{t!r},{x!r},{y!r}\n")
    return buf.getvalue()


def render(data: PortraitData, fmt: str = "svg") -> bytes:
    if fmt == "svg":
        return _svg(data).encode("utf-8")
    if fmt == "csv":
        return _csv(data).encode("utf-8")
    raise ValueError(f"unknown format {fmt!r}")
