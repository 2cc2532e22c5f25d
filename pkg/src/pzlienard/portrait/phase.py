"""Phase portrait data: seeds, trajectories and critical-point inventory."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from ..algebra import PlanarPolySystem
from ..compactify import infinity_analysis, planar_critical_points
from ..critical import CriticalPoint, linearize
from .integrate import Trajectory, integrate

__all__ = ["PortraitData", "DEFAULT_WINDOW", "seed_points", "phase_portrait"]

DEFAULT_WINDOW = (-4.0, 4.0, -4.0, 4.0)
CIRCLE_RADIUS = 1e-3
CIRCLE_DIRECTIONS = 8


@dataclass
class PortraitData:
    window: tuple[float, float, float, float]
    trajectories: list[Trajectory] = field(default_factory=list)
    critical_points: list[tuple[float, float, str]] = field(default_factory=list)
    equator_points: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)


def _inside(window, x, y) -> bool:
    xmin, xmax, ymin, ymax = window
    return xmin <= x <= xmax and ymin <= y <= ymax


def seed_points(window, n_seeds: int) -> list[tuple[float, float]]:
    """Half the seeds spaced along the (slightly inset) boundary, the rest on an interior grid."""
    xmin, xmax, ymin, ymax = window
    inset = 1e-3 * min(xmax - xmin, ymax - ymin)
    x0, x1, y0, y1 = xmin + inset, xmax - inset, ymin + inset, ymax - inset
    n_edge = n_seeds // 2
    w, h = x1 - x0, y1 - y0
    perim = 2 * (w + h)
    seeds = []
    for i in range(n_edge):
        d = perim * i / n_edge
        if d < w:
            seeds.append((x0 + d, y0))
        elif d < w + h:
            seeds.append((x1, y0 + d - w))
        elif d < 2 * w + h:
            seeds.append((x1 - (d - w - h), y1))
        else:
            seeds.append((x0, y1 - (d - 2 * w - h)))
    g = int(math.isqrt(max(n_seeds - n_edge, 0)))
    for i in range(g):
        for j in range(g):
            seeds.append((xmin + (i + 0.5) * (xmax - xmin) / g, ymin + (j + 0.5) * (ymax - ymin) / g))
    return seeds


def phase_portrait(
    sys: PlanarPolySystem,
    window: Sequence[float] = DEFAULT_WINDOW,
    n_seeds: int = 64,
    tmax: float = 20.0,
    tol: float = 1e-8,
) -> PortraitData:
    window = tuple(float(v) for v in window)
    data = PortraitData(window)
    try:
        finite, notes = planar_critical_points(sys)
        data.notes.extend(notes)
    except (NotImplementedError, ValueError) as exc:
        finite = []
        data.notes.append(f"critical points not computed: {exc}")
    locs = []
    for x, y in finite:
        pt = CriticalPoint(x, y)
        kind = linearize(sys, pt).kind
        xf, yf = float(x), float(y)
        data.critical_points.append((xf, yf, kind))
        locs.append((xf, yf))
    try:
        data.equator_points = [ip.to_json() for ip in infinity_analysis(sys) if ip.on_equator]
    except (NotImplementedError, ValueError) as exc:
        data.notes.append(f"infinity analysis skipped: {exc}")

    seeds = seed_points(window, n_seeds)
    for xf, yf in locs:
        if _inside(window, xf, yf):
            for i in range(CIRCLE_DIRECTIONS):
                ang = 2 * math.pi * i / CIRCLE_DIRECTIONS
                seeds.append((xf + CIRCLE_RADIUS * math.cos(ang), yf + CIRCLE_RADIUS * math.sin(ang)))
    for seed in seeds:
        for backward in (False, True):
            data.trajectories.append(
                integrate(sys, seed, tmax, tol, window=window, critical_points=locs, backward=backward)
            )
    return data
