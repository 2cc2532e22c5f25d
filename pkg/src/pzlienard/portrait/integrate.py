"""Trajectory integration with scipy's Dormand-Prince 5(4) pair."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from ..algebra import PlanarPolySystem

__all__ = ["Termination", "Trajectory", "integrate", "as_field"]

FieldFn = Callable[[float, float], tuple[float, float]]

CRITICAL_RADIUS = 1e-8
RUNAWAY = 1e8


class Termination(str, enum.Enum):
    TIME_LIMIT = "time limit"
    WINDOW_EXIT = "window exit"
    STEP_UNDERFLOW = "step underflow"
    NEAR_CRITICAL = "near-critical"


@dataclass(frozen=True)
class Trajectory:
    samples: tuple[tuple[float, float, float], ...]
    seed: tuple[float, float]
    direction: str
    terminated: Termination

    @property
    def end(self) -> tuple[float, float]:
        _, x, y = self.samples[-1]
        return x, y


def as_field(sys) -> FieldFn:
    if isinstance(sys, PlanarPolySystem):
        return sys.compile()
    return sys


def integrate(
    sys,
    seed: Sequence[float],
    tmax: float,
    tol: float = 1e-9,
    *,
    window: Sequence[float] | None = None,
    critical_points: Sequence[Sequence[float]] = (),
    backward: bool = False,
) -> Trajectory:
    """Integrate from ``seed`` for time ``tmax`` (negative time if ``backward``).

    Stops early when the orbit leaves ``window`` = (xmin, xmax, ymin, ymax),
    comes within 1e-8 of a listed critical point, or the solver reports
    that the step size underflowed.  ``tol`` bounds the local error of every accepted step.
    """
    if tol <= 0 or tmax <= 0:
        raise ValueError("tol and tmax must be positive")
    f = as_field(sys)
    x0, y0 = float(seed[0]), float(seed[1])
    direction = "backward" if backward else "forward"
    fx, fy = f(x0, y0)
    if fx == 0 and fy == 0:
        return Trajectory(((0.0, x0, y0),), (x0, y0), direction, Termination.NEAR_CRITICAL)

    def rhs(_t, z):
        return f(z[0], z[1])

    events = []
    reasons = []
    if window is not None:
        xmin, xmax, ymin, ymax = (float(v) for v in window)

        def leave(_t, z):
            return min(z[0] - xmin, xmax - z[0], z[1] - ymin, ymax - z[1])

        events.append(leave)
        reasons.append(Termination.WINDOW_EXIT)
    else:

        def runaway(_t, z):
            return RUNAWAY - abs(z[0]) - abs(z[1])

        events.append(runaway)
        reasons.append(Termination.WINDOW_EXIT)
    for cx, cy in critical_points:
        cx, cy = float(cx), float(cy)
        if np.hypot(x0 - cx, y0 - cy) <= CRITICAL_RADIUS:
            return Trajectory(((0.0, x0, y0),), (x0, y0), direction, Termination.NEAR_CRITICAL)

        def near(_t, z, cx=cx, cy=cy):
            return np.hypot(z[0] - cx, z[1] - cy) - CRITICAL_RADIUS

        events.append(near)
        reasons.append(Termination.NEAR_CRITICAL)
    for ev in events:
        ev.terminal = True

    t_end = -tmax if backward else tmax
    sol = solve_ivp(rhs, (0.0, t_end), [x0, y0], method="RK45", rtol=tol, atol=tol,
                    events=events)
    samples = [(float(t), float(x), float(y)) for t, x, y in zip(sol.t, sol.y[0], sol.y[1])]
    if sol.status == 1:
        hit = next(i for i, te in enumerate(sol.t_events) if len(te))
        te, ze = float(sol.t_events[hit][0]), sol.y_events[hit][0]
        if samples[-1][0] != te:
            samples.append((te, float(ze[0]), float(ze[1])))
        reason = reasons[hit]
    elif sol.status == -1:
        reason = Termination.STEP_UNDERFLOW
    else:
        reason = Termination.TIME_LIMIT
    return Trajectory(tuple(samples), (x0, y0), direction, reason)
