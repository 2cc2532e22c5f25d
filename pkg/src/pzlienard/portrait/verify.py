"""Numerical check that a change of variables carries solutions to solutions.

A source is a first-order system ``dY/ds = rhs(s, Y)`` with an initial
state.  The map sends a point ``(s, Y)`` of a source solution to the target's
independent variable ``sigma`` and dependent value ``u``.  Derivatives of
``u`` with respect to ``sigma`` are obtained by central differences in ``s``
refined with two Richardson levels, then the chain rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from ..algebra import LinearODE, RationalFunction, Surd
from ..pzfield import PZParams, build_field
from ..transforms import (
    PipelineReport,
    RiccatiEq,
    associated_legendre_equation,
    gegenbauer_indices,
    legendre_equation,
    legendre_to_hypergeometric,
)

__all__ = [
    "SingularMap",
    "SourceSystem",
    "VariableMap",
    "StageCheck",
    "ode_as_source",
    "identity_map",
    "verify_transform",
    "pipeline_checks",
    "verify_pipeline",
    "perturbed",
]

SOLVER_TOL = 1e-13
SINGULAR = 1e-10


class SingularMap(ArithmeticError):
    pass


@dataclass(frozen=True)
class SourceSystem:
    rhs: Callable[[float, np.ndarray], Sequence[float]]
    y0: tuple[float, ...]
    label: str = ""


@dataclass(frozen=True)
class VariableMap:
    sigma: Callable[[float, np.ndarray], float]
    u: Callable[[float, np.ndarray], float]
    denominator: Callable[[float, np.ndarray], float] | None = None
    description: str = ""


def identity_map(description: str = "identity") -> VariableMap:
    return VariableMap(lambda s, Y: s, lambda s, Y: Y[0], None, description)


def ode_as_source(ode: LinearODE, y0: Sequence[float]) -> SourceSystem:
    """First-order system for ``Y = (y, y', ..., y^(n-1))``."""
    n = ode.order
    coeffs = [ode.coefficient_of(k) for k in range(n + 1)]

    def rhs(s, Y):
        lead = coeffs[n].eval_float(s)
        acc = sum(coeffs[k].eval_float(s) * Y[k] for k in range(n))
        return [*Y[1:], -acc / lead]

    if len(y0) != n:
        raise ValueError(f"need {n} initial values")
    return SourceSystem(rhs, tuple(float(v) for v in y0), str(ode))


def _rk4_offsets(rhs, s: float, Y: np.ndarray, h: float, substeps: int = 8) -> dict[int, tuple[float, np.ndarray]]:
    """States at ``s + o*h/4`` for o in (+-1, +-2, +-4) by fixed-step RK4.

    Fixed steps keep the integration error a smooth function of the offset,
    which the Richardson table then removes along with the truncation error.
    """
    out = {0: (s, Y)}
    for sign in (1, -1):
        dt = sign * h / (4 * substeps)
        t, y = s, np.array(Y, dtype=float)
        for i in range(1, 4 * substeps + 1):
            k1 = np.asarray(rhs(t, y), dtype=float)
            k2 = np.asarray(rhs(t + dt / 2, y + dt / 2 * k1), dtype=float)
            k3 = np.asarray(rhs(t + dt / 2, y + dt / 2 * k2), dtype=float)
            k4 = np.asarray(rhs(t + dt, y + dt * k3), dtype=float)
            y = y + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
            t = s + i * dt
            if i % substeps == 0 and (i // substeps) in (1, 2, 4):
                out[sign * (i // substeps)] = (t, y)
    return out


def _central(values: dict[int, float], h: float, step: int) -> tuple[float, float]:
    """(f', f'') at the centre from samples at offsets ``+-step``; spacing ``h``."""
    fp, f0, fm = values[step], values[0], values[-step]
    return (fp - fm) / (2 * h), (fp - 2 * f0 + fm) / (h * h)


def _richardson(d_h: float, d_h2: float, d_h4: float) -> float:
    r1 = (4 * d_h2 - d_h) / 3
    r2 = (4 * d_h4 - d_h2) / 3
    return (16 * r2 - r1) / 15


def verify_transform(
    source: SourceSystem,
    target,
    forward_map: VariableMap,
    interval: Sequence[float],
    n_samples: int = 50,
    h: float | None = None,
) -> float:
    """Max over samples of ``|sum of target terms| / max |term|``."""
    s0, s1 = float(interval[0]), float(interval[1])
    if h is None:
        h = min(0.02, (s1 - s0) / 10)
    order = target.order
    if order > 2:
        raise NotImplementedError("targets up to second order")
    centres = np.linspace(s0 + h, s1 - h, n_samples)
    sol = solve_ivp(source.rhs, (s0, s1), list(source.y0), method="DOP853",
                    rtol=SOLVER_TOL, atol=SOLVER_TOL * 1e-2, t_eval=centres)
    if sol.status != 0:
        raise SingularMap(f"source integration failed: {sol.message}")

    worst = 0.0
    for idx, c in enumerate(sol.t):
        sig: dict[int, float] = {}
        val: dict[int, float] = {}
        for o, (s, Y) in _rk4_offsets(source.rhs, float(c), sol.y[:, idx], h).items():
            if forward_map.denominator is not None and abs(forward_map.denominator(s, Y)) < SINGULAR:
                raise SingularMap(f"map denominator vanishes near s = {s}")
            sig[o] = forward_map.sigma(s, Y)
            val[o] = forward_map.u(s, Y)
        ds = [_central(sig, h * k / 4, k) for k in (4, 2, 1)]
        dv = [_central(val, h * k / 4, k) for k in (4, 2, 1)]
        s_1 = _richardson(*(d[0] for d in ds))
        s_2 = _richardson(*(d[1] for d in ds))
        u_1 = _richardson(*(d[0] for d in dv))
        u_2 = _richardson(*(d[1] for d in dv))
        if abs(s_1) < SINGULAR:
            raise SingularMap(f"d sigma/ds vanishes near s = {c}")
        du = u_1 / s_1
        d2u = (u_2 * s_1 - u_1 * s_2) / s_1**3
        terms = target.residual_terms(sig[0], [val[0], du, d2u][: order + 1])
        scale = max(abs(t) for t in terms)
        if scale == 0:
            continue
        worst = max(worst, abs(math.fsum(terms)) / scale)
    return float(worst)


# -- pipeline stages -----------------------------------------------------------


@dataclass
class StageCheck:
    stage: str
    source: SourceSystem
    target: object
    forward_map: VariableMap
    interval: tuple[float, float]
    notes: list[str] = field(default_factory=list)


def _f(v) -> float:
    return float(v)


def _lienard_source(params: PZParams, x0: float, y0: float) -> SourceSystem:
    field_ = build_field(params)

    def rhs(x, Y):
        return [field_.evaluate_q(x, Y[0]) / Y[0]]

    return SourceSystem(rhs, (y0,), "foliation dy/dx = Q/y")


def _lienard_seed(params: PZParams, x0: float, x1: float) -> float:
    """An initial ``y`` whose foliation leaf keeps ``y`` and ``dt/dx`` away from zero."""
    a, b, m, k = (_f(v) for v in (params.a, params.b, params.m, params.k))
    field_ = build_field(params)
    xs = np.linspace(x0, x1, 200)
    for y0 in (3.0, 5.0, -3.0, 10.0, -10.0, 1.0, -1.0, 30.0, -30.0):
        src = _lienard_source(params, x0, y0)
        sol = solve_ivp(src.rhs, (x0, x1), [y0], method="DOP853", rtol=1e-10, atol=1e-12, t_eval=xs)
        if sol.status != 0 or np.min(np.abs(sol.y[0])) < 1e-3:
            continue
        dt = [field_.evaluate_q(x, y) / y / x**m - m * y / x ** (m + 1) - a * k * x ** (k - 1)
              + b * k * x ** (-k - 1) for x, y in zip(xs, sol.y[0])]
        if np.min(np.abs(dt)) > 1e-3:
            return y0
    raise SingularMap("no nonsingular foliation leaf found on the sample interval")


def pipeline_checks(report: PipelineReport) -> list[StageCheck]:
    """Numerical maps and intervals for every stage of ``report``."""
    prm = report.params
    a, b, m, k = (_f(v) for v in (prm.a, prm.b, prm.m, prm.k))
    checks: list[StageCheck] = []

    ric = report.stage("lienard_to_riccati").equation
    lin = report.stage("riccati_to_linear").equation
    c0 = _f(report.stage("riccati_to_linear").data["c0"])
    norm_stage = report.stage("complete_square")
    norm = norm_stage.equation
    shift = _f(norm_stage.data["shift"])
    q0 = _f(norm_stage.data["q0"])
    geg = report.stage("to_gegenbauer").equation
    hyp = report.stage("gegenbauer_to_hypergeometric").equation
    mu, nus = gegenbauer_indices(geg)
    nu = nus[0]

    # tau^2 + q0 (equivalently m t^2 + c0) stays away from zero on [lo, 2 lo]
    lo = max(1.0, 1.5 * math.sqrt(abs(q0)))
    t_interval = (lo - shift, 2 * lo - shift)

    # foliation of the Lienard field -> Riccati in t
    checks.append(StageCheck(
        "lienard_to_riccati",
        _lienard_source(prm, 1.0, _lienard_seed(prm, 1.0, 1.5)),
        ric,
        VariableMap(
            sigma=lambda x, Y: Y[0] / x**m - a * x**k - b * x ** (-k),
            u=lambda x, Y: x**k,
            denominator=lambda x, Y: Y[0],
            description="t = y/x^m - a x^k - b x^(-k), z = x^k",
        ),
        (1.0, 1.5),
    ))

    # linear solution w -> Riccati solution z (the substitution runs this way)
    checks.append(StageCheck(
        "riccati_to_linear",
        ode_as_source(lin, (1.0, 0.25)),
        ric,
        VariableMap(
            sigma=lambda t, Y: t,
            u=lambda t, Y: (m * t * t + c0) / (a * k) * Y[1] / Y[0],
            denominator=lambda t, Y: Y[0],
            description="z = (m t^2 + c0)/(a k) w'/w",
        ),
        t_interval,
        notes=["verified in the direction w -> z"],
    ))

    checks.append(StageCheck(
        "complete_square",
        ode_as_source(lin, (1.0, 0.25)),
        norm,
        VariableMap(lambda t, Y: t + shift, lambda t, Y: Y[0], None, "tau = t + shift"),
        t_interval,
    ))

    checks.append(StageCheck(
        "to_gegenbauer",
        ode_as_source(norm, (1.0, 0.25)),
        geg,
        VariableMap(
            sigma=lambda tau, Y: tau / math.sqrt(tau * tau + q0),
            u=lambda tau, Y: Y[0],
            denominator=lambda tau, Y: tau * tau + q0,
            description="xi = tau / sqrt(tau^2 + q0)",
        ),
        (lo, 2 * lo),
    ))

    checks.append(StageCheck(
        "gegenbauer_to_hypergeometric",
        ode_as_source(geg, (1.0, 0.25)),
        hyp,
        VariableMap(lambda xi, Y: (1 - xi) / 2, lambda xi, Y: Y[0], None, "z = (1 - xi)/2"),
        (-0.5, 0.5),
    ))

    muf = float(mu)
    checks.append(StageCheck(
        "legendre_parameters",
        ode_as_source(geg, (1.0, 0.25)),
        associated_legendre_equation(mu, nu),
        VariableMap(
            lambda xi, Y: xi,
            lambda xi, Y: (1 - xi * xi) ** (muf / 2) * Y[0],
            lambda xi, Y: 1 - xi * xi,
            "u = (1 - xi^2)^(mu/2) w",
        ),
        (-0.5, 0.5),
    ))

    checks.append(StageCheck(
        "legendre_to_hypergeometric",
        ode_as_source(legendre_equation(mu, nu), (1.0, 0.25)),
        legendre_to_hypergeometric(mu, nu),
        VariableMap(
            lambda x, Y: (1 - x) / 2,
            lambda x, Y: abs(1 - x * x) ** (-muf / 2) * Y[0],
            lambda x, Y: 1 - x * x,
            "w = |x^2 - 1|^(-mu/2) y, xi = (1 - x)/2",
        ),
        (-0.5, 0.5),
    ))
    return checks


def perturbed(ode, shift=1):
    """``ode`` with its zeroth-order coefficient increased by ``shift``."""
    if isinstance(ode, RiccatiEq):
        return RiccatiEq(ode.lhs_coeff, ode.rhs_c0 + shift, ode.rhs_c1, ode.rhs_c2)
    return ode.with_coefficient(0, ode.coefficient_of(0) + shift)


def verify_pipeline(report: PipelineReport, n_samples: int = 50) -> list[tuple[str, float]]:
    return [
        (chk.stage, verify_transform(chk.source, chk.target, chk.forward_map, chk.interval, n_samples))
        for chk in pipeline_checks(report)
    ]
