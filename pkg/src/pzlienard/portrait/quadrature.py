"""Closed-form Riccati solution of the worked example, by quadrature."""

from __future__ import annotations

from dataclasses import dataclass

from scipy.integrate import quad, solve_ivp

__all__ = ["DomainError", "SignResolution", "riccati_quadrature", "riccati_rhs", "resolve_riccati_sign"]

QUAD_TOL = 1e-10


class DomainError(ValueError):
    pass


def _check_domain(c: float, t0: float, t: float) -> None:
    lo, hi = min(t0, t), max(t0, t)
    smallest = 0.0 if lo <= 0.0 <= hi else min(lo * lo, hi * hi)
    if 3 * smallest + 2 * c <= 0:
        raise DomainError("3 t^2 + 2 c vanishes or changes sign on the path")


def riccati_quadrature(b: float, c: float, t0: float, z0: float, t: float) -> float:
    """``z(t) = (K - int b (3s^2+2c)^(-5/6) ds) / (3t^2+2c)^(1/6)`` with ``z(t0) = z0``."""
    _check_domain(c, t0, t)
    g0 = (3 * t0 * t0 + 2 * c) ** (1 / 6)
    integral, _ = quad(lambda s: b * (3 * s * s + 2 * c) ** (-5 / 6), t0, t,
                       epsabs=QUAD_TOL, epsrel=QUAD_TOL, limit=200)
    return (z0 * g0 - integral) / (3 * t * t + 2 * c) ** (1 / 6)


def riccati_rhs(b: float, c: float, sign: int = 1):
    """``dz/dt`` from ``(-(3/2) t^2 - c) z' = sign*b/2 + (1/2) t z``."""

    def rhs(t, z):
        return [-(sign * b / 2 + t * z[0] / 2) / (1.5 * t * t + c)]

    return rhs


@dataclass(frozen=True)
class SignResolution:
    sign: int
    max_error: dict[int, float]


def resolve_riccati_sign(b: float, c: float, t0: float, z0: float, ts) -> SignResolution:
    """Integrate both sign variants of the constant term and keep the one the
    closed form reproduces."""
    ts = sorted(float(t) for t in ts)
    for t in ts:
        _check_domain(c, t0, t)
    closed = [riccati_quadrature(b, c, t0, z0, t) for t in ts]
    errors = {}
    for sign in (1, -1):
        fwd = [t for t in ts if t >= t0]
        bwd = [t for t in reversed(ts) if t < t0]
        vals = {}
        for seg in (fwd, bwd):
            if seg:
                sol = solve_ivp(riccati_rhs(b, c, sign), (t0, seg[-1]), [z0], method="DOP853",
                                rtol=1e-12, atol=1e-14, t_eval=seg)
                vals.update(zip(seg, sol.y[0]))
        errors[sign] = max(abs(vals[t] - z) for t, z in zip(ts, closed))
    best = min(errors, key=errors.get)
    return SignResolution(best, errors)
