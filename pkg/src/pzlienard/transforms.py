"""Exact transformation chain: Lienard -> Riccati -> linear -> Gegenbauer -> ...

Every stage works on exact rationals.  Quantities that are roots of a
quadratic (the Legendre degree nu, hypergeometric parameters built from it)
are carried as :class:`~pzlienard.algebra.Surd` values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Union

from .algebra import LinearODE, RationalFunction, Surd, UniPoly, as_rational, format_rational
from .pzfield import PZParams

__all__ = [
    "RiccatiEq",
    "GaugeFactor",
    "NormalizedSecondOrder",
    "HypergeomParams",
    "LegendreParams",
    "PipelineStage",
    "PipelineReport",
    "PipelineError",
    "SubstitutionUndefined",
    "DegenerateLeading",
    "NonzeroL0",
    "ZeroQ0",
    "ZeroC0",
    "ZeroM",
    "lienard_to_riccati",
    "riccati_to_linear",
    "complete_square",
    "remove_subleading",
    "to_gegenbauer",
    "gegenbauer_indices",
    "gegenbauer_to_hypergeometric",
    "legendre_equation",
    "associated_legendre_equation",
    "legendre_to_hypergeometric",
    "hypergeometric_to_legendre",
    "legendre_parameters",
    "quadratic_roots",
    "full_pipeline",
]

Scalar = Union[Fraction, Surd]


class SubstitutionUndefined(ValueError):
    pass


class DegenerateLeading(ValueError):
    pass


class NonzeroL0(ValueError):
    pass


class ZeroQ0(ValueError):
    pass


class ZeroC0(ValueError):
    pass


class ZeroM(ValueError):
    pass


def _fmt(v) -> str:
    return format_rational(v) if isinstance(v, Fraction) else str(v)


def _rational(v) -> Fraction:
    return v.rational() if isinstance(v, Surd) else as_rational(v)


# -- Riccati -----------------------------------------------------------------


@dataclass(frozen=True)
class RiccatiEq:
    """``lhs_coeff(t) z' = rhs_c0 + rhs_c1 t z + rhs_c2 z^2``."""

    lhs_coeff: UniPoly
    rhs_c0: Fraction
    rhs_c1: Fraction
    rhs_c2: Fraction

    var = "t"

    def rhs(self, t: float, z: float) -> float:
        return float(self.rhs_c0) + float(self.rhs_c1) * t * z + float(self.rhs_c2) * z * z

    def residual_terms(self, t: float, derivs) -> list[float]:
        z, dz = derivs[0], derivs[1]
        return [
            self.lhs_coeff.eval_float(t) * dz,
            -float(self.rhs_c0),
            -float(self.rhs_c1) * t * z,
            -float(self.rhs_c2) * z * z,
        ]

    @property
    def order(self) -> int:
        return 1

    def coefficient_strings(self) -> list[str]:
        return [
            self.lhs_coeff.to_str("t"),
            format_rational(self.rhs_c0),
            format_rational(self.rhs_c1),
            format_rational(self.rhs_c2),
        ]

    def __str__(self):
        return (
            f"({self.lhs_coeff.to_str('t')}) dz/dt = {format_rational(self.rhs_c0)}"
            f" + ({format_rational(self.rhs_c1)}) t z + ({format_rational(self.rhs_c2)}) z^2"
        )


def lienard_to_riccati(params: PZParams) -> RiccatiEq:
    a, b, c, m, k = params.a, params.b, params.c, params.m, params.k
    lhs = UniPoly((2 * m * a * b - c, 0, -m))
    return RiccatiEq(lhs, b * k, k, a * k)


def riccati_to_linear(params: PZParams) -> LinearODE:
    """Second-order linear equation reached by ``z = (m t^2 + c0)/(a k) w'/w``."""
    a, b, m, k = params.a, params.b, params.m, params.k
    if a == 0 or k == 0:
        raise SubstitutionUndefined("z = (m t^2 + c0)/(a k) w'/w needs a != 0 and k != 0")
    P = UniPoly((params.c0, 0, m))
    t = UniPoly.x()
    return LinearODE([P * P, (2 * m + k) * t * P, a * b * k * k], var="t")


# -- completing the square ---------------------------------------------------


@dataclass(frozen=True)
class NormalizedSecondOrder:
    """``Q^2 w'' + L Q w' + lambda w = 0``, ``Q = tau^2 + q0``, ``L = l1 tau + l0``."""

    q0: Fraction
    l1: Fraction
    l0: Fraction
    lam: Fraction
    shift: Fraction

    def Q(self) -> UniPoly:
        return UniPoly((self.q0, 0, 1))

    def L(self) -> UniPoly:
        return UniPoly((self.l0, self.l1))

    def to_ode(self) -> LinearODE:
        Q = self.Q()
        return LinearODE([Q * Q, self.L() * Q, self.lam], var="tau")


def complete_square(a2, a1, a0, b1, b0, C) -> NormalizedSecondOrder:
    """Normalize ``R^2 y'' + S R y' + C y = 0`` with ``R = a2 x^2 + a1 x + a0``, ``S = b1 x + b0``."""
    a2, a1, a0, b1, b0, C = (as_rational(v) for v in (a2, a1, a0, b1, b0, C))
    if a2 == 0:
        raise DegenerateLeading("R must be quadratic (a2 != 0)")
    shift = a1 / (2 * a2)
    return NormalizedSecondOrder(
        q0=a0 / a2 - shift * shift,
        l1=b1 / a2,
        l0=-b1 * a1 / (2 * a2 * a2) + b0 / a2,
        lam=C / (a2 * a2),
        shift=shift,
    )


# -- removing the (n-1)-th derivative ------------------------------------------


@dataclass(frozen=True)
class GaugeFactor:
    """The gauge ``z = eps * y`` known only through ``eps'/eps``."""

    log_derivative: RationalFunction

    def ratios(self, n: int) -> list[RationalFunction]:
        """``[eps/eps, eps'/eps, ..., eps^(n)/eps]``.

        Uses ``(eps^(j)/eps)' = eps^(j+1)/eps - (eps^(j)/eps)(eps'/eps)``.
        """
        r1 = self.log_derivative
        out = [RationalFunction(1)]
        for _ in range(n):
            prev = out[-1]
            out.append(prev.derivative() + prev * r1)
        return out


def remove_subleading(ode: LinearODE, keep=0) -> tuple[LinearODE, GaugeFactor]:
    """Gauge away the (n-1)-th derivative coefficient, leaving ``keep`` in its place."""
    keep = keep if isinstance(keep, RationalFunction) else RationalFunction(as_rational(keep))
    ode = ode.normalized()
    n = ode.order
    a = [ode.coefficient_of(i) for i in range(n + 1)]
    gauge = GaugeFactor((keep - a[n - 1]) / n)
    ratio = gauge.ratios(n)
    b = []
    for j in range(n + 1):
        acc = RationalFunction(0)
        for i in range(j, n + 1):
            if not a[i].is_zero():
                acc = acc + a[i] * comb(i, j) * ratio[i - j]
        b.append(acc)
    return LinearODE(list(reversed(b)), ode.var), gauge


# -- Gegenbauer, hypergeometric, Legendre --------------------------------------


def to_gegenbauer(ns: NormalizedSecondOrder) -> LinearODE:
    """Apply ``xi = tau / sqrt(tau^2 + q0)`` to the normalized equation.

    With ``d xi/d tau = (1 - xi^2)^(3/2)/sqrt(q0)`` the equation becomes
    ``q0 (1 - xi^2) u'' + q0 (l1 - 3) xi u' + lambda u = 0``; dividing by
    ``q0`` gives the returned form.
    """
    if ns.l0 != 0:
        raise NonzeroL0(f"l0 = {format_rational(ns.l0)}; the map needs an odd L")
    if ns.q0 == 0:
        raise ZeroQ0("q0 = 0 makes tau / sqrt(tau^2 + q0) constant")
    xi = UniPoly.x()
    return LinearODE([UniPoly((1, 0, -1)), (ns.l1 - 3) * xi, ns.lam / ns.q0], var="xi")


def quadratic_roots(A, B, C) -> tuple[Surd, Surd]:
    """Exact roots of ``A v^2 + B v + C`` as surds, '+' root first."""
    A, B, C = as_rational(A), as_rational(B), as_rational(C)
    if A == 0:
        raise ValueError("not a quadratic")
    disc = B * B - 4 * A * C
    return Surd(-B / (2 * A), 1 / (2 * A), disc), Surd(-B / (2 * A), -1 / (2 * A), disc)


def gegenbauer_indices(ode: LinearODE) -> tuple[Fraction, tuple[Surd, Surd]]:
    """Read ``(mu, (nu+, nu-))`` off ``(1-x^2) y'' - 2(mu+1) x y' + (nu-mu)(nu+mu+1) y = 0``."""
    if ode.order != 2:
        raise ValueError("Gegenbauer form is second order")
    lead = ode.coeffs[0]
    target = RationalFunction(UniPoly((1, 0, -1)))
    scale = lead / target
    if scale.constant_value() is None:
        raise ValueError("leading coefficient is not a multiple of 1 - x^2")
    ode = ode.scaled(1 / scale)
    mid = ode.coeffs[1]
    if not (mid.is_polynomial() and mid.num.degree <= 1 and mid.num[0] == 0):
        raise ValueError("middle coefficient is not a multiple of x")
    const = ode.coeffs[2].constant_value()
    if const is None:
        raise ValueError("zeroth coefficient is not constant")
    mu = -mid.num[1] / 2 - 1
    return mu, quadratic_roots(1, 1, -(mu * mu + mu + const))


@dataclass(frozen=True)
class HypergeomParams:
    """``z(1-z) y'' + (c - (a+b+1) z) y' - a b y = 0``."""

    a: Scalar
    b: Scalar
    c: Scalar

    def to_ode(self) -> LinearODE:
        z = UniPoly.x()
        s = _rational(self.a + self.b + 1)
        ab = _rational(self.a * self.b)
        c = _rational(self.c)
        return LinearODE([z - z * z, UniPoly((c, -s)), -ab], var="z")

    def to_json(self) -> dict:
        return {"a": _fmt(self.a), "b": _fmt(self.b), "c": _fmt(self.c)}


def gegenbauer_to_hypergeometric(mu, nu) -> HypergeomParams:
    mu = mu if isinstance(mu, Surd) else as_rational(mu)
    nu = nu if isinstance(nu, Surd) else as_rational(nu)
    return HypergeomParams(mu - nu, nu + mu + 1, mu + 1)


def legendre_equation(mu, nu) -> LinearODE:
    """``(1-x^2)^2 y'' - 2x(1-x^2) y' + [nu(nu+1)(1-x^2) - mu^2] y = 0``."""
    mu = _rational(mu)
    nn1 = _rational(nu * (nu + 1)) if isinstance(nu, Surd) else as_rational(nu) * (as_rational(nu) + 1)
    w = UniPoly((1, 0, -1))
    x = UniPoly.x()
    return LinearODE([w * w, -2 * x * w, nn1 * w - mu * mu], var="x")


def associated_legendre_equation(mu, nu) -> LinearODE:
    """``(1-x^2) y'' - 2x y' + [nu(nu+1) - mu^2/(1-x^2)] y = 0``."""
    return legendre_equation(mu, nu).scaled(RationalFunction(1, UniPoly((1, 0, -1))))


def legendre_to_hypergeometric(mu, nu) -> LinearODE:
    """Equation for ``w`` after ``y = (x^2-1)^(mu/2) w`` and ``x = 1 - 2 xi``."""
    mu = mu if isinstance(mu, Surd) else as_rational(mu)
    nu = nu if isinstance(nu, Surd) else as_rational(nu)
    xi = UniPoly.x()
    zeroth = _rational((mu - nu) * (mu + nu + 1))
    return LinearODE(
        [xi * xi - xi, -_rational(mu + 1) * UniPoly((1, -2)), zeroth], var="xi"
    )


def hypergeometric_to_legendre(mu, nu) -> LinearODE:
    """Inverse of :func:`legendre_to_hypergeometric` (same parameters)."""
    return legendre_equation(mu, nu)


@dataclass(frozen=True)
class LegendreParams:
    mu: Fraction
    nu_pair: tuple[Surd, Surd]
    c0: Fraction

    def to_json(self) -> dict:
        return {
            "mu": format_rational(self.mu),
            "nu": [str(v) for v in self.nu_pair],
            "c0": format_rational(self.c0),
        }


def legendre_parameters(params: PZParams) -> LegendreParams:
    m, k, a, b = params.m, params.k, params.a, params.b
    if m == 0:
        raise ZeroM("m = 0")
    c0 = params.c0
    if c0 == 0:
        raise ZeroC0("c0 = c - 2abm vanishes")
    const = (m * m - k * k) / (4 * m * m) - a * b * k * k / (m * c0)
    return LegendreParams(mu=-(m + k) / (2 * m), nu_pair=quadratic_roots(1, 1, const), c0=c0)


# -- the whole chain -----------------------------------------------------------


class PipelineError(RuntimeError):
    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"stage {stage}: {type(cause).__name__}: {cause}")
        self.stage = stage
        self.cause = cause


@dataclass
class PipelineStage:
    stage: str
    equation: object
    change_of_variables: str
    data: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        eq = self.equation
        if hasattr(eq, "coefficient_strings"):
            coeffs = eq.coefficient_strings()
        else:
            coeffs = [str(eq)]
        return {
            "stage": self.stage,
            "equation": {"text": str(eq), "coefficients": coeffs},
            "change_of_variables": self.change_of_variables,
            "data": {k: _fmt(v) if not isinstance(v, (list, tuple, dict, str)) else v
                     for k, v in self.data.items()},
            "notes": list(self.notes),
        }


@dataclass
class PipelineReport:
    params: PZParams
    stages: list[PipelineStage]

    def stage(self, name: str) -> PipelineStage:
        for s in self.stages:
            if s.stage == name:
                return s
        raise KeyError(name)

    def to_json(self) -> dict:
        return {"params": self.params.to_json(), "stages": [s.to_json() for s in self.stages]}


def full_pipeline(params: PZParams) -> PipelineReport:
    stages: list[PipelineStage] = []
    current = "lienard_to_riccati"
    try:
        ric = lienard_to_riccati(params)
        stages.append(PipelineStage(
            current, ric,
            "z = x^k, y = x^m (t + a x^k + b x^(-k))",
            notes=["constant term is b*k; the worked a=0, m=3/2, k=1/2 display prints -b/2 instead of +b/2"],
        ))

        current = "riccati_to_linear"
        lin = riccati_to_linear(params)
        c0 = params.c0
        stages.append(PipelineStage(
            current, lin, "z = (m t^2 + c0)/(a k) * w'/w",
            data={"c0": c0},
        ))

        current = "complete_square"
        m, k = params.m, params.k
        ns = complete_square(m, 0, c0, 2 * m + k, 0, params.a * params.b * k * k)
        stages.append(PipelineStage(
            current, ns.to_ode(), f"tau = t + {format_rational(ns.shift)}, w_hat(tau) = w(t)",
            data={"q0": ns.q0, "l1": ns.l1, "l0": ns.l0, "lambda": ns.lam, "shift": ns.shift},
        ))

        current = "to_gegenbauer"
        geg = to_gegenbauer(ns)
        notes = []
        if ns.q0 != 1:
            notes.append(
                "middle coefficient is (l1 - 3) xi; the printed (l1 - 3/q0) only agrees when q0 = 1"
            )
        stages.append(PipelineStage(
            current, geg, "xi = tau / sqrt(tau^2 + q0), u(xi) = w_hat(tau)",
            data={"q0": ns.q0}, notes=notes,
        ))

        current = "gegenbauer_to_hypergeometric"
        mu, nus = gegenbauer_indices(geg)
        hyp = gegenbauer_to_hypergeometric(mu, nus[0])
        stages.append(PipelineStage(
            current, hyp.to_ode(), "xi = 1 - 2 z, y(z) = u(xi)",
            data={"mu": mu, "nu": [str(v) for v in nus], **hyp.to_json()},
        ))

        current = "legendre_parameters"
        leg = legendre_parameters(params)
        notes = []
        if leg.mu == mu and set(leg.nu_pair) == set(nus):
            notes.append("(mu, nu) agree with the indices read off the Gegenbauer stage")
        else:
            notes.append("(mu, nu) differ from the Gegenbauer-stage indices")
        stages.append(PipelineStage(
            current, associated_legendre_equation(leg.mu, leg.nu_pair[0]),
            "u = (1 - xi^2)^(mu/2) w",
            data={"mu": leg.mu, "nu": [str(v) for v in leg.nu_pair], "c0": leg.c0},
            notes=notes,
        ))
    except (ValueError, ZeroDivisionError) as exc:
        raise PipelineError(current, exc) from exc
    return PipelineReport(params, stages)
