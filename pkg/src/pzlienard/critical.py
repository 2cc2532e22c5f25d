"""Finite critical points, linearization and the nilpotent/semi-hyperbolic classifier."""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Union

import numpy as np

from .algebra import (
    AllZero,
    BiPoly,
    PlanarPolySystem,
    RealRoot,
    Surd,
    as_rational,
    compose_bipoly,
    format_rational,
    real_root,
    series_implicit_solve,
    series_leading_term,
    UniPoly,
)
from .algebra.series import DEFAULT_ORDER
from .pzfield import Family, FamilyClass, NotPolynomial, PZParams, classify_family, instantiate_family

__all__ = [
    "CriticalPoint",
    "CriticalPoints",
    "Classification",
    "LyapunovCertificate",
    "TruncationTooLow",
    "NormalFormViolation",
    "WrongFamily",
    "WrongCase",
    "finite_critical_points",
    "polynomial_real_roots",
    "closed_form_abscissa",
    "linearize",
    "classify_degenerate",
    "theorem_tree",
    "origin_structure_F1",
    "lyapunov_certificate",
]

Exact = Union[Fraction, Surd, RealRoot]


class TruncationTooLow(ValueError):
    pass


class NormalFormViolation(ValueError):
    pass


class WrongFamily(ValueError):
    pass


class WrongCase(ValueError):
    pass


def _fmt(v) -> str:
    return format_rational(v) if isinstance(v, Fraction) else str(v)


@dataclass(frozen=True)
class CriticalPoint:
    x: Exact | float
    y: Fraction = Fraction(0)
    origin_flag: bool = False

    @property
    def x_approx(self) -> float:
        return float(self.x)

    @property
    def is_rational(self) -> bool:
        return isinstance(self.x, Fraction) or (isinstance(self.x, Surd) and self.x.is_rational)

    def exact_x(self):
        if isinstance(self.x, Surd) and self.x.is_rational:
            return self.x.p
        return self.x

    def to_json(self) -> dict:
        return {
            "x": _fmt(self.x),
            "x_approx": self.x_approx,
            "y": format_rational(self.y),
            "origin": self.origin_flag,
        }


class CriticalPoints(list):
    """A list of critical points that also carries notes (e.g. ComplexRoots)."""

    def __init__(self, points=(), notes=()):
        super().__init__(points)
        self.notes = list(notes)


def _solve_power_progression(terms: dict[int, Fraction]) -> tuple[list, list[str]]:
    """Nonzero real roots of ``sum c_e x^e`` (no x factor) when it is a
    polynomial of degree <= 2 in ``x^g``."""
    notes: list[str] = []
    exps = sorted(terms)
    g = 0
    for e in exps:
        g = gcd(g, e)
    if g == 0:
        return [], notes
    wpoly = {e // g: terms[e] for e in exps}
    deg = max(wpoly)
    C, B, A = wpoly.get(0, Fraction(0)), wpoly.get(1, Fraction(0)), wpoly.get(2, Fraction(0))
    ws: list = []
    if deg == 1:
        ws = [-C / B]
    elif deg == 2:
        disc = B * B - 4 * A * C
        if disc < 0:
            notes.append("ComplexRoots: negative discriminant in x^%d" % g)
        else:
            ws = sorted({Surd(-B / (2 * A), s / (2 * A), disc) for s in (1, -1)}, key=float)
    else:
        coeffs = [float(wpoly.get(i, 0)) for i in range(deg, -1, -1)]
        for w in np.roots(coeffs):
            if abs(w.imag) < 1e-12 * max(1.0, abs(w)):
                ws.append(float(w.real))
            else:
                notes.append("ComplexRoots: non-real root in x^%d" % g)
        notes.append("roots found numerically (degree %d in x^%d)" % (deg, g))

    xs = []
    for w in ws:
        if isinstance(w, float):
            if w == 0:
                continue
            if g % 2:
                xs.append(float(np.sign(w)) * abs(w) ** (1.0 / g))
            elif w > 0:
                r = w ** (1.0 / g)
                xs.extend([-r, r])
            else:
                notes.append("ComplexRoots: x^%d = negative value" % g)
            continue
        sw = w.sign() if isinstance(w, Surd) else (w > 0) - (w < 0)
        if sw == 0:
            continue
        mag = w if sw > 0 else -w
        if g % 2:
            xs.append(real_root(mag, g, sw))
        elif sw > 0:
            xs.extend([real_root(mag, g, -1), real_root(mag, g, 1)])
        else:
            notes.append("ComplexRoots: x^%d = %s has no real solution" % (g, _fmt(w)))
    return xs, notes


def polynomial_real_roots(poly: UniPoly) -> tuple[list, list[str]]:
    """Real roots of a univariate polynomial, exact whenever the nonzero part
    is at most quadratic in a power of x; numeric otherwise."""
    if poly.is_zero():
        raise ValueError("the zero polynomial vanishes everywhere")
    v = poly.valuation()
    roots: list = [Fraction(0)] if v > 0 else []
    terms = {e - v: c for e, c in enumerate(poly.coeffs) if c}
    xs, notes = _solve_power_progression(terms)
    roots.extend(x.p if isinstance(x, Surd) and x.is_rational else x for x in xs)
    roots.sort(key=float)
    return roots, notes


def finite_critical_points(cls: FamilyClass) -> CriticalPoints:
    """All real critical points of an instantiated family.

    ``x' = y`` forces ``y = 0``; the abscissas are the real zeros of the
    pure-x part, found exactly when it is a polynomial of degree <= 2 in
    some power ``x^g`` (true for every family).
    """
    if cls.tag is Family.NON_POLYNOMIAL:
        raise NotPolynomial("critical points need a polynomial family")
    system = instantiate_family(cls)
    pure = {int(m.x_exp): m.coef for m in system.pure_x_terms()}
    if not pure:
        note = "every point of y = 0 is critical" if not system.y_terms() else \
            "pure-x part vanishes: y = 0 is a line of critical points"
        return CriticalPoints([CriticalPoint(Fraction(0), origin_flag=True)], [note])
    e0 = min(pure)
    points = []
    if e0 > 0:
        points.append(CriticalPoint(Fraction(0), origin_flag=True))
    reduced = {e - e0: c for e, c in pure.items()}
    xs, notes = _solve_power_progression(reduced)
    for x in xs:
        if isinstance(x, Surd) and x.is_rational:
            x = x.p
        points.append(CriticalPoint(x))
    points.sort(key=lambda p: p.x_approx)
    return CriticalPoints(points, notes)


def closed_form_abscissa(cls: FamilyClass) -> tuple[int, Fraction] | None:
    """The printed ``x^gamma = value`` for F2/F5, kept for comparison only."""
    a, b, c = cls.params.a, cls.params.b, cls.params.c
    if cls.tag is Family.F2:
        return abs(2 * cls.p + 1 - cls.r), -2 * c / (b * b * (cls.r + 1))
    if cls.tag is Family.F5:
        return abs(2 * cls.s + 1 - cls.r), -2 * c / (a * (cls.r + 1))
    return None


# -- classification ------------------------------------------------------------


@dataclass
class Classification:
    kind: str
    alpha: int | None = None
    beta: int | None = None
    a_lead: Fraction | None = None
    b_lead: Fraction | None = None
    eigenvalues: tuple | None = None
    trace: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        eig = None
        if self.eigenvalues is not None:
            eig = [_fmt(e) if not isinstance(e, complex) else repr(e) for e in self.eigenvalues]
        return {
            "kind": self.kind,
            "alpha": self.alpha,
            "beta": self.beta,
            "a_lead": None if self.a_lead is None else format_rational(self.a_lead),
            "b_lead": None if self.b_lead is None else format_rational(self.b_lead),
            "eigenvalues": eig,
            "trace": list(self.trace),
        }


def _kind_from_eigen(tr, det, disc) -> tuple[str, str]:
    if det == 0:
        return "Degenerate", "zero-eigenvalue"
    if det < 0:
        return "HyperbolicSaddle", "det<0"
    if disc >= 0:
        return ("HyperbolicStableNode" if tr < 0 else "HyperbolicUnstableNode"), "det>0,disc>=0"
    if tr == 0:
        return "HyperbolicCenterCandidate", "det>0,disc<0,tr=0"
    return "HyperbolicFocus", "det>0,disc<0"


def linearize(sys: PlanarPolySystem, pt: CriticalPoint) -> Classification:
    """Eigenvalue classification at ``pt``; degenerate points are passed on
    to :func:`classify_degenerate` when the translated system is in normal form."""
    (Px, Py), (Qx, Qy) = sys.jacobian()
    x = pt.exact_x()
    y = pt.y
    exact = isinstance(x, (Fraction, Surd))
    if exact:
        J = [[Px(x, y), Py(x, y)], [Qx(x, y), Qy(x, y)]]
        tr = J[0][0] + J[1][1]
        det = J[0][0] * J[1][1] - J[0][1] * J[1][0]
        rational = all(not isinstance(v, Surd) or v.is_rational for v in (tr, det))
    else:
        rational = False
    if exact and rational:
        tr = tr.rational() if isinstance(tr, Surd) else as_rational(tr)
        det = det.rational() if isinstance(det, Surd) else as_rational(det)
        disc = tr * tr - 4 * det
        eig = (Surd(tr / 2, Fraction(1, 2), disc), Surd(tr / 2, Fraction(-1, 2), disc))
        eig = tuple(e.p if e.is_rational else e for e in eig)
        kind, tag = _kind_from_eigen(tr, det, disc)
        trace = ["exact", tag]
    else:
        xf, yf = float(x), float(y)
        Jf = [[float(f(xf, yf)) for f in row] for row in ((Px.compile(), Py.compile()), (Qx.compile(), Qy.compile()))]
        tr = Jf[0][0] + Jf[1][1]
        det = Jf[0][0] * Jf[1][1] - Jf[0][1] * Jf[1][0]
        disc = tr * tr - 4 * det
        root = cmath.sqrt(disc)
        eig = ((tr + root) / 2, (tr - root) / 2)
        scale = max(1.0, abs(tr), abs(det))
        det_eff = 0 if abs(det) <= 1e-12 * scale else det
        tr_eff = 0 if abs(tr) <= 1e-12 * scale else tr
        kind, tag = _kind_from_eigen(tr_eff, det_eff, disc)
        trace = ["numeric", tag]
    out = Classification(kind, eigenvalues=eig, trace=trace)
    if kind == "Degenerate" and isinstance(x, Fraction):
        moved = sys.translate(x, y)
        if moved.P.linear_part() == BiPoly.y():
            try:
                deg = classify_degenerate(moved.P - BiPoly.y(), moved.Q)
            except (NormalFormViolation, TruncationTooLow) as exc:
                out.trace.append(f"deferred:{type(exc).__name__}")
            else:
                deg.eigenvalues = eig
                deg.trace = trace + ["deferred"] + deg.trace
                return deg
    return out


def theorem_tree(alpha: int, a: Fraction, beta: int | None, b: Fraction | None) -> tuple[str, list[str]]:
    """Walk the nilpotent decision tree; ``beta is None`` means Phi == 0."""
    phi_zero = beta is None
    if alpha % 2 == 0:
        if not phi_zero and alpha > 2 * beta + 1:
            return "SaddleNode", ["alpha-even", "alpha>2beta+1"]
        return "TwoHyperbolicSectors", ["alpha-even", "phi-zero" if phi_zero else "alpha<2beta+1"]
    if a > 0:
        return "Saddle", ["alpha-odd", "a>0"]
    trace = ["alpha-odd", "a<0"]
    if not phi_zero:
        disc = b * b + 4 * a * (beta + 1)
        if alpha > 2 * beta + 1 or (alpha == 2 * beta + 1 and disc >= 0):
            trace.append("alpha>2beta+1" if alpha > 2 * beta + 1 else "alpha=2beta+1,disc>=0")
            if beta % 2 == 0:
                trace.append("beta-even")
                return ("StableNode" if b < 0 else "UnstableNode"), trace + ["b<0" if b < 0 else "b>0"]
            return "EllipticHyperbolic", trace + ["beta-odd"]
        trace.append("alpha=2beta+1,disc<0" if alpha == 2 * beta + 1 else "alpha<2beta+1")
    else:
        trace.append("phi-zero")
    return "FocusOrCenter", trace


def classify_degenerate(X: BiPoly, Y: BiPoly, N: int = DEFAULT_ORDER) -> Classification:
    """Classify the origin of ``x' = y + X(x, y)``, ``y' = Y(x, y)``.

    X may not have constant or linear terms.  Y may carry linear terms,
    which covers the semi-hyperbolic case where ``y'`` has a ``y`` term.
    """
    if X.constant_term() != 0 or not X.linear_part().is_zero():
        raise NormalFormViolation("X must start at degree 2")
    if Y.constant_term() != 0:
        raise NormalFormViolation("Y has a constant term; origin is not critical")
    F = series_implicit_solve(X, N)
    f = compose_bipoly(Y, F)
    try:
        a_lead, alpha = series_leading_term(f)
    except AllZero:
        raise TruncationTooLow(f"f = Y(x, F(x)) vanishes through order {N}") from None
    Phi = compose_bipoly(X.diff_x() + Y.diff_y(), F)
    try:
        b_lead, beta = series_leading_term(Phi)
    except AllZero:
        # any later beta >= N > alpha gives alpha < 2beta+1, the same branch as Phi == 0
        b_lead, beta = None, None
    kind, trace = theorem_tree(alpha, a_lead, beta, b_lead)
    return Classification(kind, alpha=alpha, beta=beta, a_lead=a_lead, b_lead=b_lead, trace=trace)


def origin_structure_F1(params: PZParams) -> Classification:
    """Origin of an F1 system from its lowest-order terms, no series needed.

    Near x = 0 the smallest exponents dominate: ``x^(2p+1)`` and ``y x^p``
    when k > 0, ``x^(2s+1)`` and ``y x^s`` when k < 0; for k = 0 all three
    pure terms share one exponent and merge.
    """
    cls = classify_family(params)
    if cls.tag is not Family.F1:
        raise WrongFamily(f"expected F1, got {cls.tag.value}")
    a, b, c, m, k = params.a, params.b, params.c, params.m, params.k
    s, p = cls.s, cls.p
    if k > 0:
        alpha, a_bar, beta, b_bar = 2 * p + 1, -b * b * m, p, b * (2 * m - k)
        trace = ["k>0"]
    elif k < 0:
        alpha, a_bar, beta, b_bar = 2 * s + 1, -a * a * m, s, a * (2 * m + k)
        trace = ["k<0"]
    else:
        alpha, a_bar, beta, b_bar = 2 * s + 1, -(a * a * m + c + b * b * m), s, 2 * m * (a + b)
        trace = ["k=0"]
        if a_bar == 0:
            raise ValueError("a^2 m + c + b^2 m = 0: the x-axis is a line of critical points")
    if b_bar == 0:
        beta, b_bar = None, None
    kind, tree = theorem_tree(alpha, a_bar, beta, b_bar)
    return Classification(kind, alpha=alpha, beta=beta, a_lead=a_bar, b_lead=b_bar, trace=trace + tree)


@dataclass
class LyapunovCertificate:
    c1: Fraction
    c2: Fraction
    c3: Fraction
    positive: bool
    derivative_conditions: list[tuple[str, bool]]
    notes: list[str] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.positive and all(ok for _, ok in self.derivative_conditions)

    def to_json(self) -> dict:
        return {
            "c1": format_rational(self.c1),
            "c2": format_rational(self.c2),
            "c3": format_rational(self.c3),
            "positive": self.positive,
            "derivative_conditions": [{"condition": t, "holds": ok} for t, ok in self.derivative_conditions],
            "holds": self.holds,
            "notes": list(self.notes),
        }


def lyapunov_certificate(params: PZParams, c1, c2, c3) -> LyapunovCertificate:
    """Check ``V = c1 x^(2m) + c2 x^m y + c3 y^2`` for the k = 0 case."""
    if params.k != 0:
        raise WrongCase("the certificate covers k = 0 only")
    if params.m < 1:
        raise WrongCase("the certificate needs m >= 1")
    c1, c2, c3 = as_rational(c1), as_rational(c2), as_rational(c3)
    a, b, c, m = params.a, params.b, params.c, params.m
    conds = [
        ("a^2 m + c + b^2 m = 0", a * a * m + c + b * b * m == 0),
        ("2 m c1 (a + b) + m c2 = 0", 2 * m * c1 * (a + b) + m * c2 == 0),
        ("c2 + 4 c3 (a + b) < 0", c2 + 4 * c3 * (a + b) < 0),
    ]
    return LyapunovCertificate(
        c1, c2, c3,
        positive=c1 > 0 and 4 * c1 * c3 - c2 * c2 >= 0,
        derivative_conditions=conds,
        notes=["the odd-m and even-m condition lists coincide; one shared list is checked"],
    )
