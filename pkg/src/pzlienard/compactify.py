"""Poincare compactification charts U1, U2 and critical points at infinity."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import BiPoly, PlanarPolySystem, RealRoot, Surd, UniPoly, format_rational
from .critical import (
    Classification,
    CriticalPoint,
    NormalFormViolation,
    linearize,
    polynomial_real_roots,
)

__all__ = [
    "Chart",
    "ChartSystem",
    "InfinityPoint",
    "SYMBOL_CORRESPONDENCE",
    "chart_transform",
    "planar_critical_points",
    "infinity_analysis",
]

# notation of the cited classification theorem -> the tree used here
SYMBOL_CORRESPONDENCE = {"f": "F", "B": "f", "G": "Phi", "m": "alpha", "n": "beta"}


class Chart(str, enum.Enum):
    U1 = "U1"
    U2 = "U2"


@dataclass(frozen=True)
class ChartSystem:
    chart: Chart
    P_chart: BiPoly
    Q_chart: BiPoly
    degree_used: int

    def as_planar(self) -> PlanarPolySystem:
        return PlanarPolySystem(self.P_chart, self.Q_chart)

    def to_json(self) -> dict:
        return {
            "chart": self.chart.value,
            "u_dot": self.P_chart.to_str("u", "v"),
            "v_dot": self.Q_chart.to_str("u", "v"),
            "degree_used": self.degree_used,
        }


def _pullback(p: BiPoly, chart: Chart, d: int) -> BiPoly:
    """``v^d * p(map(u, v))``; polynomial because ``d`` bounds the degree."""
    out = {}
    for (i, j), c in p.items():
        if chart is Chart.U1:  # (x, y) = (1/v, u/v)
            key = (j, d - i - j)
        else:  # (x, y) = (u/v, 1/v)
            key = (i, d - i - j)
        out[key] = out.get(key, Fraction(0)) + c
    return BiPoly(out)


def chart_transform(sys: PlanarPolySystem, chart) -> ChartSystem:
    chart = Chart(chart)
    d = max(sys.degree, 1)
    P, Q = _pullback(sys.P, chart, d), _pullback(sys.Q, chart, d)
    u, v = BiPoly.x(), BiPoly.y()
    if chart is Chart.U1:
        return ChartSystem(chart, Q - u * P, -(v * P), d)
    return ChartSystem(chart, P - u * Q, -(v * Q), d)


def planar_critical_points(sys: PlanarPolySystem) -> tuple[list[tuple], list[str]]:
    """Critical points of a system whose P is ``A y + B(x)`` with constant ``A != 0``."""
    A = Fraction(0)
    B: dict[int, Fraction] = {}
    for (i, j), c in sys.P.items():
        if j == 0:
            B[i] = c
        elif j == 1 and i == 0:
            A = c
        else:
            raise NotImplementedError("P must be A*y + B(x) with constant A")
    if A == 0:
        raise NotImplementedError("P must depend on y")
    ycurve = UniPoly.from_terms({i: -c / A for i, c in B.items()})
    g = sys.Q(UniPoly.x(), ycurve)
    if not isinstance(g, UniPoly):
        g = UniPoly((g,))
    if g.is_zero():
        raise ValueError("a whole curve of critical points")
    xs, notes = polynomial_real_roots(g)
    pts = []
    for x in xs:
        y = ycurve(x) if isinstance(x, (Fraction, Surd)) else ycurve.eval_float(float(x))
        if isinstance(y, Surd) and y.is_rational:
            y = y.p
        pts.append((x, y))
    return pts, notes


@dataclass
class InfinityPoint:
    chart: Chart
    point: CriticalPoint
    on_equator: bool
    classification: Classification
    notes: list[str] = field(default_factory=list)

    def __iter__(self):
        return iter((self.chart, self.point, self.classification))

    def to_json(self) -> dict:
        return {
            "chart": self.chart.value,
            "u": _fmt(self.point.x),
            "v": _fmt(self.point.y),
            "u_approx": float(self.point.x),
            "v_approx": float(self.point.y),
            "on_equator": self.on_equator,
            "classification": self.classification.to_json(),
            "notes": list(self.notes),
        }


def _fmt(v) -> str:
    return format_rational(v) if isinstance(v, Fraction) else str(v)


def _div(a, b):
    if isinstance(a, (RealRoot, float)) or isinstance(b, (RealRoot, float)):
        return float(a) / float(b)
    q = a / b
    return q.p if isinstance(q, Surd) and q.is_rational else q


def _classify(cs: ChartSystem, pt: CriticalPoint) -> Classification:
    exact_y = isinstance(pt.y, Fraction)
    if not exact_y:
        return Classification("Unclassified", trace=["irrational v coordinate"])
    cl = linearize(cs.as_planar(), pt)
    if cl.kind == "Degenerate":
        cl.kind = "Unclassified"
        cl.trace.append(NormalFormViolation.__name__)
    return cl


def infinity_analysis(sys: PlanarPolySystem) -> list[InfinityPoint]:
    """Chart critical points on the equator ``v = 0`` plus flagged images of
    finite critical points."""
    out: list[InfinityPoint] = []
    u1 = chart_transform(sys, Chart.U1)
    u2 = chart_transform(sys, Chart.U2)
    note = "symbols " + ", ".join(f"{k}->{v}" for k, v in SYMBOL_CORRESPONDENCE.items())

    eq = u1.P_chart.restrict_y(0)
    if eq.is_zero():
        out_notes = ["u' vanishes identically on the equator (degenerate infinity)"]
        out.append(InfinityPoint(Chart.U1, CriticalPoint(Fraction(0)), True,
                                 Classification("Unclassified", trace=["equator-line"]), out_notes))
    else:
        roots, rnotes = polynomial_real_roots(eq)
        for u in roots:
            pt = CriticalPoint(u, Fraction(0))
            out.append(InfinityPoint(Chart.U1, pt, True, _classify(u1, pt), rnotes + [note]))

    if u2.P_chart.constant_term() == 0 and u2.Q_chart.constant_term() == 0:
        pt = CriticalPoint(Fraction(0), Fraction(0), origin_flag=True)
        out.append(InfinityPoint(Chart.U2, pt, True, _classify(u2, pt), [note]))

    try:
        finite, _ = planar_critical_points(sys)
    except (NotImplementedError, ValueError) as exc:
        finite = []
        out_note = f"finite points not mapped: {exc}"
        for ip in out:
            ip.notes.append(out_note)
    for x, y in finite:
        if float(x) != 0:
            pt = CriticalPoint(_div(y, x), _div(1, x))
            out.append(InfinityPoint(Chart.U1, pt, False, _classify(u1, pt), ["not at infinity"]))
        if float(y) != 0:
            pt = CriticalPoint(_div(x, y), _div(1, y))
            out.append(InfinityPoint(Chart.U2, pt, False, _classify(u2, pt), ["not at infinity"]))
    return out
