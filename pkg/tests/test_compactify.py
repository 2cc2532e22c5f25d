import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pzlienard.algebra import BiPoly, PlanarPolySystem
from pzlienard.compactify import Chart, chart_transform, infinity_analysis, planar_critical_points
from pzlienard.pzfield import PZParams, classify_family, instantiate_family

u, v = BiPoly.x(), BiPoly.y()
x, y = BiPoly.x(), BiPoly.y()
VALUES = [1, -1, 2, -2, F(1, 2), F(-1, 2)]


def worked(b, c):
    return instantiate_family(classify_family(PZParams.of(0, b, c, F(3, 2), F(1, 2)))).to_planar()


@pytest.mark.parametrize("b", VALUES)
@pytest.mark.parametrize("c", VALUES)
def test_worked_example_charts(b, c):
    b, c = F(b), F(c)
    sys = worked(b, c)
    u1 = chart_transform(sys, "U1")
    assert u1.P_chart == -(u * u * v) + F(5, 2) * b * u * v - F(3, 2) * b * b * v - c
    assert u1.Q_chart == -(u * v * v)
    u2 = chart_transform(sys, Chart.U2)
    assert u2.P_chart == v - F(5, 2) * b * u * v + F(3, 2) * b * b * u * u * v + c * u**3
    assert u2.Q_chart == -F(5, 2) * b * v * v + F(3, 2) * b * b * u * v * v + c * u * u * v
    assert u1.degree_used == u2.degree_used == 2


def test_harmonic_oscillator_u1():
    u1 = chart_transform(PlanarPolySystem(y, -x), "U1")
    assert u1.P_chart == -(u * u) - 1
    assert u1.Q_chart == -(u * v)


def test_harmonic_oscillator_no_equator_points():
    pts = [ip for ip in infinity_analysis(PlanarPolySystem(y, -x)) if ip.chart is Chart.U1 and ip.on_equator]
    assert pts == []


def test_worked_example_infinity():
    result = infinity_analysis(worked(1, 1))
    on_eq = [ip for ip in result if ip.on_equator]
    assert [(ip.chart, ip.point.x, ip.point.y) for ip in on_eq] == [(Chart.U2, 0, 0)]
    assert on_eq[0].classification.kind == "UnstableNode"
    off = [ip for ip in result if not ip.on_equator]
    assert [(ip.chart, ip.point.x, ip.point.y) for ip in off] == [(Chart.U1, 0, F(-2, 3))]
    assert off[0].notes == ["not at infinity"]


@pytest.mark.parametrize("b, c", [(1, 1), (2, -1), (-1, 3), (F(1, 2), F(-1, 2))])
def test_off_equator_image(b, c):
    b, c = F(b), F(c)
    off = [ip for ip in infinity_analysis(worked(b, c)) if not ip.on_equator]
    assert [(ip.point.x, ip.point.y) for ip in off] == [(0, -2 * c / (3 * b * b))]


@pytest.mark.parametrize("c, kind", [(1, "UnstableNode"), (-1, "StableNode"), (2, "UnstableNode")])
def test_u2_origin_stability(c, kind):
    u2 = [ip for ip in infinity_analysis(worked(1, c)) if ip.chart is Chart.U2 and ip.on_equator]
    assert [ip.classification.kind for ip in u2] == [kind]


def test_symbol_correspondence_noted():
    ip = infinity_analysis(worked(1, 1))[0]
    assert any("symbols" in n for n in ip.notes)
    js = ip.to_json()
    assert js["chart"] == "U2" and js["on_equator"] is True


def test_nilpotent_u2_origin():
    # x' = y, y' = x^2: U1 has u' = 1 on the equator; U2 is u' = v - u^3, v' = -u^2 v
    res = infinity_analysis(PlanarPolySystem(y, x * x))
    assert [(ip.chart, ip.on_equator) for ip in res] == [(Chart.U2, True)]
    cl = res[0].classification
    assert (cl.alpha, cl.a_lead, cl.beta, cl.b_lead) == (5, -1, 2, -4)
    assert cl.kind == "StableNode"


def test_planar_critical_points():
    pts, _ = planar_critical_points(worked(1, 1))
    assert sorted(pts) == [(F(-3, 2), 0), (0, 0)]
    with pytest.raises(NotImplementedError):
        planar_critical_points(PlanarPolySystem(x * y, x))


def _direction(vec):
    n = math.hypot(*vec)
    return (vec[0] / n, vec[1] / n)


terms = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)).filter(lambda ij: sum(ij) <= 3),
    st.fractions(min_value=-3, max_value=3, max_denominator=3).filter(lambda q: q != 0),
    min_size=1,
    max_size=6,
)


@given(terms, terms, st.integers(0, 2**31))
def test_chart_consistency(pt, qt, seed):
    sys = PlanarPolySystem(BiPoly(pt), BiPoly(qt))
    rng = random.Random(seed)
    for chart in (Chart.U1, Chart.U2):
        cs = chart_transform(sys, chart)
        d = cs.degree_used
        P, Q = sys.P.compile(), sys.Q.compile()
        Pc, Qc = cs.P_chart.compile(), cs.Q_chart.compile()
        for _ in range(20):
            xx, yy = rng.uniform(-3, 3), rng.uniform(-3, 3)
            base = xx if chart is Chart.U1 else yy
            if abs(base) < 0.1:
                continue
            p, q = P(xx, yy), Q(xx, yy)
            if chart is Chart.U1:
                uu, vv = yy / xx, 1 / xx
                push = ((q * xx - yy * p) / xx**2, -p / xx**2)
            else:
                uu, vv = xx / yy, 1 / yy
                push = ((p * yy - xx * q) / yy**2, -q / yy**2)
            chart_vec = (Pc(uu, vv), Qc(uu, vv))
            factor = vv ** (d - 1)
            expect = (push[0] * factor, push[1] * factor)
            scale = max(math.hypot(*expect), math.hypot(*chart_vec))
            if scale < 1e-12:
                continue
            err = math.hypot(chart_vec[0] - expect[0], chart_vec[1] - expect[1]) / scale
            assert err <= 1e-9
            if factor > 0 and math.hypot(*push) > 1e-9:
                a, b = _direction(chart_vec), _direction(push)
                assert abs(math.atan2(a[0] * b[1] - a[1] * b[0], a[0] * b[0] + a[1] * b[1])) <= 1e-9
