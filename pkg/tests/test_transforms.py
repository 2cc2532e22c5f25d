from fractions import Fraction as F

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import X, apply_gauge, gauge_recompose, linear_odes, ratfuns, same_rational_function, to_sympy
from pzlienard.algebra import LinearODE, RationalFunction, Surd, UniPoly
from pzlienard.pzfield import PZParams
from pzlienard.transforms import (
    DegenerateLeading,
    NonzeroL0,
    PipelineError,
    SubstitutionUndefined,
    ZeroC0,
    ZeroM,
    ZeroQ0,
    associated_legendre_equation,
    complete_square,
    full_pipeline,
    gegenbauer_indices,
    gegenbauer_to_hypergeometric,
    hypergeometric_to_legendre,
    legendre_equation,
    legendre_parameters,
    legendre_to_hypergeometric,
    lienard_to_riccati,
    remove_subleading,
    riccati_to_linear,
    to_gegenbauer,
)

rat = st.fractions(min_value=-4, max_value=4, max_denominator=6)
nonzero = rat.filter(lambda q: q != 0)
T = UniPoly.x()


def ode(*coeffs, var="x"):
    return LinearODE(list(coeffs), var=var)


# -- Riccati and the linear equation -----------------------------------------------


def test_riccati_generic():
    p = PZParams.of(2, 3, 5, F(1, 2), F(3, 2))
    r = lienard_to_riccati(p)
    assert r.lhs_coeff == UniPoly((2 * F(1, 2) * 2 * 3 - 5, 0, -F(1, 2)))
    assert (r.rhs_c0, r.rhs_c1, r.rhs_c2) == (F(9, 2), F(3, 2), 3)


def test_riccati_worked_example_sign():
    r = lienard_to_riccati(PZParams.of(0, 7, 2, F(3, 2), F(1, 2)))
    assert r.lhs_coeff == UniPoly((-2, 0, -F(3, 2)))
    assert (r.rhs_c0, r.rhs_c1, r.rhs_c2) == (F(7, 2), F(1, 2), 0)


def test_riccati_k_zero():
    r = lienard_to_riccati(PZParams.of(1, 2, 3, 1, 0))
    assert (r.rhs_c0, r.rhs_c1, r.rhs_c2) == (0, 0, 0)
    assert r.lhs_coeff == UniPoly((1, 0, -1))


def test_linear_example():
    lin = riccati_to_linear(PZParams.of(1, 1, 3, 1, 1))
    P = UniPoly((1, 0, 1))
    assert lin == ode(P * P, 3 * T * P, 1, var="t")


def test_linear_b_zero():
    lin = riccati_to_linear(PZParams.of(2, 0, 3, 1, 1))
    P = UniPoly((3, 0, 1))
    assert lin == ode(P * P, 3 * T * P, 0, var="t")


@pytest.mark.parametrize("a, k", [(0, 1), (1, 0)])
def test_linear_needs_ak(a, k):
    with pytest.raises(SubstitutionUndefined):
        riccati_to_linear(PZParams.of(a, 1, 1, 1, k))


@settings(max_examples=20)
@given(nonzero, rat, rat, nonzero, nonzero)
def test_linear_matches_substitution(a, b, c, m, k):
    # z = P/(a k) w'/w in the Riccati equation, times -a k w, is the linear operator on w
    p = PZParams(a, b, c, m, k)
    ric = lienard_to_riccati(p)
    lin = riccati_to_linear(p)
    t = sp.Symbol("t")
    w = sp.Function("w")(t)
    P = to_sympy(p.m) * t**2 + to_sympy(p.c0)
    z = P / to_sympy(a * k) * sp.diff(w, t) / w
    lhs = to_sympy(ric.lhs_coeff, t) * sp.diff(z, t)
    rhs = to_sympy(ric.rhs_c0) + to_sympy(ric.rhs_c1) * t * z + to_sympy(ric.rhs_c2) * z**2
    got = (lhs - rhs) * (-to_sympy(a * k)) * w
    want = sum(to_sympy(lin.coefficient_of(i), t) * sp.diff(w, t, i) for i in range(3))
    assert sp.cancel(sp.together(got - want)) == 0


# -- completing the square ---------------------------------------------------------


def test_complete_square_example_family():
    m, k, a, b, c0 = F(3, 2), F(1, 2), 2, 1, F(5, 3)
    ns = complete_square(m, 0, c0, 2 * m + k, 0, a * b * k * k)
    assert (ns.q0, ns.l1, ns.l0, ns.lam, ns.shift) == (c0 / m, (2 * m + k) / m, 0, a * b * k * k / m**2, 0)


def test_complete_square_centered():
    ns = complete_square(1, 0, 7, 1, 0, 1)
    assert ns.q0 == 7 and ns.shift == 0


def test_complete_square_plug_in():
    ns = complete_square(2, 4, 6, 2, 3, 8)
    assert (ns.q0, ns.l1, ns.l0, ns.lam, ns.shift) == (2, 1, F(1, 2), 2, 1)


def test_complete_square_degenerate():
    with pytest.raises(DegenerateLeading):
        complete_square(0, 1, 1, 1, 1, 1)


@given(nonzero, rat, rat, rat, rat, rat)
def test_complete_square_consistency(a2, a1, a0, b1, b0, C):
    ns = complete_square(a2, a1, a0, b1, b0, C)
    R = UniPoly((a0, a1, a2))
    S = UniPoly((b0, b1))
    tau = UniPoly((-ns.shift, 1))  # x as a function of tau
    assert ns.Q() == R.compose(tau) / a2
    assert ns.L() == S.compose(tau) / a2
    assert ns.lam == C / (a2 * a2)


# -- gauge -------------------------------------------------------------------------


def test_gauge_second_order_closed_form():
    a1 = RationalFunction(UniPoly((2,)), UniPoly((0, 1)))
    out, gauge = remove_subleading(ode(1, a1, 1))
    assert out.coefficient_of(1).is_zero()
    assert out.coefficient_of(0) == RationalFunction(1)
    assert gauge.log_derivative == RationalFunction(UniPoly((-1,)), UniPoly((0, 1)))


def test_gauge_identity():
    src = ode(1, 0, UniPoly((1, 2)), UniPoly((0, 0, 3)))
    out, gauge = remove_subleading(src)
    assert out == src
    assert gauge.log_derivative.is_zero()


def test_gauge_normalizes_leading():
    out, _ = remove_subleading(ode(2, UniPoly((0, 4)), 6))
    # a1 = 2x, a0 = 3: b0 = 3 - 1 - x^2
    assert out == ode(1, 0, UniPoly((2, 0, -1)))


def test_gauge_keep():
    out, gauge = remove_subleading(ode(1, 1, 1, 1), keep=5)
    assert out.coefficient_of(2) == RationalFunction(5)
    assert gauge.log_derivative == RationalFunction(F(4, 3))


@settings(max_examples=25)
@given(linear_odes(), st.sampled_from([0, 0, 1, F(-1, 2)]))
def test_gauge_recomposition(src, keep):
    out, _ = remove_subleading(src, keep)
    expected = gauge_recompose(src, keep)
    for i, e in enumerate(expected):
        assert same_rational_function(out.coefficient_of(i), e)


@given(ratfuns(), ratfuns())
def test_gauge_second_order_formula(a1, a0):
    out, _ = remove_subleading(ode(1, a1, a0))
    assert out.coefficient_of(0) == a0 - a1.derivative() / 2 - a1 * a1 / 4


# -- Gegenbauer / hypergeometric / Legendre ----------------------------------------


def test_gegenbauer_plug_in():
    ns = complete_square(1, 0, 1, 1, 0, 2)
    assert to_gegenbauer(ns) == ode(UniPoly((1, 0, -1)), -2 * T, 2, var="xi")


def test_gegenbauer_middle_cancels():
    ns = complete_square(1, 0, 4, 3, 0, 1)
    assert to_gegenbauer(ns).coefficient_of(1).is_zero()


def test_gegenbauer_errors():
    with pytest.raises(NonzeroL0):
        to_gegenbauer(complete_square(1, 0, 1, 1, 1, 1))
    with pytest.raises(ZeroQ0):
        to_gegenbauer(complete_square(1, 0, 0, 1, 0, 1))


@given(nonzero, rat, rat, st.fractions(min_value=F(1, 4), max_value=4, max_denominator=6), rat, rat, rat)
def test_gegenbauer_change_of_variable(q0, l1, lam, r, w0, w1, w2):
    # u(xi) = w(tau), xi = tau/S with S = sqrt(tau^2 + q0); pick tau with S rational
    S = (q0 / r + r) / 2
    if S <= 0:
        return
    tau = (q0 / r - r) / 2
    Q = S * S
    geg = to_gegenbauer(complete_square(1, 0, q0, l1, 0, lam))
    xi = tau / S
    dxi = q0 / S**3
    u1 = w1 / dxi
    u2 = (w2 * S**3 + 3 * tau * S * w1) / q0 / dxi
    target = sum(geg.coefficient_of(i)(xi) * d for i, d in enumerate((w0, u1, u2)))
    source = Q * Q * w2 + l1 * tau * Q * w1 + lam * w0
    assert q0 * target == source


@pytest.mark.parametrize(
    "mu, nu, abc",
    [(0, 0, (0, 1, 1)), (F(1, 2), F(3, 2), (-1, 3, F(3, 2))), (2, -1, (3, 2, 3))],
)
def test_hypergeometric_params(mu, nu, abc):
    h = gegenbauer_to_hypergeometric(mu, nu)
    assert (h.a, h.b, h.c) == abc


@given(rat, rat)
def test_hypergeometric_identity(mu, nu):
    h = gegenbauer_to_hypergeometric(mu, nu)
    assert h.a + h.b + 1 == 2 * h.c


def test_hypergeometric_identity_with_surd_nu():
    h = gegenbauer_to_hypergeometric(F(1, 3), Surd(F(-1, 2), F(1, 2), 5))
    assert h.a + h.b + 1 == 2 * h.c


def test_legendre_to_hypergeometric_examples():
    assert legendre_to_hypergeometric(0, 1) == ode(UniPoly((0, -1, 1)), UniPoly((-1, 2)), -2, var="xi")
    assert legendre_to_hypergeometric(F(2, 3), F(2, 3)).coefficient_of(0).is_zero()


@settings(max_examples=20)
@given(rat, rat)
def test_legendre_to_hypergeometric_substitution(mu, nu):
    # y = (x^2 - 1)^(mu/2) w, then x = 1 - 2 xi, applied to the associated Legendre operator
    x = X
    leg = associated_legendre_equation(mu, nu)
    pulled = apply_gauge(
        [to_sympy(leg.coefficient_of(i)) for i in range(3)], to_sympy(mu) * x / (x**2 - 1)
    )
    hyp = legendre_to_hypergeometric(mu, nu)
    xi = (1 - x) / 2
    # d/dxi = -2 d/dx, and the hypergeometric operator is minus the pulled-back one
    scale = (1, -2, 4)
    for i in range(3):
        assert sp.cancel(to_sympy(hyp.coefficient_of(i), xi) * scale[i] + pulled[i]) == 0


def test_hypergeometric_to_legendre_is_inverse_pairing():
    assert hypergeometric_to_legendre(1, 2) == legendre_equation(1, 2)
    assert legendre_equation(0, 1) == ode(UniPoly((1, 0, -2, 0, 1)), UniPoly((0, -2, 0, 2)), UniPoly((2, 0, -2)))


@pytest.mark.parametrize(
    "params, mu, nus",
    [
        (PZParams.of(0, 1, 1, 1, 1), -1, {0, -1}),
        (PZParams.of(1, 1, 5, 1, 0), F(-1, 2), {F(-1, 2)}),
    ],
)
def test_legendre_parameters_examples(params, mu, nus):
    leg = legendre_parameters(params)
    assert leg.mu == mu
    assert {v.rational() for v in leg.nu_pair} == nus


@given(rat, rat, rat, nonzero, rat)
def test_nu_roots_exact(a, b, c, m, k):
    p = PZParams(a, b, c, m, k)
    if p.c0 == 0:
        return
    leg = legendre_parameters(p)
    const = (m * m - k * k) / (4 * m * m) - a * b * k * k / (m * p.c0)
    for nu in leg.nu_pair:
        assert nu * nu + nu + const == 0


def test_legendre_parameter_errors():
    with pytest.raises(ZeroM):
        legendre_parameters(PZParams.of(1, 1, 1, 0, 1))
    with pytest.raises(ZeroC0):
        legendre_parameters(PZParams.of(1, 1, 2, 1, 1))


def test_gegenbauer_indices_roundtrip():
    mu, (nu1, nu2) = gegenbauer_indices(ode(UniPoly((1, 0, -1)), -2 * T, 2))
    assert mu == 0 and {nu1.rational(), nu2.rational()} == {1, -2}


# -- the whole chain -----------------------------------------------------------------


def test_pipeline_example():
    rep = full_pipeline(PZParams.of(1, 1, 3, 1, 1))
    names = [s.stage for s in rep.stages]
    assert names == [
        "lienard_to_riccati",
        "riccati_to_linear",
        "complete_square",
        "to_gegenbauer",
        "gegenbauer_to_hypergeometric",
        "legendre_parameters",
    ]
    P = UniPoly((1, 0, 1))
    assert rep.stage("riccati_to_linear").equation == ode(P * P, 3 * T * P, 1, var="t")
    data = rep.stage("complete_square").data
    assert (data["q0"], data["l1"], data["lambda"]) == (1, 3, 1)
    assert rep.stage("to_gegenbauer").equation == ode(UniPoly((1, 0, -1)), 0, 1, var="xi")
    assert any("agree" in n for n in rep.stage("legendre_parameters").notes)


def test_pipeline_records_sign_note():
    rep = full_pipeline(PZParams.of(1, 1, 3, 1, 1))
    assert rep.stage("lienard_to_riccati").notes


def test_pipeline_substitution_error():
    with pytest.raises(PipelineError) as info:
        full_pipeline(PZParams.of(0, 1, 1, 1, 1))
    assert info.value.stage == "riccati_to_linear"
    assert isinstance(info.value.cause, SubstitutionUndefined)


def test_pipeline_zero_c0():
    # q0 = c0/m, so c0 = 0 is caught where sqrt(tau^2 + q0) first matters
    with pytest.raises(PipelineError) as info:
        full_pipeline(PZParams.of(1, 1, 2, 1, 1))
    assert info.value.stage == "to_gegenbauer"
    assert isinstance(info.value.cause, ZeroQ0)


def test_pipeline_json_shape():
    js = full_pipeline(PZParams.of(1, 2, 3, 1, 1)).to_json()
    assert js["params"] == {"a": "1", "b": "2", "c": "3", "m": "1", "k": "1"}
    for entry in js["stages"]:
        assert set(entry) == {"stage", "equation", "change_of_variables", "data", "notes"}
