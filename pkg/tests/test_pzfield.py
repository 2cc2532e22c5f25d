import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pzlienard.algebra import BiPoly
from pzlienard.pzfield import (
    Family,
    GeneralizedSystem,
    NotPolynomial,
    PZParams,
    build_field,
    classify_family,
    instantiate_family,
)

half = F(1, 2)


def test_worked_example_field():
    b, c = F(2), F(-3)
    p = PZParams.of(0, b, c, F(3, 2), half)
    expected = GeneralizedSystem([(F(5, 2) * b, 0, 1), (-F(3, 2) * b * b, 1, 0), (-c, 2, 0)])
    assert build_field(p) == expected
    planar = build_field(p).to_planar()
    x, y = BiPoly.x(), BiPoly.y()
    assert planar.P == y
    assert planar.Q == F(5, 2) * b * y - F(3, 2) * b * b * x - c * x * x


@pytest.mark.parametrize(
    "params, tag, ints",
    [
        ((1, 1, 1, 2, 1), Family.F1, dict(s=2, p=0, r=3)),
        ((0, 1, 1, F(3, 2), half), Family.F2, dict(p=0, r=2)),
        ((1, 2, 0, 2, 1), Family.F3, dict(s=2, p=0)),
        ((0, 0, 5, 2, 7), Family.F4, dict(r=3)),
        ((1, 0, 1, F(3, 2), half), Family.F5, dict(s=1, r=2)),
        ((0, 3, 0, 3, 1), Family.F6, dict(p=1)),
        ((2, 0, 0, 1, 1), Family.F7, dict(s=1)),
        ((1, 1, -3, 1, 1), Family.NON_POLYNOMIAL, {}),
        ((1, 1, 1, F(1, 3), 1), Family.NON_POLYNOMIAL, {}),
    ],
)
def test_classify(params, tag, ints):
    cls = classify_family(PZParams.of(*params))
    assert cls.tag is tag
    for name, value in ints.items():
        assert getattr(cls, name) == value


def test_all_zero_is_degenerate_f4():
    cls = classify_family(PZParams.of(0, 0, 0, F(1, 3), 2))
    assert cls.tag is Family.F4 and cls.degenerate
    assert instantiate_family(cls) == build_field(cls.params) == GeneralizedSystem()


def test_nonpolynomial_has_no_instance():
    cls = classify_family(PZParams.of(1, 1, -3, 1, 1))
    with pytest.raises(NotPolynomial):
        instantiate_family(cls)
    with pytest.raises(NotPolynomial):
        build_field(cls.params).to_planar()


GRID_VALUES = (F(-2), F(-1, 2), F(0), F(1), F(3, 2))
MK = [(m, k) for m in (F(1, 2), F(1), F(3, 2), F(2), F(5, 2), F(3)) for k in (F(-1), F(-1, 2), F(0), F(1, 2), F(1), F(2))]


def parameter_grid():
    for a, b, c in itertools.product(GRID_VALUES, repeat=3):
        for m, k in MK:
            yield PZParams(a, b, c, m, k)


def test_round_trip_on_grid():
    seen = set()
    for p in parameter_grid():
        cls = classify_family(p)
        if cls.tag is Family.NON_POLYNOMIAL:
            assert not build_field(p).is_polynomial()
            continue
        seen.add(cls.tag)
        assert instantiate_family(cls) == build_field(p), p
    assert seen == set(Family) - {Family.NON_POLYNOMIAL}


@given(
    st.fractions(-3, 3, max_denominator=4),
    st.fractions(-3, 3, max_denominator=4),
    st.fractions(-3, 3, max_denominator=4),
    st.integers(-2, 8).map(lambda n: F(n, 2)),
    st.integers(-6, 6).map(lambda n: F(n, 2)),
)
def test_family_properties(a, b, c, m, k):
    p = PZParams(a, b, c, m, k)
    cls = classify_family(p)
    if Family.F1 is cls.tag:
        assert a and b and c
    if cls.tag is Family.F4:
        assert a == 0 and b == 0
    if cls.tag is not Family.NON_POLYNOMIAL:
        system = instantiate_family(cls)
        assert system.is_polynomial()
        assert all(mono.x_exp >= 0 and mono.x_exp.denominator == 1 for mono in system.monomials)
        assert build_field(p).is_polynomial()


def test_merging_example():
    # k = 0 folds both y-terms onto x^0 and all pure terms onto x^1
    assert build_field(PZParams.of(1, 1, 1, 1, 0)) == GeneralizedSystem([(4, 0, 1), (-3, 1, 0)])


def test_small_instances():
    f4 = classify_family(PZParams.of(0, 0, 1, 1, 5))
    assert instantiate_family(f4) == GeneralizedSystem([(-1, 1, 0)])
    f7 = classify_family(PZParams.of(1, 0, 0, 1, 0))
    assert f7.tag is Family.F7 and f7.s == 0
    assert instantiate_family(f7) == GeneralizedSystem([(2, 0, 1), (-1, 1, 0)])
    f2 = classify_family(PZParams.of(0, 1, 1, F(3, 2), half))
    assert instantiate_family(f2) == GeneralizedSystem([(F(5, 2), 0, 1), (-1, 2, 0), (-F(3, 2), 1, 0)])


def test_generalized_system_merges_and_prints():
    s = GeneralizedSystem([(1, 2, 0), (2, 2, 0), (-3, 2, 0), (4, 1, 1)])
    assert s.canonical() == ((1, 1, 4),)
    assert str(s) == "y' = 4*x*y"
    with pytest.raises(ValueError):
        GeneralizedSystem([(1, 0, 2)])


def test_params_json_and_derived():
    p = PZParams.of("1/2", 3, -1, "3/2", "1/2")
    assert p.to_json() == {"a": "1/2", "b": "3", "c": "-1", "m": "3/2", "k": "1/2"}
    assert p.alpha == F(1, 2) * F(7, 2)
    assert p.beta == 3 * F(5, 2)
    assert p.c0 == -1 - 2 * F(1, 2) * 3 * F(3, 2)
