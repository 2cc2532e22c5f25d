"""The Polyanin-Zaitsev parameter set, its planar field and the F1-F7 families.

The field is

    x' = y
    y' = (a(2m+k) x^(m+k-1) + b(2m-k) x^(m-k-1)) y
         - (a^2 m x^(4k) + c x^(2k) + b^2 m) x^(2m-2k-1)

with exact rational parameters.  Whether it is polynomial depends on the
zero pattern of (a, b, c) and on integrality of a few exponent combinations;
:func:`classify_family` decides which of the seven polynomial families the
parameters land in.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import BiPoly, PlanarPolySystem, as_rational, format_rational

__all__ = [
    "PZParams",
    "Monomial",
    "GeneralizedSystem",
    "Family",
    "FamilyClass",
    "NotPolynomial",
    "build_field",
    "classify_family",
    "instantiate_family",
]


class NotPolynomial(ValueError):
    """The requested operation needs a polynomial family."""


@dataclass(frozen=True)
class PZParams:
    a: Fraction
    b: Fraction
    c: Fraction
    m: Fraction
    k: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c", "m", "k"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))

    @classmethod
    def of(cls, a, b, c, m, k) -> "PZParams":
        return cls(*(as_rational(v) for v in (a, b, c, m, k)))

    @property
    def alpha(self) -> Fraction:
        return self.a * (2 * self.m + self.k)

    @property
    def beta(self) -> Fraction:
        return self.b * (2 * self.m - self.k)

    @property
    def c0(self) -> Fraction:
        return self.c - 2 * self.a * self.b * self.m

    def to_json(self) -> dict:
        return {n: format_rational(getattr(self, n)) for n in ("a", "b", "c", "m", "k")}


@dataclass(frozen=True, order=True)
class Monomial:
    """``coef * x^x_exp * y^y_deg`` with a possibly fractional x exponent."""

    x_exp: Fraction
    y_deg: int
    coef: Fraction = field(compare=False)


class GeneralizedSystem:
    """``x' = y``, ``y' = sum of monomials`` with rational x exponents.

    Monomials are merged on equal ``(x_exp, y_deg)`` and zero coefficients are
    dropped, so two systems are equal iff their canonical lists agree.
    """

    __slots__ = ("monomials",)

    def __init__(self, monomials=()):
        acc: dict[tuple[Fraction, int], Fraction] = {}
        for mono in monomials:
            if isinstance(mono, Monomial):
                coef, e, j = mono.coef, mono.x_exp, mono.y_deg
            else:
                coef, e, j = mono
            if j not in (0, 1):
                raise ValueError("the family is linear in y")
            key = (as_rational(e), int(j))
            acc[key] = acc.get(key, Fraction(0)) + as_rational(coef)
        canon = tuple(
            Monomial(e, j, c) for (e, j), c in sorted(acc.items()) if c != 0
        )
        object.__setattr__(self, "monomials", canon)

    def __setattr__(self, name, value):
        raise AttributeError("GeneralizedSystem is immutable")

    def canonical(self) -> tuple[tuple[Fraction, int, Fraction], ...]:
        return tuple((m.x_exp, m.y_deg, m.coef) for m in self.monomials)

    def __eq__(self, other):
        if not isinstance(other, GeneralizedSystem):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def is_polynomial(self) -> bool:
        return all(m.x_exp.denominator == 1 and m.x_exp >= 0 for m in self.monomials)

    def pure_x_terms(self) -> list[Monomial]:
        return [m for m in self.monomials if m.y_deg == 0]

    def y_terms(self) -> list[Monomial]:
        return [m for m in self.monomials if m.y_deg == 1]

    def to_planar(self) -> PlanarPolySystem:
        if not self.is_polynomial():
            raise NotPolynomial(f"non-polynomial exponents in {self}")
        Q = BiPoly({(int(m.x_exp), m.y_deg): m.coef for m in self.monomials})
        return PlanarPolySystem(BiPoly.y(), Q)

    def evaluate_q(self, x: float, y: float) -> float:
        return sum(float(m.coef) * x ** float(m.x_exp) * y**m.y_deg for m in self.monomials)

    def __repr__(self):
        return f"GeneralizedSystem({list(self.canonical())!r})"

    def __str__(self):
        if not self.monomials:
            return "y' = 0"
        parts = []
        for m in sorted(self.monomials, key=lambda t: (-t.y_deg, -t.x_exp)):
            xs = "" if m.x_exp == 0 else ("x" if m.x_exp == 1 else f"x^({format_rational(m.x_exp)})")
            mono = "*".join(p for p in (xs, "y" if m.y_deg else "") if p)
            mag = abs(m.coef)
            body = format_rational(mag) if not mono else (mono if mag == 1 else f"{format_rational(mag)}*{mono}")
            sign = "-" if m.coef < 0 else "+"
            parts.append((sign if parts or m.coef < 0 else "") + (" " if parts else "") + body)
        return "y' = " + " ".join(parts)


def build_field(params: PZParams) -> GeneralizedSystem:
    a, b, c, m, k = params.a, params.b, params.c, params.m, params.k
    return GeneralizedSystem([
        (a * (2 * m + k), m + k - 1, 1),
        (b * (2 * m - k), m - k - 1, 1),
        (-a * a * m, 2 * m + 2 * k - 1, 0),
        (-c, 2 * m - 1, 0),
        (-b * b * m, 2 * m - 2 * k - 1, 0),
    ])


class Family(str, enum.Enum):
    F1 = "F1"
    F2 = "F2"
    F3 = "F3"
    F4 = "F4"
    F5 = "F5"
    F6 = "F6"
    F7 = "F7"
    NON_POLYNOMIAL = "NonPolynomial"


@dataclass(frozen=True)
class FamilyClass:
    tag: Family
    params: PZParams
    s: int | None = None
    p: int | None = None
    r: int | None = None
    degenerate: bool = False

    def to_json(self) -> dict:
        return {
            "tag": self.tag.value,
            "s": self.s,
            "p": self.p,
            "r": self.r,
            "degenerate": self.degenerate,
            "params": self.params.to_json(),
        }


def _nonneg_int(q: Fraction) -> int | None:
    if q.denominator == 1 and q >= 0:
        return int(q)
    return None


def classify_family(params: PZParams) -> FamilyClass:
    """Match the (a, b, c) zero pattern to its family and check integrality."""
    a, b, c, m, k = params.a, params.b, params.c, params.m, params.k
    s = _nonneg_int(m + k - 1)
    p = _nonneg_int(m - k - 1)
    r = _nonneg_int(2 * m - 1)
    nonpoly = FamilyClass(Family.NON_POLYNOMIAL, params)

    pattern = (a != 0, b != 0, c != 0)
    if pattern == (True, True, True):
        if s is None or p is None:
            return nonpoly
        return FamilyClass(Family.F1, params, s=s, p=p, r=s + p + 1)
    if pattern == (False, True, True):
        if p is None or r is None:
            return nonpoly
        return FamilyClass(Family.F2, params, p=p, r=r)
    if pattern == (True, True, False):
        if s is None or p is None:
            return nonpoly
        return FamilyClass(Family.F3, params, s=s, p=p)
    if pattern == (False, False, True):
        if r is None:
            return nonpoly
        return FamilyClass(Family.F4, params, r=r)
    if pattern == (True, False, True):
        if s is None or r is None:
            return nonpoly
        return FamilyClass(Family.F5, params, s=s, r=r)
    if pattern == (False, True, False):
        if p is None:
            return nonpoly
        return FamilyClass(Family.F6, params, p=p)
    if pattern == (True, False, False):
        if s is None:
            return nonpoly
        return FamilyClass(Family.F7, params, s=s)
    # a = b = c = 0: y' = 0 whatever m, k are
    return FamilyClass(Family.F4, params, degenerate=True)


def instantiate_family(cls: FamilyClass) -> GeneralizedSystem:
    """Build the system from the family's own display and integers.

    Pure-x coefficients use ``a^2``/``b^2`` as produced by the general field;
    the y-coefficients are rewritten in terms of s, p, r.
    """
    a, b, c = cls.params.a, cls.params.b, cls.params.c
    s, p, r = cls.s, cls.p, cls.r
    half = Fraction(1, 2)
    tag = cls.tag
    if tag is Family.NON_POLYNOMIAL:
        raise NotPolynomial("no polynomial family for these parameters")
    if tag in (Family.F1, Family.F3):
        mono = [
            (a * (3 * s + p + 4) * half, s, 1),
            (b * (s + 3 * p + 4) * half, p, 1),
            (-a * a * (s + p + 2) * half, 2 * s + 1, 0),
            (-b * b * (s + p + 2) * half, 2 * p + 1, 0),
        ]
        if tag is Family.F1:
            mono.append((-c, s + p + 1, 0))
        return GeneralizedSystem(mono)
    if tag is Family.F2:
        return GeneralizedSystem([
            (b * (r + 2 * p + 3) * half, p, 1),
            (-c, r, 0),
            (-b * b * (r + 1) * half, 2 * p + 1, 0),
        ])
    if tag is Family.F4:
        if cls.degenerate:
            return GeneralizedSystem()
        exp = r if r is not None else s + p + 1
        return GeneralizedSystem([(-c, exp, 0)])
    if tag is Family.F5:
        return GeneralizedSystem([
            (a * (r + 2 * s + 3) * half, s, 1),
            (-a * a * (r + 1) * half, 2 * s + 1, 0),
            (-c, r, 0),
        ])
    m = cls.params.m
    if tag is Family.F6:
        return GeneralizedSystem([
            (b * (m + p + 1), p, 1),
            (-b * b * m, 2 * p + 1, 0),
        ])
    if tag is Family.F7:
        return GeneralizedSystem([
            (a * (m + s + 1), s, 1),
            (-a * a * m, 2 * s + 1, 0),
        ])
    raise AssertionError(tag)
