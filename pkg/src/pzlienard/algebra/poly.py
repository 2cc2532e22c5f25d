"""Univariate polynomials and rational functions over Q."""

from __future__ import annotations

from fractions import Fraction
from numbers import Integral
from typing import Iterable, Mapping

from .rational import as_rational, format_rational

__all__ = [
    "UniPoly",
    "RationalFunction",
    "ZeroDenominator",
    "poly_derivative",
    "poly_gcd",
    "ratfun_simplify",
]


class ZeroDenominator(ZeroDivisionError):
    """Raised when a rational function is built over the zero polynomial."""


class UniPoly:
    """Dense polynomial, coefficients by ascending degree, no trailing zeros."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def x(cls) -> "UniPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "UniPoly":
        return cls((c,))

    @classmethod
    def from_terms(cls, terms: Mapping[int, object]) -> "UniPoly":
        if not terms:
            return cls()
        top = max(terms)
        if min(terms) < 0:
            raise ValueError("negative exponent in polynomial")
        cs = [Fraction(0)] * (top + 1)
        for e, c in terms.items():
            cs[e] += as_rational(c)
        return cls(cs)

    # -- structure -------------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def monic(self) -> "UniPoly":
        if not self.coeffs:
            return self
        lc = self.coeffs[-1]
        return UniPoly(c / lc for c in self.coeffs)

    def valuation(self) -> int:
        """Index of the lowest nonzero coefficient (-1 for zero)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return -1

    # -- arithmetic ------------------------------------------------------
    @staticmethod
    def _lift(other):
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (Fraction, Integral)):
            return UniPoly((other,))
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        n = max(len(self.coeffs), len(o.coeffs))
        return UniPoly(self[i] + o[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if not self.coeffs or not o.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, Integral) or e < 0:
            return NotImplemented
        out = UniPoly((1,))
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __divmod__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = o.degree
        lc = o.leading
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i] / lc
            if c:
                quot[i - dq] = c
                for j, b in enumerate(o.coeffs):
                    rem[i - dq + j] -= c * b
        return UniPoly(quot), UniPoly(rem[:dq] if dq > 0 else ())

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __truediv__(self, other):
        if isinstance(other, (Fraction, Integral)):
            return UniPoly(c / other for c in self.coeffs)
        return NotImplemented

    def derivative(self) -> "UniPoly":
        return UniPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def __call__(self, x):
        """Horner evaluation; works for Fraction, Surd, float and complex."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_float(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    def compose(self, inner: "UniPoly") -> "UniPoly":
        acc = UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def shift(self, h) -> "UniPoly":
        """Return p(x + h)."""
        return self.compose(UniPoly((h, 1)))

    # -- equality and display -------------------------------------------
    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(("UniPoly", self.coeffs))

    def __repr__(self):
        return f"UniPoly([{', '.join(format_rational(c) for c in self.coeffs)}])"

    def to_str(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mag = abs(c)
            if i == 0:
                body = format_rational(mag)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    __str__ = to_str


def poly_derivative(p: UniPoly) -> UniPoly:
    return p.derivative()


def poly_gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    """Monic gcd by the Euclidean algorithm (gcd(0, 0) is 0).

    Remainders are made monic at every step to keep coefficient growth down.
    """
    a, b = p.monic(), q.monic()
    while not b.is_zero():
        a, b = b, (a % b).monic()
    return a


class RationalFunction:
    """Canonical ``num/den``: gcd-reduced with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = _as_poly(num)
        den = UniPoly((1,)) if den is None else _as_poly(den)
        if den.is_zero():
            raise ZeroDenominator("rational function with zero denominator")
        if num.is_zero():
            num, den = UniPoly(), UniPoly((1,))
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
            lc = den.leading
            if lc != 1:
                num, den = num / lc, den / lc
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def const(cls, c) -> "RationalFunction":
        return cls(UniPoly((c,)))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def constant_value(self):
        """The rational constant, or None if the function is not constant."""
        if self.den.degree == 0 and self.num.degree <= 0:
            return self.num[0]
        return None

    @staticmethod
    def _lift(other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (UniPoly, Fraction, Integral)):
            return RationalFunction(other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        g = poly_gcd(self.den, o.den)
        d1, d2 = self.den // g, o.den // g
        return RationalFunction(self.num * d2 + o.num * d1, self.den * d2)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if self.den.degree <= 0 and o.den.degree <= 0:
            return RationalFunction(self.num * o.num, self.den * o.den)
        g1, g2 = poly_gcd(self.num, o.den), poly_gcd(o.num, self.den)
        return RationalFunction((self.num // g1) * (o.num // g2), (self.den // g2) * (o.den // g1))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if o.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, e: int):
        if not isinstance(e, Integral):
            return NotImplemented
        if e < 0:
            return RationalFunction(1) / (self ** (-e))
        return RationalFunction(self.num**e, self.den**e)

    def derivative(self) -> "RationalFunction":
        n, d = self.num, self.den
        return RationalFunction(n.derivative() * d - n * d.derivative(), d * d)

    def __call__(self, x):
        return self.num(x) / self.den(x)

    def eval_float(self, x: float) -> float:
        return self.num.eval_float(x) / self.den.eval_float(x)

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash(("RationalFunction", self.num, self.den))

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"

    def to_str(self, var: str = "x") -> str:
        if self.den.degree == 0:
            return self.num.to_str(var)
        num = self.num.to_str(var)
        if len(self.num.coeffs) - sum(1 for c in self.num.coeffs if not c) > 1:
            num = f"({num})"
        return f"{num}/({self.den.to_str(var)})"

    __str__ = to_str


def _as_poly(value) -> UniPoly:
    if isinstance(value, UniPoly):
        return value
    if isinstance(value, (Fraction, Integral, str)):
        return UniPoly((as_rational(value),))
    raise TypeError(f"expected a polynomial, got {value!r}")


def ratfun_simplify(num: UniPoly, den: UniPoly) -> RationalFunction:
    return RationalFunction(num, den)
