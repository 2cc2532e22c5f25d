"""Truncated power series in one variable and the implicit-function solver."""

from __future__ import annotations

from fractions import Fraction
from numbers import Integral
from typing import Iterable

from .bipoly import BiPoly
from .rational import as_rational, format_rational

__all__ = [
    "TruncatedSeries",
    "AllZero",
    "NoFormalSolution",
    "DEFAULT_ORDER",
    "series_implicit_solve",
    "series_leading_term",
    "compose_bipoly",
]

DEFAULT_ORDER = 8


class AllZero(ValueError):
    """Every known coefficient of a series vanishes."""


class NoFormalSolution(ValueError):
    """``y + X(x, y) = 0`` has no formal solution with ``F(0) = 0``."""


class TruncatedSeries:
    """``sum c_i x^i + O(x^order)``.

    Coefficients at index ``>= order`` are unknown, not zero, so every binary
    operation truncates to the smaller of the two orders.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable = (), order: int | None = None):
        cs = [as_rational(c) for c in coeffs]
        if order is None:
            order = len(cs)
        if order < 0:
            raise ValueError("negative truncation order")
        cs = (cs + [Fraction(0)] * order)[:order]
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "order", order)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls((), order)

    @classmethod
    def monomial(cls, c, e: int, order: int) -> "TruncatedSeries":
        cs = [Fraction(0)] * order
        if e < order:
            cs[e] = as_rational(c)
        return cls(cs, order)

    def __getitem__(self, i: int) -> Fraction:
        if i >= self.order:
            raise IndexError(f"coefficient {i} is beyond truncation order {self.order}")
        return self.coeffs[i]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs[:order], min(order, self.order))

    @staticmethod
    def _lift(other, order):
        if isinstance(other, TruncatedSeries):
            return other
        if isinstance(other, (Fraction, Integral)):
            return TruncatedSeries((other,), order)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other, self.order)
        if o is NotImplemented:
            return o
        n = min(self.order, o.order)
        return TruncatedSeries((self.coeffs[i] + o.coeffs[i] for i in range(n)), n)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries((-c for c in self.coeffs), self.order)

    def __sub__(self, other):
        o = self._lift(other, self.order)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other, self.order)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        if isinstance(other, (Fraction, Integral)):
            return TruncatedSeries((c * other for c in self.coeffs), self.order)
        o = self._lift(other, self.order)
        if o is NotImplemented:
            return o
        n = min(self.order, o.order)
        out = [Fraction(0)] * n
        for i in range(n):
            a = self.coeffs[i]
            if a:
                for j in range(n - i):
                    out[i + j] += a * o.coeffs[j]
        return TruncatedSeries(out, n)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, Integral) or e < 0:
            return NotImplemented
        out = TruncatedSeries((1,), self.order)
        for _ in range(e):
            out = out * self
        return out

    def shift_up(self, k: int) -> "TruncatedSeries":
        """Multiply by x**k, keeping the truncation order."""
        cs = [Fraction(0)] * k + list(self.coeffs)
        return TruncatedSeries(cs[: self.order], self.order)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.coeffs, self.order))

    def __repr__(self):
        return f"TruncatedSeries([{', '.join(format_rational(c) for c in self.coeffs)}], order={self.order})"

    def to_str(self, var: str = "x") -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
                parts.append(f"{format_rational(c)}{'*' + mono if mono else ''}")
        parts.append(f"O({var}^{self.order})")
        return " + ".join(parts)

    __str__ = to_str


def compose_bipoly(p: BiPoly, F: TruncatedSeries) -> TruncatedSeries:
    """The series ``p(x, F(x))`` truncated at ``F.order``."""
    n = F.order
    powers = [TruncatedSeries((1,), n)]
    out = TruncatedSeries.zero(n)
    for (i, j), c in p.items():
        while len(powers) <= j:
            powers.append(powers[-1] * F)
        if i < n:
            out = out + (powers[j] * c).shift_up(i)
    return out


def series_implicit_solve(X: BiPoly, N: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Formal solution ``y = F(x)`` of ``y + X(x, y) = 0`` with ``F(0) = 0``.

    Coefficients are fixed one degree at a time: once ``F`` is known through
    degree ``n - 1``, the degree-``n`` coefficient of ``X(x, F(x))`` no
    longer depends on ``F_n`` except through the linear ``y`` term of ``X``.
    """
    if X.constant_term() != 0:
        raise NoFormalSolution("X has a constant term; F(0) = 0 is impossible")
    lin_y = X.coeff(0, 1)
    if 1 + lin_y == 0:
        raise NoFormalSolution("the y coefficient of y + X(x, y) vanishes")
    rest = X - BiPoly({(0, 1): lin_y})
    scale = 1 + lin_y
    F = TruncatedSeries.zero(N)
    for n in range(1, N):
        residual = compose_bipoly(rest, F)
        cs = list(F.coeffs)
        cs[n] = -residual.coeffs[n] / scale
        F = TruncatedSeries(cs, N)
    return F


def series_leading_term(s: TruncatedSeries) -> tuple[Fraction, int]:
    for i, c in enumerate(s.coeffs):
        if c:
            return c, i
    raise AllZero(f"series vanishes through order {s.order}")
