"""Quadratic surds ``p + q*sqrt(d)`` and real radicals ``sign * rho**(1/n)``.

A :class:`Surd` lives in the field Q(sqrt(d)) with ``d`` a squarefree
integer.  Negative ``d`` is allowed, so complex conjugate eigenvalue pairs
such as ``1 +- 2i`` are represented as ``Surd(1, +-2, -1)`` and the
characteristic polynomial residual stays exact.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Integral

from .rational import as_rational, format_rational

__all__ = ["Surd", "RealRoot", "real_root", "squarefree_split", "to_float"]

_TRIAL_LIMIT = 10_000


def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(f, r)`` with ``n == f*f*r`` and ``r`` squarefree (sign kept in r).

    Trial division runs up to 10**4; a leftover cofactor is only tested for
    being a perfect square, which is exact for every cofactor below 10**12.
    """
    if n == 0:
        return 0, 0
    sign = -1 if n < 0 else 1
    n = abs(n)
    f, r = 1, 1
    p = 2
    while p * p <= n and p <= _TRIAL_LIMIT:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            f *= p ** (e // 2)
            if e % 2:
                r *= p
        p += 1 if p == 2 else 2
    if n > 1:
        s = math.isqrt(n)
        if s * s == n:
            f *= s
        else:
            r *= n
    return f, sign * r


class Surd:
    """Exact element ``p + q*sqrt(d)`` of a quadratic field."""

    __slots__ = ("p", "q", "d")

    def __init__(self, p=0, q=0, d=1):
        p = as_rational(p)
        q = as_rational(q)
        d = as_rational(d)
        if q == 0 or d == 0:
            q, d_int = Fraction(0), 1
        else:
            # sqrt(N/D) = sqrt(N*D)/D
            f, r = squarefree_split(d.numerator * d.denominator)
            q = q * f / d.denominator
            d_int = r
            if r == 1:
                p, q = p + q, Fraction(0)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "d", d_int)

    def __setattr__(self, name, value):
        raise AttributeError("Surd is immutable")

    @classmethod
    def sqrt(cls, value) -> "Surd":
        return cls(0, 1, value)

    # -- structure -------------------------------------------------------
    @property
    def is_rational(self) -> bool:
        return self.q == 0

    @property
    def is_real(self) -> bool:
        return self.q == 0 or self.d > 0

    def rational(self) -> Fraction:
        if self.q != 0:
            raise ValueError(f"{self} is not rational")
        return self.p

    def real_part(self) -> "Surd":
        if self.is_real:
            return self
        return Surd(self.p)

    def imag_part(self) -> "Surd":
        """Imaginary part as a real surd (zero for real values)."""
        if self.is_real:
            return Surd(0)
        return Surd(0, self.q, -self.d)

    def conjugate(self) -> "Surd":
        return Surd(self.p, -self.q, self.d)

    def _coerce(self, other) -> "Surd":
        if isinstance(other, Surd):
            o = other
        elif isinstance(other, (Fraction, Integral)):
            o = Surd(other)
        else:
            return NotImplemented
        if self.q != 0 and o.q != 0 and self.d != o.d:
            raise ValueError(f"surds from different fields: sqrt({self.d}) vs sqrt({o.d})")
        return o

    def _field(self, o: "Surd") -> int:
        return self.d if self.q != 0 else o.d

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Surd(self.p + o.p, self.q + o.q, self._field(o))

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.p, -self.q, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = self._field(o)
        return Surd(self.p * o.p + self.q * o.q * d, self.p * o.q + self.q * o.p, d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.p * self.p - self.q * self.q * self.d

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero surd")
        num = self * o.conjugate()
        return Surd(num.p / n, num.q / n, self._field(o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, e: int):
        if not isinstance(e, Integral):
            return NotImplemented
        if e < 0:
            return Surd(1) / (self ** (-e))
        out = Surd(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # -- order and equality ---------------------------------------------
    def sign(self) -> int:
        if not self.is_real:
            raise ValueError(f"{self} is not real")
        sp = (self.p > 0) - (self.p < 0)
        sq = (self.q > 0) - (self.q < 0)
        if sq == 0:
            return sp
        if sp == 0 or sp == sq:
            return sq
        # opposite signs: compare p^2 with q^2 d
        diff = self.p * self.p - self.q * self.q * self.d
        return sp if diff > 0 else (sq if diff < 0 else 0)

    def __eq__(self, other):
        if isinstance(other, (Fraction, Integral)):
            return self.q == 0 and self.p == other
        if isinstance(other, Surd):
            if self.q == 0 and other.q == 0:
                return self.p == other.p
            return self.p == other.p and self.q == other.q and self.d == other.d
        return NotImplemented

    def __hash__(self):
        if self.q == 0:
            return hash(self.p)
        return hash((self.p, self.q, self.d))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __bool__(self):
        return self.p != 0 or self.q != 0

    # -- conversion ------------------------------------------------------
    def __float__(self):
        if not self.is_real:
            raise ValueError(f"{self} is not real")
        if self.q == 0:
            return float(self.p)
        return float(self.p) + float(self.q) * math.sqrt(self.d)

    def __complex__(self):
        if self.q == 0:
            return complex(float(self.p))
        if self.d > 0:
            return complex(float(self))
        return complex(float(self.p), float(self.q) * math.sqrt(-self.d))

    def __repr__(self):
        return f"Surd({format_rational(self.p)}, {format_rational(self.q)}, {self.d})"

    def __str__(self):
        if self.q == 0:
            return format_rational(self.p)
        root = "i" if self.d == -1 else f"sqrt({self.d})"
        q = self.q
        qs = "" if abs(q) == 1 else f"{format_rational(abs(q))}*"
        if self.p == 0:
            return f"{'-' if q < 0 else ''}{qs}{root}"
        return f"{format_rational(self.p)} {'-' if q < 0 else '+'} {qs}{root}"


class RealRoot:
    """The real number ``sign * radicand**(1/n)`` with ``radicand > 0``."""

    __slots__ = ("radicand", "n", "sign")

    def __init__(self, radicand, n: int, sign: int = 1):
        if not isinstance(radicand, Surd):
            radicand = Surd(radicand)
        if n < 1:
            raise ValueError("root index must be positive")
        if radicand.sign() <= 0:
            raise ValueError("radicand must be positive")
        object.__setattr__(self, "radicand", radicand)
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "sign", 1 if sign >= 0 else -1)

    def __setattr__(self, name, value):
        raise AttributeError("RealRoot is immutable")

    def __float__(self):
        return self.sign * float(self.radicand) ** (1.0 / self.n)

    def __eq__(self, other):
        if isinstance(other, RealRoot):
            return (self.radicand, self.n, self.sign) == (other.radicand, other.n, other.sign)
        return NotImplemented

    def __hash__(self):
        return hash((self.radicand, self.n, self.sign))

    def __repr__(self):
        return f"RealRoot({self.radicand!r}, {self.n}, {self.sign})"

    def __str__(self):
        s = "-" if self.sign < 0 else ""
        return f"{s}({self.radicand})^(1/{self.n})"


def _rational_nth_root(q: Fraction, n: int):
    def iroot(k: int):
        r = round(k ** (1.0 / n)) if k < 2**52 else _int_nth_root(k, n)
        for c in (r - 1, r, r + 1):
            if c >= 0 and c**n == k:
                return c
        return None

    a, b = iroot(q.numerator), iroot(q.denominator)
    if a is None or b is None:
        return None
    return Fraction(a, b)


def _int_nth_root(k: int, n: int) -> int:
    lo, hi = 0, 1 << (k.bit_length() // n + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**n <= k:
            lo = mid
        else:
            hi = mid - 1
    return lo


def real_root(radicand, n: int, sign: int = 1):
    """Simplest exact representation of ``sign * radicand**(1/n)``.

    Returns a Fraction when the root is rational, a Surd for square roots
    of rationals, and a :class:`RealRoot` record otherwise.
    """
    if not isinstance(radicand, Surd):
        radicand = Surd(radicand)
    s = 1 if sign >= 0 else -1
    if n == 1:
        return radicand * s if radicand.q else radicand.p * s
    if radicand.is_rational:
        q = radicand.p
        r = _rational_nth_root(q, n)
        if r is not None:
            return s * r
        if n == 2:
            return Surd(0, s, q)
        if n % 2 == 0:
            r = _rational_nth_root(q, 2)
            if r is not None:
                return real_root(r, n // 2, s)
    return RealRoot(radicand, n, s)


def to_float(value) -> float:
    return float(value)
