"""Sparse bivariate polynomials and planar polynomial systems."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from numbers import Integral
from typing import Iterator, Mapping

from .poly import UniPoly
from .rational import as_rational, format_rational

__all__ = ["BiPoly", "PlanarPolySystem"]


class BiPoly:
    """Polynomial in (x, y) stored as ``{(i, j): coeff}`` with no zero entries."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None):
        clean: dict[tuple[int, int], Fraction] = {}
        for (i, j), c in (terms or {}).items():
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent ({i}, {j})")
            c = as_rational(c)
            if c:
                clean[(int(i), int(j))] = clean.get((int(i), int(j)), Fraction(0)) + c
        clean = {k: v for k, v in clean.items() if v}
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    def __setattr__(self, name, value):
        raise AttributeError("BiPoly is immutable")

    @classmethod
    def x(cls) -> "BiPoly":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "BiPoly":
        return cls({(0, 1): 1})

    @classmethod
    def const(cls, c) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def from_uni(cls, p: UniPoly, var: str = "x") -> "BiPoly":
        if var == "x":
            return cls({(i, 0): c for i, c in enumerate(p.coeffs)})
        return cls({(0, j): c for j, c in enumerate(p.coeffs)})

    # -- structure -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def total_degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def coeff(self, i: int, j: int) -> Fraction:
        return self.terms.get((i, j), Fraction(0))

    def items(self) -> Iterator[tuple[tuple[int, int], Fraction]]:
        return iter(self.terms.items())

    def homogeneous_part(self, d: int) -> "BiPoly":
        return BiPoly({k: c for k, c in self.terms.items() if sum(k) == d})

    def constant_term(self) -> Fraction:
        return self.coeff(0, 0)

    def linear_part(self) -> "BiPoly":
        return self.homogeneous_part(1)

    def nonlinear_part(self) -> "BiPoly":
        return BiPoly({k: c for k, c in self.terms.items() if sum(k) >= 2})

    # -- arithmetic ------------------------------------------------------
    @staticmethod
    def _lift(other):
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, (Fraction, Integral)):
            return BiPoly({(0, 0): other})
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        out = dict(self.terms)
        for k, c in o.terms.items():
            out[k] = out.get(k, Fraction(0)) + c
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({k: -c for k, c in self.terms.items()})

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
        out: dict[tuple[int, int], Fraction] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in o.terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, Fraction(0)) + c1 * c2
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, Integral) or e < 0:
            return NotImplemented
        out = BiPoly({(0, 0): 1})
        for _ in range(e):
            out = out * self
        return out

    def diff_x(self) -> "BiPoly":
        return BiPoly({(i - 1, j): i * c for (i, j), c in self.terms.items() if i})

    def diff_y(self) -> "BiPoly":
        return BiPoly({(i, j - 1): j * c for (i, j), c in self.terms.items() if j})

    def __call__(self, x, y):
        """Evaluate at a point; works for any ring supporting + and *."""
        acc = 0
        for (i, j), c in self.terms.items():
            acc = acc + c * (x**i) * (y**j) if (i or j) else acc + c
        return acc

    def restrict_y(self, y0) -> UniPoly:
        """Univariate polynomial x -> self(x, y0) for rational y0."""
        y0 = as_rational(y0)
        out: dict[int, Fraction] = {}
        for (i, j), c in self.terms.items():
            out[i] = out.get(i, Fraction(0)) + c * y0**j
        return UniPoly.from_terms(out)

    def restrict_x(self, x0) -> UniPoly:
        x0 = as_rational(x0)
        out: dict[int, Fraction] = {}
        for (i, j), c in self.terms.items():
            out[j] = out.get(j, Fraction(0)) + c * x0**i
        return UniPoly.from_terms(out)

    def translate(self, x0, y0) -> "BiPoly":
        """Return p(x + x0, y + y0) for rational x0, y0."""
        x0, y0 = as_rational(x0), as_rational(y0)
        if x0 == 0 and y0 == 0:
            return self
        out: dict[tuple[int, int], Fraction] = {}
        for (i, j), c in self.terms.items():
            for a in range(i + 1):
                ca = comb(i, a) * x0 ** (i - a)
                if not ca:
                    continue
                for b in range(j + 1):
                    cb = comb(j, b) * y0 ** (j - b)
                    if cb:
                        out[(a, b)] = out.get((a, b), Fraction(0)) + c * ca * cb
        return BiPoly(out)

    def compile(self):
        """Fast float evaluator ``f(x, y) -> float``."""
        terms = [(float(c), i, j) for (i, j), c in self.terms.items()]

        def f(x: float, y: float) -> float:
            s = 0.0
            for c, i, j in terms:
                s += c * x**i * y**j
            return s

        return f

    # -- equality and display -------------------------------------------
    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self.terms == o.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __repr__(self):
        body = ", ".join(f"({i}, {j}): {format_rational(c)}" for (i, j), c in self.terms.items())
        return f"BiPoly({{{body}}})"

    def to_str(self, xv: str = "x", yv: str = "y") -> str:
        if not self.terms:
            return "0"
        parts = []
        for (i, j), c in sorted(self.terms.items(), key=lambda kv: (-sum(kv[0]), -kv[0][0])):
            mono = "*".join(
                p for p in (
                    "" if i == 0 else (xv if i == 1 else f"{xv}^{i}"),
                    "" if j == 0 else (yv if j == 1 else f"{yv}^{j}"),
                ) if p
            )
            mag = abs(c)
            if not mono:
                body = format_rational(mag)
            else:
                body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    __str__ = to_str


@dataclass(frozen=True)
class PlanarPolySystem:
    """The planar system ``x' = P(x, y)``, ``y' = Q(x, y)``."""

    P: BiPoly
    Q: BiPoly

    @property
    def degree(self) -> int:
        return max(self.P.total_degree, self.Q.total_degree)

    def jacobian(self) -> tuple[tuple[BiPoly, BiPoly], tuple[BiPoly, BiPoly]]:
        return (
            (self.P.diff_x(), self.P.diff_y()),
            (self.Q.diff_x(), self.Q.diff_y()),
        )

    def __call__(self, x, y):
        return self.P(x, y), self.Q(x, y)

    def translate(self, x0, y0) -> "PlanarPolySystem":
        return PlanarPolySystem(self.P.translate(x0, y0), self.Q.translate(x0, y0))

    def compile(self):
        p, q = self.P.compile(), self.Q.compile()

        def field(x: float, y: float) -> tuple[float, float]:
            return p(x, y), q(x, y)

        return field

    def __str__(self):
        return f"x' = {self.P}, y' = {self.Q}"
