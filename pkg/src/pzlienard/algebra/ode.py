"""Homogeneous linear ODEs with rational-function coefficients."""

from __future__ import annotations

from typing import Sequence

from .poly import RationalFunction

__all__ = ["LinearODE"]


def _as_ratfun(c) -> RationalFunction:
    if isinstance(c, RationalFunction):
        return c
    return RationalFunction(c)


class LinearODE:
    """``sum_i coeffs[i] * y^(n - i) = 0`` in the independent variable ``var``.

    ``coeffs`` is ordered from the n-th derivative coefficient down to the
    coefficient of ``y`` itself.
    """

    __slots__ = ("var", "coeffs")

    def __init__(self, coeffs: Sequence, var: str = "x"):
        cs = tuple(_as_ratfun(c) for c in coeffs)
        if len(cs) < 2:
            raise ValueError("a linear ODE needs order >= 1")
        if cs[0].is_zero():
            raise ValueError("leading coefficient must be nonzero")
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "coeffs", cs)

    def __setattr__(self, name, value):
        raise AttributeError("LinearODE is immutable")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coefficient_of(self, k: int) -> RationalFunction:
        """Coefficient multiplying the k-th derivative."""
        return self.coeffs[self.order - k]

    def normalized(self) -> "LinearODE":
        """Divide through by the leading coefficient."""
        lead = self.coeffs[0]
        return LinearODE([c / lead for c in self.coeffs], self.var)

    def scaled(self, factor) -> "LinearODE":
        return LinearODE([c * factor for c in self.coeffs], self.var)

    def same_equation(self, other: "LinearODE") -> bool:
        """True if both ODEs agree after normalizing the leading coefficient."""
        return self.order == other.order and self.normalized().coeffs == other.normalized().coeffs

    def with_coefficient(self, k: int, value) -> "LinearODE":
        cs = list(self.coeffs)
        cs[self.order - k] = _as_ratfun(value)
        return LinearODE(cs, self.var)

    def residual_terms(self, x: float, derivs: Sequence[float]) -> list[float]:
        """Float values of each ``coeff_k(x) * y^(k)``; ``derivs[k] = y^(k)``."""
        return [self.coefficient_of(k).eval_float(x) * derivs[k] for k in range(self.order + 1)]

    def __eq__(self, other):
        if not isinstance(other, LinearODE):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def coefficient_strings(self) -> list[str]:
        return [c.to_str(self.var) for c in self.coeffs]

    def __repr__(self):
        return f"LinearODE({list(self.coeffs)!r}, var={self.var!r})"

    def __str__(self):
        n = self.order
        parts = []
        for i, c in enumerate(self.coeffs):
            k = n - i
            if c.is_zero():
                continue
            d = "y" if k == 0 else ("y'" if k == 1 else ("y''" if k == 2 else f"y^({k})"))
            parts.append(f"({c.to_str(self.var)})*{d}")
        return " + ".join(parts) + " = 0"

