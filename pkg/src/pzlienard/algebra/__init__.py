"""Exact arithmetic: rationals, surds, polynomials, rational functions, series."""

from .bipoly import BiPoly, PlanarPolySystem
from .ode import LinearODE
from .poly import (
    RationalFunction,
    UniPoly,
    ZeroDenominator,
    poly_derivative,
    poly_gcd,
    ratfun_simplify,
)
from .rational import Rational, as_rational, format_rational, parse_rational
from .series import (
    DEFAULT_ORDER,
    AllZero,
    NoFormalSolution,
    TruncatedSeries,
    compose_bipoly,
    series_implicit_solve,
    series_leading_term,
)
from .surd import RealRoot, Surd, real_root, squarefree_split

__all__ = [
    "AllZero",
    "BiPoly",
    "DEFAULT_ORDER",
    "LinearODE",
    "NoFormalSolution",
    "PlanarPolySystem",
    "Rational",
    "RationalFunction",
    "RealRoot",
    "Surd",
    "TruncatedSeries",
    "UniPoly",
    "ZeroDenominator",
    "as_rational",
    "compose_bipoly",
    "format_rational",
    "parse_rational",
    "poly_derivative",
    "poly_gcd",
    "ratfun_simplify",
    "real_root",
    "series_implicit_solve",
    "series_leading_term",
    "squarefree_split",
]
