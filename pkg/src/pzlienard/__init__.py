"""Exact and numerical analysis of the Polyanin-Zaitsev Lienard family."""

__version__ = "0.1.0"
