"""Computational toolkit for Gowers norms, bracket polynomials and free nilsequences."""

__version__ = "0.1.0"
