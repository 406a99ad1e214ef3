"""Colored Jones polynomials, A-polynomials and saddle-point volumes of twist and torus knots."""

__version__ = "0.1.0"
