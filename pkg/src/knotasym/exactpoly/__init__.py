"""Exact polynomial cores and a complex root finder."""

from ._text import PolyParseError
from .polys import BivarPoly, L, M, Q, QLaurent, UniPoly, Z_VAR
from .roots import RootFindingError, backward_error, horner_evaluator, up_roots

__all__ = [
    "BivarPoly", "UniPoly", "QLaurent", "L", "M", "Q", "Z_VAR",
    "PolyParseError", "RootFindingError", "up_roots", "horner_evaluator", "backward_error",
]
