"""Executable initial algebras and terminal coalgebras for finitary set functors."""

from .finset import FiniteFunction, FiniteSet
from .functor import CanonValue, FunctorExpr
from .syntax import parse_functor, parse_term, parse_value

__all__ = [
    "CanonValue",
    "FiniteFunction",
    "FiniteSet",
    "FunctorExpr",
    "parse_functor",
    "parse_term",
    "parse_value",
]
