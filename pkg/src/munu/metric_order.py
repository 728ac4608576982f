"""The behavioural ultrametric, the approximants ``ε_n`` and the prefix order on rational elements.

Distances are kept as exponents: ``d = 2^-exponent`` and an infinite exponent
means distance zero.  The approximant ``ε_n(x)`` is the depth-``n`` projection
of ``x`` with the base point ``p ∈ F(∅)`` plugged in at every cut; it is
always a finite term.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

from .algebra import embed_mu_to_nu, validate_term
from .coalgebra import RationalElement, behaviorally_equal, project, separation_depth
from .errors import EmptyFZero, FunctorMismatch, ShapeMismatch
from .finset import EMPTY
from .functor import BULLET, CanonValue, FunctorExpr, elements, fmap


@dataclass(frozen=True)
class BasePoint:
    functor: FunctorExpr
    p: CanonValue

    def __post_init__(self):
        if not validate_term(self.functor, self.p) or self.p not in elements(self.functor, EMPTY):
            raise ShapeMismatch(f"{self.p} is not an element of {self.functor} applied to the empty set")


def default_base(F: FunctorExpr) -> BasePoint:
    """The canonically least element of ``F(∅)``."""
    zero = elements(F, EMPTY)
    if not zero:
        raise EmptyFZero(f"{F} sends the empty set to the empty set")
    return BasePoint(F, zero[0])


def _check_base(F: FunctorExpr, base: BasePoint | None) -> BasePoint:
    if base is None:
        return default_base(F)
    if base.functor != F:
        raise FunctorMismatch(f"base point is for {base.functor}, not {F}")
    return base


@functools.total_ordering
@dataclass(frozen=True)
class Distance:
    """``2^-exponent``; ``exponent=None`` encodes distance zero."""

    exponent: int | None

    def __post_init__(self):
        if self.exponent is not None and self.exponent < 0:
            raise ValueError("exponent must be non-negative")

    @property
    def is_zero(self) -> bool:
        return self.exponent is None

    @property
    def value(self) -> Fraction:
        return Fraction(0) if self.exponent is None else Fraction(1, 2**self.exponent)

    def __lt__(self, other: Distance) -> bool:
        return self.value < other.value

    def __str__(self):
        return "0" if self.exponent is None else f"2^-{self.exponent}"


ZERO = Distance(None)


def distance(x: RationalElement, y: RationalElement) -> Distance:
    if x.functor != y.functor:
        raise FunctorMismatch(f"{x.functor} vs {y.functor}")
    return Distance(separation_depth(x, y))


def plug(F: FunctorExpr, u: CanonValue, n: int, p: CanonValue) -> CanonValue:
    """``e_n`` on a single element: replace the depth-``n`` cut ``•`` of ``u ∈ F^n 1`` by ``p``."""
    if n == 0:
        if u != BULLET:
            raise ShapeMismatch(f"expected • at the cut, got {u}")
        return p
    return fmap(F, u, lambda w: plug(F, w, n - 1, p))


def epsilon(x: RationalElement, n: int, base: BasePoint | None = None) -> CanonValue:
    base = _check_base(x.functor, base)
    return plug(x.functor, project(x, n), n, base.p)


def leq(t: RationalElement, s: RationalElement, base: BasePoint | None = None) -> bool:
    """``t ⊑ s``: ``t`` behaves as ``s`` or as one of its approximants ``ε_n(s)``.

    If ``t = ε_n(s)`` then the two agree on every projection up to depth ``n``,
    so ``n`` is below their separation depth; only those ``n`` are tried.
    """
    if t.functor != s.functor:
        raise FunctorMismatch(f"{t.functor} vs {s.functor}")
    base = _check_base(s.functor, base)
    k = separation_depth(t, s)
    if k is None:
        return True
    F = s.functor
    return any(
        behaviorally_equal(t, embed_mu_to_nu(F, epsilon(s, n, base))) for n in range(k)
    )


@dataclass
class Witness:
    approximants: list[CanonValue]
    distances: list[Distance]
    close: list[bool]
    increasing: list[bool]
    bounded: list[bool]

    @property
    def ok(self) -> bool:
        return all(self.close) and all(self.increasing) and all(self.bounded)


def completion_witness(x: RationalElement, N: int, base: BasePoint | None = None) -> Witness:
    """``ε_0(x), ..., ε_N(x)`` with the facts that make ``x`` their limit and join."""
    base = _check_base(x.functor, base)
    F = x.functor
    approx = [epsilon(x, n, base) for n in range(N + 1)]
    points = [embed_mu_to_nu(F, t) for t in approx]
    dists = [distance(x, e) for e in points]
    close = [d < Distance(n) for n, d in enumerate(dists)]
    increasing = [leq(points[n], points[n + 1], base) for n in range(N)]
    bounded = [leq(e, x, base) for e in points]
    return Witness(approx, dists, close, increasing, bounded)
