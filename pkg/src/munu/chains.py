"""Finite prefixes of the initial-algebra chain ``F^n 0`` and terminal-coalgebra chain ``F^n 1``."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from . import finset
from .errors import ShapeMismatch
from .finset import EMPTY, ONE, FiniteFunction, FiniteSet
from .functor import (
    BULLET,
    DEFAULT_SIZE_LIMIT,
    CanonValue,
    FunctorExpr,
    apply_fun,
    apply_set,
    fmap,
)


class Direction(enum.Enum):
    INITIAL = "init"
    TERMINAL = "term"


@dataclass(frozen=True)
class ChainPrefix:
    """Stages ``0..n`` and the ``n`` connecting maps between them.

    For the initial chain ``links[k]`` is ``w_{k,k+1}: F^k 0 -> F^{k+1} 0``;
    for the terminal chain it is ``v_{k+1,k}: F^{k+1} 1 -> F^k 1``.
    """

    functor: FunctorExpr
    direction: Direction
    stages: tuple[FiniteSet, ...]
    links: tuple[FiniteFunction, ...]

    @property
    def depth(self) -> int:
        return len(self.stages) - 1

    def sizes(self) -> list[int]:
        return [len(s) for s in self.stages]


def _chain(F, n, direction, limit):
    if n < 0:
        raise ValueError("depth must be non-negative")
    start = EMPTY if direction is Direction.INITIAL else ONE
    stages = [start]
    links: list[FiniteFunction] = []
    for k in range(n):
        stages.append(apply_set(F, stages[k], limit))
        if k == 0:
            if direction is Direction.INITIAL:
                links.append(finset.initial_map(stages[1]))
            else:
                links.append(finset.terminal_map(stages[1]))
        else:
            links.append(apply_fun(F, links[k - 1], limit))
    return ChainPrefix(F, direction, tuple(stages), tuple(links))


def initial_chain(F: FunctorExpr, n: int, limit: int = DEFAULT_SIZE_LIMIT) -> ChainPrefix:
    return _chain(F, n, Direction.INITIAL, limit)


def terminal_chain(F: FunctorExpr, n: int, limit: int = DEFAULT_SIZE_LIMIT) -> ChainPrefix:
    return _chain(F, n, Direction.TERMINAL, limit)


def detect_convergence(chain: ChainPrefix) -> int | None:
    """Least ``k`` whose connecting map is a bijection, if the prefix shows one."""
    for k, link in enumerate(chain.links):
        if len(link.domain) == len(link.codomain) and link.is_injective():
            return k
    return None


def truncate(F: FunctorExpr, t: CanonValue, n: int) -> CanonValue:
    """Cut a nested value at depth ``n``, collapsing everything below to ``•``."""
    if n == 0:
        return BULLET
    return fmap(F, t, lambda sub: truncate(F, sub, n - 1))


def u_bar_projection(F: FunctorExpr, t: CanonValue, n: int) -> CanonValue:
    """The depth-``n`` projection of a term, as an element of ``F^n 1``."""
    from .algebra import validate_term

    if not validate_term(F, t):
        raise ShapeMismatch(f"{t} is not a term for {F}")
    return truncate(F, t, n)
