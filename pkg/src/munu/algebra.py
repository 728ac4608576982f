"""Elements of the initial algebra as finite terms, and their embedding into the terminal coalgebra.

A term is a closed nested value: every Id-slot holds another term, and the
nesting is finite.  For ``Pf(Id)`` these are exactly the hereditarily finite
sets, i.e. finite extensional trees.
"""

from __future__ import annotations

from collections import deque

from .errors import ShapeMismatch
from .finset import FiniteSet
from .functor import CanonValue, FunctorExpr, Var, elements, fmap, slots, validate
from .chains import initial_chain


def validate_term(F: FunctorExpr, t: CanonValue) -> bool:
    def slot(w):
        return not isinstance(w, Var) and validate(F, w, slot)

    return slot(t)


def _require(F, t):
    if not validate_term(F, t):
        raise ShapeMismatch(f"{t} is not a term for {F}")


def term_depth(F: FunctorExpr, t: CanonValue) -> int:
    """Number of ``F``-layers on the longest branch: the least ``k`` with ``t`` in ``F^k 0``."""
    return 1 + max((term_depth(F, s) for s in slots(F, t)), default=0)


def subterms(F: FunctorExpr, t: CanonValue) -> list[CanonValue]:
    return slots(F, t)


def iota_inverse(F: FunctorExpr, t: CanonValue) -> CanonValue:
    """Expose the top layer of ``t``: an ``F``-structure whose ``Var`` leaves hold the immediate subterms."""
    _require(F, t)
    return fmap(F, t, Var)


def iota(F: FunctorExpr, s: CanonValue) -> CanonValue:
    """Term formation: the inverse of :func:`iota_inverse`."""

    def unwrap(w):
        if not isinstance(w, Var) or not isinstance(w.atom, CanonValue):
            raise ShapeMismatch(f"slot {w} does not hold a term")
        return w.atom

    t = fmap(F, s, unwrap)
    _require(F, t)
    return t


def embed_mu_to_nu(F: FunctorExpr, t: CanonValue):
    """The finite coalgebra of subterms of ``t`` pointed at ``t``.

    Equal subterms are shared, so the states are the distinct subterms; they
    are labelled ``t0, t1, ...`` in breadth-first order from the root.
    """
    from .coalgebra import Coalgebra, RationalElement

    _require(F, t)
    label: dict[CanonValue, str] = {t: "t0"}
    order = [t]
    queue = deque([t])
    while queue:
        u = queue.popleft()
        for sub in slots(F, u):
            if sub not in label:
                label[sub] = f"t{len(label)}"
                order.append(sub)
                queue.append(sub)
    structure = {label[u]: fmap(F, u, lambda sub: Var(label[sub])) for u in order}
    c = Coalgebra(F, FiniteSet(label.values()), structure)
    return RationalElement(c, "t0")


def stage_terms(F: FunctorExpr, n: int) -> list[list[CanonValue]]:
    """Nested terms for every stage ``F^k 0``, ``k <= n``, of the initial chain.

    Each term prints exactly like the flat label of its chain element.
    """
    chain = initial_chain(F, n)
    nested: dict[str, CanonValue] = {}
    out: list[list[CanonValue]] = [[]]
    for k in range(1, n + 1):
        layer = [fmap(F, v, lambda w: nested[w.atom]) for v in elements(F, chain.stages[k - 1])]
        nested = {t.text: t for t in layer}
        out.append(layer)
    return out
