"""Finite sets of string atoms and total functions between them.

Every constructed set uses a fixed label encoding so that output is
byte-stable:

* pullback / product carriers: ``(x,y)``
* coproduct carriers: ``inl(x)`` and ``inr(y)``

Atoms supplied by users must match :data:`ATOM_RE`; constructed labels are
always well-bracketed, which keeps the encodings unambiguous.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Callable, Iterable, Iterator, Mapping

from .errors import CodomainMismatch, DomainMismatch, ParseError

ATOM_RE = re.compile(r"[\w'•@!?~$%&^-]+")


@dataclass(frozen=True, slots=True)
class FiniteSet:
    """A duplicate-free set of labels, iterated in lexicographic order."""

    elements: tuple[str, ...]

    def __init__(self, elements: Iterable[str] = ()):
        elems = list(elements)
        if len(set(elems)) != len(elems):
            dupes = sorted({e for e in elems if elems.count(e) > 1})
            raise ValueError(f"duplicate labels: {dupes}")
        object.__setattr__(self, "elements", tuple(sorted(elems)))

    def __iter__(self) -> Iterator[str]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: object) -> bool:
        # elements is sorted, but the sets are small enough that a scan is fine
        return x in self.elements

    def __str__(self) -> str:
        return "{" + ", ".join(self.elements) + "}"

    def issubset(self, other: FiniteSet) -> bool:
        return set(self.elements) <= set(other.elements)


EMPTY = FiniteSet()
ONE = FiniteSet(["•"])


@dataclass(frozen=True)
class FiniteFunction:
    domain: FiniteSet
    codomain: FiniteSet
    mapping: Mapping[str, str] = field(compare=False)

    def __post_init__(self):
        keys = set(self.mapping)
        if keys != set(self.domain):
            raise DomainMismatch(
                f"mapping defined on {sorted(keys)}, domain is {self.domain}"
            )
        cod = set(self.codomain)
        bad = sorted(y for y in self.mapping.values() if y not in cod)
        if bad:
            raise CodomainMismatch(f"images {bad} not in codomain {self.codomain}")
        object.__setattr__(self, "mapping", dict(sorted(self.mapping.items())))

    def __call__(self, x: str) -> str:
        return self.mapping[x]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteFunction):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.codomain == other.codomain
            and self.mapping == other.mapping
        )

    def __hash__(self) -> int:
        return hash((self.domain, self.codomain, tuple(self.mapping.items())))

    def image(self) -> FiniteSet:
        return FiniteSet(set(self.mapping.values()))

    def is_injective(self) -> bool:
        return len(set(self.mapping.values())) == len(self.mapping)

    def is_surjective(self) -> bool:
        return set(self.mapping.values()) == set(self.codomain)

    def is_bijective(self) -> bool:
        return len(self.domain) == len(self.codomain) and self.is_injective()

    def inverse(self) -> FiniteFunction:
        if not self.is_bijective():
            raise ValueError("function is not a bijection")
        return FiniteFunction(
            self.codomain, self.domain, {y: x for x, y in self.mapping.items()}
        )

    def __str__(self) -> str:
        arrows = " ; ".join(f"{x}|->{y}" for x, y in self.mapping.items())
        head = f"f: {self.domain} -> {self.codomain}"
        return f"{head} ; {arrows}" if arrows else head


def identity(X: FiniteSet) -> FiniteFunction:
    return FiniteFunction(X, X, {x: x for x in X})


def from_callable(X: FiniteSet, Y: FiniteSet, fn: Callable[[str], str]) -> FiniteFunction:
    return FiniteFunction(X, Y, {x: fn(x) for x in X})


def constant(X: FiniteSet, Y: FiniteSet, y: str) -> FiniteFunction:
    return FiniteFunction(X, Y, {x: y for x in X})


def terminal_map(X: FiniteSet) -> FiniteFunction:
    """The unique map ``X -> {•}``."""
    return constant(X, ONE, "•")


def initial_map(X: FiniteSet) -> FiniteFunction:
    """The unique map ``∅ -> X``."""
    return FiniteFunction(EMPTY, X, {})


def inclusion(A: FiniteSet, X: FiniteSet) -> FiniteFunction:
    return FiniteFunction(A, X, {a: a for a in A})


def compose(f: FiniteFunction, g: FiniteFunction) -> FiniteFunction:
    """Return ``f ∘ g`` (apply ``g`` first)."""
    if g.codomain != f.domain:
        raise DomainMismatch(f"cannot compose: cod(g)={g.codomain}, dom(f)={f.domain}")
    return FiniteFunction(g.domain, f.codomain, {x: f(g(x)) for x in g.domain})


def pair_label(x: str, y: str) -> str:
    return f"({x},{y})"


def pullback(f: FiniteFunction, g: FiniteFunction):
    """Canonical pullback ``{(x,y) | f(x) = g(y)}`` with its two projections."""
    if f.codomain != g.codomain:
        raise CodomainMismatch(f"{f.codomain} != {g.codomain}")
    pairs = [(x, y) for x in f.domain for y in g.domain if f(x) == g(y)]
    P = FiniteSet(pair_label(x, y) for x, y in pairs)
    p1 = FiniteFunction(P, f.domain, {pair_label(x, y): x for x, y in pairs})
    p2 = FiniteFunction(P, g.domain, {pair_label(x, y): y for x, y in pairs})
    return P, p1, p2


def product(X: FiniteSet, Y: FiniteSet):
    pairs = list(cartesian(X, Y))
    P = FiniteSet(pair_label(x, y) for x, y in pairs)
    p1 = FiniteFunction(P, X, {pair_label(x, y): x for x, y in pairs})
    p2 = FiniteFunction(P, Y, {pair_label(x, y): y for x, y in pairs})
    return P, p1, p2


def coproduct(X: FiniteSet, Y: FiniteSet):
    S = FiniteSet([f"inl({x})" for x in X] + [f"inr({y})" for y in Y])
    inl = FiniteFunction(X, S, {x: f"inl({x})" for x in X})
    inr = FiniteFunction(Y, S, {y: f"inr({y})" for y in Y})
    return S, inl, inr


def all_functions(X: FiniteSet, Y: FiniteSet) -> Iterator[FiniteFunction]:
    for images in cartesian(Y.elements, repeat=len(X)):
        yield FiniteFunction(X, Y, dict(zip(X.elements, images)))


# -- text literals ----------------------------------------------------------


def _atoms(body: str) -> list[str]:
    body = body.strip()
    if not body:
        return []
    out = []
    for tok in body.split(","):
        tok = tok.strip()
        if not ATOM_RE.fullmatch(tok):
            raise ParseError(f"bad atom {tok!r}")
        out.append(tok)
    return out


def parse_set(text: str) -> FiniteSet:
    """Parse ``{a, b, c}``."""
    s = text.strip()
    if not (s.startswith("{") and s.endswith("}")):
        raise ParseError(f"set literal must be braced: {text!r}")
    try:
        return FiniteSet(_atoms(s[1:-1]))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


_FUN_HEAD = re.compile(r"\s*(?:[\w']+\s*:)?\s*(\{[^}]*\})\s*->\s*(\{[^}]*\})\s*")


def parse_function(text: str) -> FiniteFunction:
    """Parse ``f: {a,b} -> {x} ; a|->x ; b|->x``."""
    head, *arrows = text.split(";")
    m = _FUN_HEAD.fullmatch(head)
    if not m:
        raise ParseError(f"bad function header {head!r}")
    X, Y = parse_set(m.group(1)), parse_set(m.group(2))
    mapping = {}
    for arrow in arrows:
        if not arrow.strip():
            continue
        lhs, sep, rhs = arrow.partition("|->")
        if not sep:
            raise ParseError(f"bad arrow {arrow!r}")
        x, y = lhs.strip(), rhs.strip()
        if x in mapping:
            raise ParseError(f"{x} mapped twice")
        mapping[x] = y
    return FiniteFunction(X, Y, mapping)
