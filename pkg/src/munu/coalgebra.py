"""Finite coalgebras, rational elements of the terminal coalgebra, and behavioural equivalence.

Behavioural equivalence is decided by iterating the kernels of the depth-n
projections into the terminal-coalgebra chain: ``kernel_0`` is a single block
and ``kernel_{n+1}`` groups states whose one-step structure agrees after
collapsing successors to their ``kernel_n`` blocks.  Because every grammar
functor preserves injections, that is exactly the kernel of ``beh_{n+1}``.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, Mapping

from . import finset
from .errors import FunctorMismatch, ParseError, ShapeMismatch
from .finset import FiniteFunction, FiniteSet
from .functor import BULLET, CanonValue, FunctorExpr, Var, fmap, relabel, validate_over, variables


@dataclass(frozen=True)
class Coalgebra:
    functor: FunctorExpr
    states: FiniteSet
    structure: Mapping[str, CanonValue] = field(compare=False)

    def __post_init__(self):
        if set(self.structure) != set(self.states):
            raise ShapeMismatch("structure must be defined on exactly the states")
        for s in self.states:
            if not validate_over(self.functor, self.structure[s], self.states):
                raise ShapeMismatch(
                    f"structure of {s} is not an element of {self.functor} over the states: "
                    f"{self.structure[s]}"
                )
        object.__setattr__(self, "structure", dict(sorted(self.structure.items())))

    def __eq__(self, other):
        if not isinstance(other, Coalgebra):
            return NotImplemented
        return (
            self.functor == other.functor
            and self.states == other.states
            and self.structure == other.structure
        )

    def __hash__(self):
        return hash((self.functor, self.states, tuple((k, v.text) for k, v in self.structure.items())))

    def __len__(self):
        return len(self.states)

    def successors(self, s: str) -> list[str]:
        return [v.atom for v in variables(self.structure[s])]

    def at(self, state: str) -> RationalElement:
        return RationalElement(self, state)


@dataclass(frozen=True)
class RationalElement:
    coalgebra: Coalgebra
    point: str

    def __post_init__(self):
        if self.point not in self.coalgebra.states:
            raise ValueError(f"{self.point} is not a state")

    @property
    def functor(self) -> FunctorExpr:
        return self.coalgebra.functor


@dataclass(frozen=True)
class Partition:
    blocks: tuple[tuple[str, ...], ...]

    @classmethod
    def from_labels(cls, labels: Mapping[str, int]) -> Partition:
        groups: dict[int, list[str]] = {}
        for s in sorted(labels):
            groups.setdefault(labels[s], []).append(s)
        return cls(tuple(sorted(tuple(g) for g in groups.values())))

    def block_of(self, s: str) -> int:
        for i, b in enumerate(self.blocks):
            if s in b:
                return i
        raise KeyError(s)

    def same_block(self, s: str, t: str) -> bool:
        return self.block_of(s) == self.block_of(t)

    def __len__(self):
        return len(self.blocks)


# -- projections ------------------------------------------------------------


def project(x: RationalElement, n: int) -> CanonValue:
    """``beh_n`` of the point: its image in ``F^n 1``."""
    if n < 0:
        raise ValueError("depth must be non-negative")
    c = x.coalgebra
    beh = {s: BULLET for s in c.states}
    for _ in range(n):
        prev = beh
        beh = {s: fmap(c.functor, c.structure[s], lambda v: prev[v.atom]) for s in c.states}
    return beh[x.point]


# -- refinement -------------------------------------------------------------


def kernels(c: Coalgebra) -> Iterator[dict[str, int]]:
    """Yield the block numbering of ``kernel_0, kernel_1, ...`` up to and including the first repeat."""
    blocks = {s: 0 for s in c.states}
    while True:
        yield blocks
        signature = {
            s: fmap(c.functor, c.structure[s], lambda v: Var(str(blocks[v.atom]))).text
            for s in c.states
        }
        numbering: dict[str, int] = {}
        refined = {}
        for s in c.states:
            refined[s] = numbering.setdefault(signature[s], len(numbering))
        if len(numbering) == len(set(blocks.values())):
            return
        blocks = refined


def behavioral_partition(c: Coalgebra) -> tuple[Partition, int]:
    """The stable kernel partition and the least depth at which it is reached."""
    depth, last = 0, {}
    for depth, last in enumerate(kernels(c)):
        pass
    return Partition.from_labels(last), depth


def disjoint_union(c: Coalgebra, d: Coalgebra) -> tuple[Coalgebra, FiniteFunction, FiniteFunction]:
    if c.functor != d.functor:
        raise FunctorMismatch(f"{c.functor} vs {d.functor}")
    S, inl, inr = finset.coproduct(c.states, d.states)
    structure = {inl(s): relabel(c.functor, c.structure[s], inl) for s in c.states}
    structure.update({inr(s): relabel(d.functor, d.structure[s], inr) for s in d.states})
    return Coalgebra(c.functor, S, structure), inl, inr


def separation_depth(x: RationalElement, y: RationalElement) -> int | None:
    """Least ``n`` with ``project(x, n) != project(y, n)``, or ``None`` if there is none."""
    u, inl, inr = disjoint_union(x.coalgebra, y.coalgebra)
    a, b = inl(x.point), inr(y.point)
    for n, blocks in enumerate(kernels(u)):
        if blocks[a] != blocks[b]:
            return n
    return None


def behaviorally_equal(x: RationalElement, y: RationalElement) -> bool:
    u, inl, inr = disjoint_union(x.coalgebra, y.coalgebra)
    part, _ = behavioral_partition(u)
    return part.same_block(inl(x.point), inr(y.point))


def reachable(c: Coalgebra, start: str) -> list[str]:
    seen = {start}
    order = [start]
    queue = deque([start])
    while queue:
        s = queue.popleft()
        for t in c.successors(s):
            if t not in seen:
                seen.add(t)
                order.append(t)
                queue.append(t)
    return order


def minimize(x: RationalElement) -> RationalElement:
    """Quotient the reachable part of ``x`` by behavioural equivalence.

    States of the result are ``s0, s1, ...`` in breadth-first order from the
    point, successors taken in the order they occur in the structure value.
    """
    c = x.coalgebra
    part, _ = behavioral_partition(c)
    block = {s: i for i, b in enumerate(part.blocks) for s in b}
    rep = {}
    for s in c.states:
        rep.setdefault(block[s], s)
    names: dict[int, str] = {}
    queue = deque([block[x.point]])
    names[block[x.point]] = "s0"
    while queue:
        b = queue.popleft()
        for t in c.successors(rep[b]):
            if block[t] not in names:
                names[block[t]] = f"s{len(names)}"
                queue.append(block[t])
    structure = {
        names[b]: relabel(c.functor, c.structure[rep[b]], lambda s: names[block[s]])
        for b in names
    }
    return RationalElement(Coalgebra(c.functor, FiniteSet(names.values()), structure), "s0")


def quotient_map(x: RationalElement, m: RationalElement) -> FiniteFunction:
    """The map from the reachable part of ``x`` onto the states of ``m = minimize(x)``."""
    sub = restrict(x.coalgebra, reachable(x.coalgebra, x.point))
    u, inl, inr = disjoint_union(sub, m.coalgebra)
    part, _ = behavioral_partition(u)
    target = {}
    for b in part.blocks:
        tgt = [s for s in b if s.startswith("inr(")]
        for s in b:
            if s.startswith("inl("):
                target[s[4:-1]] = tgt[0][4:-1]
    return FiniteFunction(sub.states, m.coalgebra.states, target)


def restrict(c: Coalgebra, states) -> Coalgebra:
    keep = FiniteSet(states)
    return Coalgebra(c.functor, keep, {s: c.structure[s] for s in keep})


def is_homomorphism(f: FiniteFunction, c: Coalgebra, d: Coalgebra) -> bool:
    if c.functor != d.functor:
        raise FunctorMismatch(f"{c.functor} vs {d.functor}")
    if f.domain != c.states or f.codomain != d.states:
        raise ValueError("f must map the states of c to the states of d")
    return all(
        d.structure[f(s)] == relabel(c.functor, c.structure[s], f) for s in c.states
    )


# -- text format ------------------------------------------------------------

_LINE = re.compile(r"\s*(\S+)\s*->\s*(.+?)\s*")


def parse_coalgebra(text: str) -> Coalgebra:
    """Read the ``functor: / states: / s -> value`` format."""
    from .syntax import parse_functor, parse_value

    functor = states = None
    rows: dict[str, str] = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("functor:"):
            functor = parse_functor(line.partition(":")[2])
        elif line.startswith("states:"):
            states = finset.parse_set(line.partition(":")[2])
        else:
            m = _LINE.fullmatch(line)
            if not m:
                raise ParseError(f"bad line {raw!r}")
            if m.group(1) in rows:
                raise ParseError(f"state {m.group(1)} defined twice")
            rows[m.group(1)] = m.group(2)
    if functor is None or states is None:
        raise ParseError("coalgebra needs 'functor:' and 'states:' lines")
    structure = {s: parse_value(functor, body, states) for s, body in rows.items()}
    return Coalgebra(functor, states, structure)


def format_coalgebra(c: Coalgebra) -> str:
    lines = [f"functor: {c.functor}", f"states: {c.states}"]
    lines += [f"{s} -> {c.structure[s]}" for s in c.states]
    return "\n".join(lines) + "\n"
