"""Finite groups acting on finite sets: orbits, connected objects and width bounds.

Connected ``G``-sets are the quotients ``G/~`` by equivariant equivalences.
Candidates for ``~`` are generated from their class of the identity (any
subset containing ``e``) and kept only if the induced relation
``g ~ g'  iff  g^-1 g' ∈ H`` really is an equivariant equivalence.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Iterator, Mapping

from .errors import GroupAxiomError, ParseError, SizeLimitExceeded
from .finset import FiniteSet

MAX_GROUP_ORDER = 8


@dataclass(frozen=True)
class FiniteGroup:
    elements: FiniteSet
    table: Mapping[tuple[str, str], str] = field(compare=False, repr=False)
    identity: str = ""
    inverses: Mapping[str, str] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        G = list(self.elements)
        if not G:
            raise GroupAxiomError("a group has at least one element")
        for g in G:
            for h in G:
                if self.table.get((g, h)) not in self.elements:
                    raise GroupAxiomError(f"{g}*{h} is undefined or outside the group")
        mul = self.mul
        ids = [e for e in G if all(mul(e, g) == g == mul(g, e) for g in G)]
        if not ids:
            raise GroupAxiomError("no identity element")
        object.__setattr__(self, "identity", ids[0])
        e = ids[0]
        inv = {}
        for g in G:
            cands = [h for h in G if mul(g, h) == e == mul(h, g)]
            if not cands:
                raise GroupAxiomError(f"{g} has no inverse")
            inv[g] = cands[0]
        object.__setattr__(self, "inverses", inv)
        for a in G:
            for b in G:
                ab = mul(a, b)
                for c in G:
                    if mul(ab, c) != mul(a, mul(b, c)):
                        raise GroupAxiomError(f"not associative at ({a},{b},{c})")

    def mul(self, g: str, h: str) -> str:
        return self.table[(g, h)]

    def inv(self, g: str) -> str:
        return self.inverses[g]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


@dataclass(frozen=True)
class GAction:
    group: FiniteGroup
    carrier: FiniteSet
    action: Mapping[tuple[str, str], str] = field(compare=False, repr=False)

    def __post_init__(self):
        G, X = self.group, self.carrier
        for g in G:
            for x in X:
                if self.action.get((g, x)) not in X:
                    raise GroupAxiomError(f"{g}·{x} is undefined or outside the carrier")
        for x in X:
            if self.act(G.identity, x) != x:
                raise GroupAxiomError(f"e·{x} != {x}")
            for g in G:
                for h in G:
                    if self.act(h, self.act(g, x)) != self.act(G.mul(h, g), x):
                        raise GroupAxiomError(f"h(gx) != (hg)x for h={h}, g={g}, x={x}")

    def act(self, g: str, x: str) -> str:
        return self.action[(g, x)]

    def __len__(self):
        return len(self.carrier)


# -- constructors -----------------------------------------------------------


def group_from_function(elements, mul) -> FiniteGroup:
    X = FiniteSet(elements)
    return FiniteGroup(X, {(g, h): mul(g, h) for g in X for h in X})


def trivial_group() -> FiniteGroup:
    return group_from_function(["e"], lambda g, h: "e")


def cyclic_group(n: int) -> FiniteGroup:
    return group_from_function([str(i) for i in range(n)], lambda g, h: str((int(g) + int(h)) % n))


def _perm_label(p: tuple[int, ...]) -> str:
    return "".join(str(i + 1) for i in p)


def symmetric_group(n: int) -> FiniteGroup:
    """Permutations of ``1..n`` written as image words, composed right to left."""
    perms = {_perm_label(p): p for p in permutations(range(n))}

    def mul(g, h):
        pg, ph = perms[g], perms[h]
        return _perm_label(tuple(pg[ph[i]] for i in range(n)))

    return group_from_function(perms, mul)


def action_from_function(G: FiniteGroup, carrier, act) -> GAction:
    X = FiniteSet(carrier)
    return GAction(G, X, {(g, x): act(g, x) for g in G for x in X})


def trivial_action(G: FiniteGroup, carrier) -> GAction:
    return action_from_function(G, carrier, lambda g, x: x)


def regular_action(G: FiniteGroup) -> GAction:
    """``G`` acting on itself by left multiplication."""
    return action_from_function(G, G.elements, G.mul)


def disjoint_union(a: GAction, b: GAction) -> GAction:
    carrier = [f"inl({x})" for x in a.carrier] + [f"inr({y})" for y in b.carrier]
    act = {}
    for g in a.group:
        act.update({(g, f"inl({x})"): f"inl({a.act(g, x)})" for x in a.carrier})
        act.update({(g, f"inr({y})"): f"inr({b.act(g, y)})" for y in b.carrier})
    return GAction(a.group, FiniteSet(carrier), act)


def subsets_action(n: int, k: int) -> GAction:
    """``S_n`` acting on ``k``-element subsets of ``{1..n}`` by image."""
    G = symmetric_group(n)
    subsets = ["".join(str(i) for i in c) for c in combinations(range(1, n + 1), k)]

    def act(g, s):
        return "".join(sorted(g[int(i) - 1] for i in s))

    return action_from_function(G, subsets, act)


def _generators(G: FiniteGroup) -> list[str]:
    gens: list[str] = []
    span = {G.identity}
    for g in G:
        if g not in span:
            gens.append(g)
            span = _closure(G, gens)
    return gens


def _closure(G: FiniteGroup, gens) -> set[str]:
    span = {G.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = G.mul(g, x)
                if y not in span:
                    span.add(y)
                    nxt.append(y)
        frontier = nxt
    return span


def random_action(G: FiniteGroup, size: int, rng: random.Random, attempts: int = 2000) -> GAction:
    """A random action on ``{0..size-1}``, found by sampling generator images.

    Each attempt assigns a random permutation to every generator, extends it
    along words, and keeps the result only if it is a homomorphism.  Falls
    back to the trivial action.
    """
    X = [str(i) for i in range(size)]
    gens = _generators(G)
    for _ in range(attempts):
        images = {}
        for g in gens:
            p = X[:]
            rng.shuffle(p)
            images[g] = dict(zip(X, p))
        rep = {G.identity: {x: x for x in X}}
        frontier = [G.identity]
        ok = True
        while frontier and ok:
            nxt = []
            for w in frontier:
                for g in gens:
                    gw = G.mul(g, w)
                    perm = {x: images[g][rep[w][x]] for x in X}
                    if gw in rep:
                        if rep[gw] != perm:
                            ok = False
                            break
                    else:
                        rep[gw] = perm
                        nxt.append(gw)
                if not ok:
                    break
            frontier = nxt
        if not ok:
            continue
        try:
            return GAction(G, FiniteSet(X), {(g, x): rep[g][x] for g in G for x in X})
        except GroupAxiomError:
            continue
    return trivial_action(G, X)


# -- orbits -----------------------------------------------------------------


def orbits(a: GAction) -> list[FiniteSet]:
    seen: set[str] = set()
    out = []
    for x in a.carrier:
        if x in seen:
            continue
        orbit = FiniteSet({a.act(g, x) for g in a.group})
        seen.update(orbit)
        out.append(orbit)
    return out


def power(a: GAction) -> int:
    return len(orbits(a))


def restrict(a: GAction, subset: FiniteSet) -> GAction:
    return GAction(a.group, subset, {(g, x): a.act(g, x) for g in a.group for x in subset})


def is_connected(a: GAction) -> bool:
    return power(a) == 1


# -- connected objects ------------------------------------------------------


@dataclass(frozen=True)
class Equivalence:
    """An equivalence on the group, given by its classes."""

    classes: tuple[FiniteSet, ...]

    def class_of(self, g: str) -> FiniteSet:
        for c in self.classes:
            if g in c:
                return c
        raise KeyError(g)


def _relation_from_kernel(G: FiniteGroup, H: frozenset[str]):
    return {(g, h) for g in G for h in G if G.mul(G.inv(g), h) in H}


def is_equivariant_equivalence(G: FiniteGroup, rel: set[tuple[str, str]]) -> bool:
    elems = list(G)
    if any((g, g) not in rel for g in elems):
        return False
    if any((h, g) not in rel for g, h in rel):
        return False
    for g, h in rel:
        for k in elems:
            if (h, k) in rel and (g, k) not in rel:
                return False
    return all((G.mul(k, g), G.mul(k, h)) in rel for g, h in rel for k in elems)


def equivariant_equivalences(G: FiniteGroup) -> list[Equivalence]:
    if len(G) > MAX_GROUP_ORDER:
        raise SizeLimitExceeded(f"|G| = {len(G)} exceeds {MAX_GROUP_ORDER}")
    e = G.identity
    rest = [g for g in G if g != e]
    out = []
    for k in range(len(rest) + 1):
        for extra in combinations(rest, k):
            H = frozenset((e, *extra))
            rel = _relation_from_kernel(G, H)
            if not is_equivariant_equivalence(G, rel):
                continue
            classes = {FiniteSet(h for h in G if (g, h) in rel) for g in G}
            out.append(Equivalence(tuple(sorted(classes, key=lambda c: c.elements))))
    return out


def _class_label(c: FiniteSet) -> str:
    return "[" + ",".join(c) + "]"


def quotient_action(G: FiniteGroup, eq: Equivalence) -> GAction:
    """``G/~`` with ``g[h] = [gh]``."""
    return action_from_function(
        G,
        [_class_label(c) for c in eq.classes],
        lambda g, lbl: _class_label(eq.class_of(G.mul(g, lbl[1:-1].split(",")[0]))),
    )


def equivariant_bijections(a: GAction, b: GAction) -> Iterator[dict[str, str]]:
    """Every equivariant bijection ``a -> b``, by exhaustive search."""
    if len(a) != len(b):
        return
    xs = list(a.carrier)
    for image in permutations(b.carrier):
        f = dict(zip(xs, image))
        if all(f[a.act(g, x)] == b.act(g, f[x]) for g in a.group for x in xs):
            yield f


def isomorphic(a: GAction, b: GAction) -> bool:
    return next(equivariant_bijections(a, b), None) is not None


def connected_objects(G: FiniteGroup) -> list[list[GAction]]:
    """Quotients ``G/~`` grouped into isomorphism classes."""
    classes: list[list[GAction]] = []
    for eq in equivariant_equivalences(G):
        q = quotient_action(G, eq)
        for cls in classes:
            if isomorphic(cls[0], q):
                cls.append(q)
                break
        else:
            classes.append([q])
    return classes


# -- morphisms --------------------------------------------------------------


def _identity_class(c: GAction) -> str:
    e = c.group.identity
    return next(lbl for lbl in c.carrier if e in lbl[1:-1].split(","))


def hom_count(G: FiniteGroup, quotient: GAction, target: GAction) -> int:
    """Equivariant maps ``G/~ -> X``, counted through the value ``x0`` at ``[e]``.

    A choice ``x0`` extends to ``[g] |-> g·x0`` exactly when that assignment is
    well defined on classes.
    """
    base = _identity_class(quotient)
    total = 0
    for x0 in target.carrier:
        image: dict[str, str] = {}
        ok = True
        for g in G:
            cls = quotient.act(g, base)
            y = target.act(g, x0)
            if image.setdefault(cls, y) != y:
                ok = False
                break
        total += ok
    return total


def equivariant_maps(a: GAction, b: GAction) -> Iterator[dict[str, str]]:
    """All equivariant maps ``a -> b`` by backtracking over every assignment."""
    xs = list(a.carrier)

    def extend(i, f):
        if i == len(xs):
            yield dict(f)
            return
        x = xs[i]
        for y in b.carrier:
            f[x] = y
            consistent = all(
                f[a.act(g, z)] == b.act(g, f[z])
                for z in xs[: i + 1]
                for g in a.group
                if a.act(g, z) in f
            )
            if consistent:
                yield from extend(i + 1, f)
            del f[x]

    yield from extend(0, {})


def fixed_points(a: GAction) -> list[str]:
    return [x for x in a.carrier if all(a.act(g, x) == x for g in a.group)]


@dataclass
class WidthReport:
    order: int
    connected_classes: int
    bound: int
    hom_checks: list[tuple[str, int, int, bool]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.connected_classes <= self.bound and all(ok for *_, ok in self.hom_checks)


def width_report(G: FiniteGroup, samples: list[GAction]) -> WidthReport:
    classes = connected_objects(G)
    report = WidthReport(len(G), len(classes), 2 ** len(G))
    for i, X in enumerate(samples):
        for cls in classes:
            C = cls[0]
            n = hom_count(G, C, X)
            report.hom_checks.append((f"sample{i}:{len(C)}", n, len(X), n <= len(X)))
    return report


# -- text formats -----------------------------------------------------------


def parse_group(text: str) -> FiniteGroup:
    """Cayley table: a header line of elements, then ``g | g*h1 g*h2 ...`` rows."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty group file")
    header = lines[0].replace("|", " ").split()
    table = {}
    for ln in lines[1:]:
        g, sep, row = ln.partition("|")
        if not sep:
            raise ParseError(f"bad row {ln!r}")
        vals = row.split()
        if len(vals) != len(header):
            raise ParseError(f"row for {g.strip()} has {len(vals)} entries, expected {len(header)}")
        for h, v in zip(header, vals):
            table[(g.strip(), h)] = v
    return FiniteGroup(FiniteSet(header), table)


def format_group(G: FiniteGroup) -> str:
    lines = ["  | " + " ".join(G.elements)]
    lines += [f"{g} | " + " ".join(G.mul(g, h) for h in G) for g in G]
    return "\n".join(lines) + "\n"


def parse_action(G: FiniteGroup, text: str) -> GAction:
    """Rows ``g, x -> x'``."""
    act = {}
    carrier = set()
    for raw in text.splitlines():
        ln = raw.split("#", 1)[0].strip()
        if not ln:
            continue
        lhs, sep, rhs = ln.partition("->")
        g, comma, x = lhs.partition(",")
        if not sep or not comma:
            raise ParseError(f"bad action row {raw!r}")
        g, x, y = g.strip(), x.strip(), rhs.strip()
        act[(g, x)] = y
        carrier.update((x, y))
    return GAction(G, FiniteSet(carrier), act)


def format_action(a: GAction) -> str:
    return "".join(f"{g}, {x} -> {a.act(g, x)}\n" for g in a.group for x in a.carrier)
