"""Grammar functors on finite sets and their canonical values.

A functor expression is built from ``Id``, constants, binary products and
coproducts, the finite power set, polynomial signatures and composition.
Elements of ``F(X)`` are :class:`CanonValue` trees whose ``Var`` leaves name
elements of ``X``.  Every value carries its printed form in ``text``; the
canonical order on values is the string order of that text, which makes the
printed form of a nested value identical to the label of the corresponding
flat element of an iterated functor application.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product as cartesian
from typing import Callable, Iterable

from . import finset
from .errors import EmptyIntersection, ShapeMismatch, SizeLimitExceeded
from .finset import FiniteFunction, FiniteSet

DEFAULT_SIZE_LIMIT = 10**6


# -- functor expressions ----------------------------------------------------


class FunctorExpr:
    __slots__ = ()

    def __mul__(self, other: FunctorExpr) -> FunctorExpr:
        return Product(self, other)

    def __add__(self, other: FunctorExpr) -> FunctorExpr:
        return Coproduct(self, other)


@dataclass(frozen=True, slots=True)
class Id(FunctorExpr):
    def __str__(self):
        return "Id"


@dataclass(frozen=True, slots=True)
class Const(FunctorExpr):
    atoms: FiniteSet

    def __str__(self):
        return "C{" + ",".join(self.atoms) + "}"


@dataclass(frozen=True, slots=True)
class Product(FunctorExpr):
    left: FunctorExpr
    right: FunctorExpr

    def __str__(self):
        return f"{_wrap(self.left, 2)} * {_wrap(self.right, 3)}"


@dataclass(frozen=True, slots=True)
class Coproduct(FunctorExpr):
    left: FunctorExpr
    right: FunctorExpr

    def __str__(self):
        return f"{_wrap(self.left, 1)} + {_wrap(self.right, 2)}"


@dataclass(frozen=True, slots=True)
class Pfin(FunctorExpr):
    inner: FunctorExpr

    def __str__(self):
        return f"Pf({self.inner})"


@dataclass(frozen=True, slots=True)
class Sig(FunctorExpr):
    ops: tuple[tuple[str, int], ...]

    def __post_init__(self):
        names = [name for name, _ in self.ops]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate operation names in {names}")
        if any(not isinstance(k, int) or k < 0 for _, k in self.ops):
            raise ValueError("arities must be natural numbers")

    def arity(self, name: str) -> int | None:
        for op, k in self.ops:
            if op == name:
                return k
        return None

    def __str__(self):
        return "Sig[" + ",".join(f"({n},{k})" for n, k in self.ops) + "]"


@dataclass(frozen=True, slots=True)
class Compose(FunctorExpr):
    outer: FunctorExpr
    inner: FunctorExpr

    def __str__(self):
        return f"{_wrap(self.outer, 1)} . {_wrap(self.inner, 0)}"


def _prec(F: FunctorExpr) -> int:
    match F:
        case Compose():
            return 0
        case Coproduct():
            return 1
        case Product():
            return 2
    return 3


def _wrap(F: FunctorExpr, at_least: int) -> str:
    return str(F) if _prec(F) >= at_least else f"({F})"


def const(*atoms: str) -> Const:
    return Const(FiniteSet(atoms))


# -- canonical values -------------------------------------------------------


class CanonValue:
    __slots__ = ()
    text: str

    def __str__(self):
        return self.text

    def __lt__(self, other: CanonValue) -> bool:
        return self.text < other.text


def _atom_text(atom) -> str:
    return atom.text if isinstance(atom, CanonValue) else str(atom)


@dataclass(frozen=True, slots=True)
class Var(CanonValue):
    """A leaf naming an element of the argument set.

    ``atom`` is normally a string label; :func:`munu.algebra.iota_inverse`
    stores whole subterms here.
    """

    atom: object
    text: str = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "text", _atom_text(self.atom))


@dataclass(frozen=True, slots=True)
class ConstAtom(CanonValue):
    atom: str
    text: str = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "text", self.atom)


@dataclass(frozen=True, slots=True)
class Pair(CanonValue):
    left: CanonValue
    right: CanonValue
    text: str = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "text", f"({self.left.text},{self.right.text})")


@dataclass(frozen=True, slots=True)
class InL(CanonValue):
    value: CanonValue
    text: str = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "text", f"inl({self.value.text})")


@dataclass(frozen=True, slots=True)
class InR(CanonValue):
    value: CanonValue
    text: str = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "text", f"inr({self.value.text})")


@dataclass(frozen=True, slots=True)
class SetOf(CanonValue):
    """A finite set of values; canonical when items are sorted by text and distinct.

    The constructor stores items as given; use :func:`set_of` to build the
    canonical form.
    """

    items: tuple[CanonValue, ...]
    text: str = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))
        object.__setattr__(
            self, "text", "{" + ",".join(v.text for v in self.items) + "}"
        )


@dataclass(frozen=True, slots=True)
class Op(CanonValue):
    name: str
    args: tuple[CanonValue, ...] = ()
    text: str = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        if self.args:
            body = ",".join(a.text for a in self.args)
            object.__setattr__(self, "text", f"{self.name}({body})")
        else:
            object.__setattr__(self, "text", self.name)


def _text_hash(self) -> int:
    return hash(self.text)


# structural equality stays; hashing goes through the cached text
for _cls in (Var, ConstAtom, Pair, InL, InR, SetOf, Op):
    _cls.__hash__ = _text_hash

BULLET = Var("•")


def set_of(items: Iterable[CanonValue]) -> SetOf:
    uniq = {v.text: v for v in items}
    return SetOf(tuple(uniq[k] for k in sorted(uniq)))


def canonicalize(v: CanonValue) -> CanonValue:
    """Deep canonical form: every ``SetOf`` sorted and deduplicated."""
    match v:
        case Var(atom) if isinstance(atom, CanonValue):
            return Var(canonicalize(atom))
        case Var() | ConstAtom():
            return v
        case Pair(l, r):
            return Pair(canonicalize(l), canonicalize(r))
        case InL(x):
            return InL(canonicalize(x))
        case InR(x):
            return InR(canonicalize(x))
        case SetOf(items):
            return set_of(canonicalize(x) for x in items)
        case Op(name, args):
            return Op(name, tuple(canonicalize(a) for a in args))
    raise TypeError(f"not a CanonValue: {v!r}")


def is_canonical(v: CanonValue) -> bool:
    return canonicalize(v) == v


def variables(v: CanonValue) -> list[Var]:
    """All ``Var`` leaves, left to right."""
    out: list[Var] = []

    def walk(x):
        match x:
            case Var():
                out.append(x)
            case ConstAtom():
                pass
            case Pair(l, r):
                walk(l)
                walk(r)
            case InL(y) | InR(y):
                walk(y)
            case SetOf(items):
                for y in items:
                    walk(y)
            case Op(_, args):
                for y in args:
                    walk(y)

    walk(v)
    return out


# -- shape-directed traversal -----------------------------------------------


def validate(F: FunctorExpr, v: CanonValue, slot: Callable[[CanonValue], bool]) -> bool:
    """True iff ``v`` has the shape of ``F`` and every Id-slot passes ``slot``."""
    match F:
        case Id():
            return slot(v)
        case Const(atoms):
            return isinstance(v, ConstAtom) and v.atom in atoms
        case Product(G, H):
            return isinstance(v, Pair) and validate(G, v.left, slot) and validate(H, v.right, slot)
        case Coproduct(G, H):
            if isinstance(v, InL):
                return validate(G, v.value, slot)
            if isinstance(v, InR):
                return validate(H, v.value, slot)
            return False
        case Pfin(G):
            if not isinstance(v, SetOf):
                return False
            texts = [x.text for x in v.items]
            if texts != sorted(set(texts)):
                return False
            return all(validate(G, x, slot) for x in v.items)
        case Sig():
            if not isinstance(v, Op):
                return False
            k = F.arity(v.name)
            return k == len(v.args) and all(slot(a) for a in v.args)
        case Compose(G, H):
            return validate(G, v, lambda w: validate(H, w, slot))
    raise TypeError(f"not a functor: {F!r}")


def validate_over(F: FunctorExpr, v: CanonValue, X: Iterable[str]) -> bool:
    labels = set(X)
    return validate(F, v, lambda w: isinstance(w, Var) and w.atom in labels)


def fmap(F: FunctorExpr, v: CanonValue, g: Callable[[CanonValue], CanonValue]) -> CanonValue:
    """Replace every Id-slot ``w`` of ``v`` by ``g(w)`` and re-canonicalize."""
    match F:
        case Id():
            return g(v)
        case Const():
            return v
        case Product(G, H):
            return Pair(fmap(G, v.left, g), fmap(H, v.right, g))
        case Coproduct(G, H):
            if isinstance(v, InL):
                return InL(fmap(G, v.value, g))
            return InR(fmap(H, v.value, g))
        case Pfin(G):
            return set_of(fmap(G, x, g) for x in v.items)
        case Sig():
            return Op(v.name, tuple(g(a) for a in v.args))
        case Compose(G, H):
            return fmap(G, v, lambda w: fmap(H, w, g))
    raise TypeError(f"not a functor: {F!r}")


def slots(F: FunctorExpr, v: CanonValue) -> list[CanonValue]:
    """Id-slot contents of ``v`` in traversal order."""
    out: list[CanonValue] = []

    def collect(w):
        out.append(w)
        return w

    fmap(F, v, collect)
    return out


def relabel(F: FunctorExpr, v: CanonValue, f: Callable[[str], str]) -> CanonValue:
    """``F(f)`` applied to a single flat value."""
    return fmap(F, v, lambda w: Var(f(w.atom)))


# -- enumeration ------------------------------------------------------------


def count(F: FunctorExpr, n: int, cap: int = DEFAULT_SIZE_LIMIT) -> int:
    """``|F(X)|`` for ``|X| = n``, saturating at ``cap + 1``."""
    over = cap + 1
    match F:
        case Id():
            r = n
        case Const(atoms):
            r = len(atoms)
        case Product(G, H):
            r = count(G, n, cap) * count(H, n, cap)
        case Coproduct(G, H):
            r = count(G, n, cap) + count(H, n, cap)
        case Pfin(G):
            m = count(G, n, cap)
            r = 2**m if m < 64 else over
        case Sig(ops):
            r = sum(n**k for _, k in ops)
        case Compose(G, H):
            r = count(G, count(H, n, cap), cap)
        case _:
            raise TypeError(f"not a functor: {F!r}")
    return min(r, over)


def _enumerate(F: FunctorExpr, leaves: list[CanonValue]) -> list[CanonValue]:
    match F:
        case Id():
            return list(leaves)
        case Const(atoms):
            return [ConstAtom(a) for a in atoms]
        case Product(G, H):
            return [Pair(a, b) for a in _enumerate(G, leaves) for b in _enumerate(H, leaves)]
        case Coproduct(G, H):
            return [InL(a) for a in _enumerate(G, leaves)] + [InR(b) for b in _enumerate(H, leaves)]
        case Pfin(G):
            inner = sorted(_enumerate(G, leaves))
            return [
                SetOf(combo)
                for k in range(len(inner) + 1)
                for combo in combinations(inner, k)
            ]
        case Sig(ops):
            return [
                Op(name, args)
                for name, k in ops
                for args in cartesian(leaves, repeat=k)
            ]
        case Compose(G, H):
            return _enumerate(G, _enumerate(H, leaves))
    raise TypeError(f"not a functor: {F!r}")


@lru_cache(maxsize=256)
def elements(F: FunctorExpr, X: FiniteSet, limit: int = DEFAULT_SIZE_LIMIT) -> tuple[CanonValue, ...]:
    """All values of ``F(X)`` sorted canonically; leaves are ``Var(label)``."""
    size = count(F, len(X), limit)
    if size > limit:
        raise SizeLimitExceeded(f"|{F}({len(X)} elements)| exceeds {limit}")
    return tuple(sorted(_enumerate(F, [Var(x) for x in X])))


def apply_set(F: FunctorExpr, X: FiniteSet, limit: int = DEFAULT_SIZE_LIMIT) -> FiniteSet:
    return FiniteSet(v.text for v in elements(F, X, limit))


def apply_fun(F: FunctorExpr, f: FiniteFunction, limit: int = DEFAULT_SIZE_LIMIT) -> FiniteFunction:
    dom = elements(F, f.domain, limit)
    cod = apply_set(F, f.codomain, limit)
    return FiniteFunction(
        FiniteSet(v.text for v in dom), cod, {v.text: relabel(F, v, f).text for v in dom}
    )


def value_of(F: FunctorExpr, X: FiniteSet, label: str, limit: int = DEFAULT_SIZE_LIMIT) -> CanonValue:
    for v in elements(F, X, limit):
        if v.text == label:
            return v
    raise KeyError(label)


# -- Trnková's intersection argument ----------------------------------------


@dataclass
class VerificationReport:
    checks: list[tuple[str, bool]] = field(default_factory=list)
    details: dict[str, str] = field(default_factory=dict)

    def add(self, name: str, ok: bool) -> bool:
        self.checks.append((name, bool(ok)))
        return ok

    @property
    def ok(self) -> bool:
        return all(ok for _, ok in self.checks)

    def __str__(self):
        lines = [f"{'PASS' if ok else 'FAIL'}  {name}" for name, ok in self.checks]
        lines += [f"{k}: {v}" for k, v in self.details.items()]
        return "\n".join(lines)


def splittings(b1: FiniteFunction, a1: FiniteFunction, a2: FiniteFunction, t: str):
    """The retractions ``b̄1: B -> B1`` and ``ā2: B2 -> A`` built from ``t ∈ A``."""
    inv_b1 = {y: x for x, y in b1.mapping.items()}
    inv_a2 = {y: x for x, y in a2.mapping.items()}
    b1_bar = finset.from_callable(b1.codomain, b1.domain, lambda x: inv_b1.get(x, a1(t)))
    a2_bar = finset.from_callable(a2.codomain, a2.domain, lambda x: inv_a2.get(x, t))
    return b1_bar, a2_bar


def _splitting_equations(report, prefix, b1, b2, a1, a2, b1_bar, a2_bar):
    c = finset.compose
    report.add(f"{prefix}b̄1·b1 = id", c(b1_bar, b1) == finset.identity(b1.domain))
    report.add(f"{prefix}ā2·a2 = id", c(a2_bar, a2) == finset.identity(a2.domain))
    report.add(f"{prefix}a1·ā2 = b̄1·b2", c(a1, a2_bar) == c(b1_bar, b2))


def check_intersection_preservation(
    F: FunctorExpr, b1: FiniteFunction, b2: FiniteFunction, limit: int = DEFAULT_SIZE_LIMIT
) -> VerificationReport:
    """Verify that ``F`` maps the intersection square of ``b1``, ``b2`` to a pullback."""
    report = VerificationReport()
    report.add("b1 injective", b1.is_injective())
    report.add("b2 injective", b2.is_injective())
    A, a1, a2 = finset.pullback(b1, b2)
    if not len(A):
        raise EmptyIntersection("images of b1 and b2 are disjoint")
    t = A.elements[0]
    report.details["t"] = t
    report.add("square commutes", finset.compose(b1, a1) == finset.compose(b2, a2))

    b1_bar, a2_bar = splittings(b1, a1, a2, t)
    _splitting_equations(report, "", b1, b2, a1, a2, b1_bar, a2_bar)

    Fb1, Fb2 = apply_fun(F, b1, limit), apply_fun(F, b2, limit)
    Fa1, Fa2 = apply_fun(F, a1, limit), apply_fun(F, a2, limit)
    report.add("F-square commutes", finset.compose(Fb1, Fa1) == finset.compose(Fb2, Fa2))
    _splitting_equations(
        report, "F: ", Fb1, Fb2, Fa1, Fa2, apply_fun(F, b1_bar, limit), apply_fun(F, a2_bar, limit)
    )

    P, _, _ = finset.pullback(Fb1, Fb2)
    comparison = [finset.pair_label(Fa1(u), Fa2(u)) for u in Fa1.domain]
    report.add(
        "FA -> pullback(Fb1, Fb2) is bijective",
        len(set(comparison)) == len(comparison) and set(comparison) == set(P),
    )
    report.details["|FA|"] = str(len(Fa1.domain))
    report.details["|pullback|"] = str(len(P))
    return report
