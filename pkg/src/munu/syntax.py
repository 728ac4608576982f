"""Text grammars for functor expressions and values.

Functors::

    expr    := sum ('.' expr)?            # composition, loosest, right-assoc
    sum     := prod ('+' prod)*
    prod    := atom ('*' atom)*
    atom    := 'Id' | 'C{' atoms '}' | 'Pf(' expr ')' | 'Sig[' ops ']' | '(' expr ')'

Values are read in two passes: a generic reader builds an untyped tree of
atoms, tuples, sets and applications, and a shape-directed pass turns it into
a :class:`~munu.functor.CanonValue` for a given functor.  Coproduct
injections may be written ``inl(..)``/``inr(..)`` or left implicit when only
one summand fits.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable

from .errors import ParseError, ShapeMismatch
from .finset import ATOM_RE, FiniteSet
from .functor import (
    Compose,
    Const,
    ConstAtom,
    Coproduct,
    FunctorExpr,
    Id,
    InL,
    InR,
    Op,
    Pair,
    Pfin,
    Product,
    Sig,
    CanonValue,
    Var,
    set_of,
)

_TOKEN = re.compile(r"\s*(?:(?P<punct>[{}()\[\],*+.])|(?P<word>" + ATOM_RE.pattern + r"))")


def _tokenize(text: str) -> list[str]:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        out.append(m.group("punct") or m.group("word"))
        pos = m.end()
    return out


class _Stream:
    def __init__(self, tokens: list[str], source: str):
        self.tokens = tokens
        self.i = 0
        self.source = source

    def peek(self) -> str | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError(f"unexpected end of input in {self.source!r}")
        self.i += 1
        return tok

    def expect(self, tok: str):
        got = self.next()
        if got != tok:
            raise ParseError(f"expected {tok!r}, got {got!r} in {self.source!r}")

    def done(self):
        if self.peek() is not None:
            raise ParseError(f"trailing input {self.peek()!r} in {self.source!r}")


# -- functors ---------------------------------------------------------------


def parse_functor(text: str) -> FunctorExpr:
    s = _Stream(_tokenize(text), text)
    F = _functor_expr(s)
    s.done()
    return F


def _functor_expr(s: _Stream) -> FunctorExpr:
    F = _functor_sum(s)
    if s.peek() == ".":
        s.next()
        return Compose(F, _functor_expr(s))
    return F


def _functor_sum(s: _Stream) -> FunctorExpr:
    F = _functor_prod(s)
    while s.peek() == "+":
        s.next()
        F = Coproduct(F, _functor_prod(s))
    return F


def _functor_prod(s: _Stream) -> FunctorExpr:
    F = _functor_atom(s)
    while s.peek() == "*":
        s.next()
        F = Product(F, _functor_atom(s))
    return F


def _functor_atom(s: _Stream) -> FunctorExpr:
    tok = s.next()
    if tok == "(":
        F = _functor_expr(s)
        s.expect(")")
        return F
    if tok == "Id":
        return Id()
    if tok == "C":
        s.expect("{")
        atoms = []
        while s.peek() != "}":
            atoms.append(s.next())
            if s.peek() == ",":
                s.next()
        s.expect("}")
        try:
            return Const(FiniteSet(atoms))
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    if tok == "Pf":
        s.expect("(")
        F = _functor_expr(s)
        s.expect(")")
        return Pfin(F)
    if tok == "Sig":
        s.expect("[")
        ops = []
        while s.peek() != "]":
            s.expect("(")
            name = s.next()
            s.expect(",")
            arity = s.next()
            if not arity.isdigit():
                raise ParseError(f"arity must be a natural number, got {arity!r}")
            s.expect(")")
            ops.append((name, int(arity)))
            if s.peek() == ",":
                s.next()
        s.expect("]")
        try:
            return Sig(tuple(ops))
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    raise ParseError(f"unexpected token {tok!r} in functor {s.source!r}")


# -- generic value syntax ---------------------------------------------------


@dataclass(frozen=True)
class Syn:
    kind: str  # 'atom' | 'tuple' | 'set' | 'app'
    name: str = ""
    children: tuple[Syn, ...] = ()


def read_syntax(text: str) -> Syn:
    s = _Stream(_tokenize(text), text)
    node = _syn(s)
    s.done()
    return node


def _syn_list(s: _Stream, close: str) -> tuple[Syn, ...]:
    items = []
    while s.peek() != close:
        items.append(_syn(s))
        if s.peek() == ",":
            s.next()
        elif s.peek() != close:
            raise ParseError(f"expected ',' or {close!r} in {s.source!r}")
    s.expect(close)
    return tuple(items)


def _syn(s: _Stream) -> Syn:
    tok = s.next()
    if tok == "{":
        return Syn("set", children=_syn_list(s, "}"))
    if tok == "(":
        items = _syn_list(s, ")")
        if len(items) == 1:
            return items[0]
        return Syn("tuple", children=items)
    if ATOM_RE.fullmatch(tok):
        if s.peek() == "(":
            s.next()
            return Syn("app", tok, _syn_list(s, ")"))
        return Syn("atom", tok)
    raise ParseError(f"unexpected token {tok!r} in {s.source!r}")


Slot = Callable[[Syn], CanonValue]


def to_value(F: FunctorExpr, syn: Syn, slot: Slot) -> CanonValue:
    """Interpret ``syn`` as an element of ``F(X)``; ``slot`` reads Id-positions."""
    match F:
        case Id():
            return slot(syn)
        case Const(atoms):
            if syn.kind == "atom" and syn.name in atoms:
                return ConstAtom(syn.name)
        case Product(G, H):
            if syn.kind == "tuple" and len(syn.children) == 2:
                return Pair(to_value(G, syn.children[0], slot), to_value(H, syn.children[1], slot))
        case Coproduct(G, H):
            if syn.kind == "app" and syn.name in ("inl", "inr") and len(syn.children) == 1:
                if syn.name == "inl":
                    return InL(to_value(G, syn.children[0], slot))
                return InR(to_value(H, syn.children[0], slot))
            found = []
            for inj, side in ((InL, G), (InR, H)):
                try:
                    found.append(inj(to_value(side, syn, slot)))
                except ShapeMismatch:
                    pass
            if len(found) == 1:
                return found[0]
            if len(found) == 2:
                raise ShapeMismatch(f"ambiguous coproduct value; write inl(..)/inr(..): {found[0].text}")
        case Pfin(G):
            if syn.kind == "set":
                return set_of(to_value(G, c, slot) for c in syn.children)
        case Sig():
            k = F.arity(syn.name) if syn.kind in ("atom", "app") else None
            if k is not None and k == len(syn.children):
                return Op(syn.name, tuple(slot(c) for c in syn.children))
        case Compose(G, H):
            return to_value(G, syn, lambda c: to_value(H, c, slot))
    raise ShapeMismatch(f"{render(syn)} does not have shape {F}")


def render(syn: Syn) -> str:
    kids = ",".join(render(c) for c in syn.children)
    match syn.kind:
        case "atom":
            return syn.name
        case "tuple":
            return f"({kids})"
        case "set":
            return "{" + kids + "}"
    return f"{syn.name}({kids})"


def var_slot(labels) -> Slot:
    labels = set(labels)

    def slot(syn: Syn) -> CanonValue:
        if syn.kind == "atom" and syn.name in labels:
            return Var(syn.name)
        raise ShapeMismatch(f"{render(syn)} is not one of {sorted(labels)}")

    return slot


def parse_value(F: FunctorExpr, text: str, X) -> CanonValue:
    """Parse an element of ``F(X)`` whose Id-positions are labels of ``X``."""
    return to_value(F, read_syntax(text), var_slot(X))


def parse_term(F: FunctorExpr, text: str) -> CanonValue:
    """Parse a closed, well-founded value (an element of the initial algebra)."""

    def slot(syn: Syn) -> CanonValue:
        return to_value(F, syn, slot)

    return slot(read_syntax(text))


def parse_layered(F: FunctorExpr, text: str, depth: int) -> CanonValue:
    """Parse an element of ``F^depth(1)`` written with ``•`` at the cut."""

    def at(d: int) -> Slot:
        if d == 0:
            return var_slot(["•"])
        return lambda syn: to_value(F, syn, at(d - 1))

    return at(depth)(read_syntax(text))
