import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from munu import finset
from munu.algebra import embed_mu_to_nu
from munu.coalgebra import (
    Coalgebra,
    RationalElement,
    behavioral_partition,
    behaviorally_equal,
    format_coalgebra,
    is_homomorphism,
    kernels,
    minimize,
    parse_coalgebra,
    project,
    quotient_map,
    reachable,
)
from munu.errors import FunctorMismatch, ParseError, ShapeMismatch
from munu.finset import FiniteFunction, FiniteSet
from munu.functor import BULLET, Var, set_of
from munu.syntax import parse_functor, parse_term

from generators import POINTED, random_coalgebra

PF = parse_functor("Pf(Id)")
TWO_LOOPS = """
functor: Pf(Id)
states: {x, y}
x -> {x}   # self-singleton
y -> {y}
"""


def stream(word: str) -> RationalElement:
    """The periodic stream ``word^ω`` over the letters of ``word``."""
    F = parse_functor("C{a,b} * Id")
    n = len(word)
    rows = "\n".join(f"s{i} -> ({word[i]}, s{(i + 1) % n})" for i in range(n))
    states = ", ".join(f"s{i}" for i in range(n))
    return RationalElement(parse_coalgebra(f"functor: {F}\nstates: {{{states}}}\n{rows}"), "s0")


def brute_equal(x, y, k):
    return all(project(x, n) == project(y, n) for n in range(k + 1))


def test_parse_and_format():
    c = parse_coalgebra(TWO_LOOPS)
    assert c.structure["x"] == set_of([Var("x")])
    assert parse_coalgebra(format_coalgebra(c)) == c
    with pytest.raises(ShapeMismatch):
        parse_coalgebra("functor: Pf(Id)\nstates: {x}\nx -> {z}")
    with pytest.raises(ParseError):
        parse_coalgebra("states: {x}\nx -> {x}")
    with pytest.raises(ShapeMismatch):
        Coalgebra(PF, FiniteSet("xy"), {"x": set_of([])})


def test_projection_examples():
    x = parse_coalgebra(TWO_LOOPS).at("x")
    assert project(x, 0) == BULLET
    assert project(x, 3).text == "{{{•}}}"
    assert project(stream("aab"), 2).text == "(a,(a,•))"
    assert project(stream("aab"), 3).text == "(a,(a,(b,•)))"


def test_partition_examples():
    one = parse_coalgebra("functor: Pf(Id)\nstates: {x}\nx -> {}")
    part, depth = behavioral_partition(one)
    assert part.blocks == (("x",),) and depth == 0
    part, depth = behavioral_partition(parse_coalgebra(TWO_LOOPS))
    assert len(part) == 1 and depth <= 1


def test_words_ab_and_aa_split_at_two():
    x, y = stream("ab"), stream("aa")
    assert project(x, 1) == project(y, 1)
    assert project(x, 2) != project(y, 2)
    assert not behaviorally_equal(x, y)
    assert behaviorally_equal(stream("ab"), stream("abab"))


def test_equality_examples():
    c = parse_coalgebra(TWO_LOOPS)
    assert behaviorally_equal(c.at("x"), c.at("x"))
    assert behaviorally_equal(c.at("x"), c.at("y"))
    with pytest.raises(FunctorMismatch):
        behaviorally_equal(c.at("x"), stream("a"))


def test_minimize_examples():
    c = parse_coalgebra(TWO_LOOPS)
    m = minimize(c.at("x"))
    assert len(m.coalgebra) == 1 and behaviorally_equal(m, c.at("x"))
    t = parse_term(PF, "{{},{{}},{{},{{}}}}")
    e = embed_mu_to_nu(PF, t)
    assert len(minimize(e).coalgebra) == len(e.coalgebra) == 4
    # an already minimal element comes back unchanged up to the canonical labels
    assert minimize(minimize(stream("ab"))) == minimize(stream("ab"))


def test_homomorphism_examples():
    c = parse_coalgebra(TWO_LOOPS)
    assert is_homomorphism(finset.identity(c.states), c, c)
    x = stream("ab")
    m = minimize(x)
    assert is_homomorphism(quotient_map(x, m), x.coalgebra, m.coalgebra)
    swap_to_one = FiniteFunction(x.coalgebra.states, x.coalgebra.states, {"s0": "s0", "s1": "s0"})
    assert not is_homomorphism(swap_to_one, x.coalgebra, x.coalgebra)


def test_reachable_order():
    c = parse_coalgebra("functor: Pf(Id)\nstates: {a, b, c, d}\na -> {b, c}\nb -> {a}\nc -> {}\nd -> {a}")
    assert reachable(c, "a") == ["a", "b", "c"]
    assert len(minimize(c.at("a")).coalgebra) == 3


def _random(seed, max_states=6):
    rng = random.Random(seed)
    F = rng.choice(POINTED)
    return F, rng, random_coalgebra(F, rng, rng.randint(1, max_states), max_set=2)


@given(st.integers(0, 2**32))
@settings(max_examples=60, deadline=None)
def test_kernels_refine_and_stabilize(seed):
    _, _, c = _random(seed)
    ks = list(kernels(c))
    assert len(ks) <= len(c) + 1
    for a, b in zip(ks, ks[1:]):
        for s, t in product(c.states, repeat=2):
            if b[s] == b[t]:
                assert a[s] == a[t]
    # the kernel really is the kernel of the projection
    for n, blocks in enumerate(ks):
        for s, t in product(c.states, repeat=2):
            assert (blocks[s] == blocks[t]) == (project(c.at(s), n) == project(c.at(t), n))


@given(st.integers(0, 2**32))
@settings(max_examples=60, deadline=None)
def test_equality_matches_projection_oracle(seed):
    F, rng, c = _random(seed)
    d = random_coalgebra(F, rng, rng.randint(1, 5), prefix="r", max_set=2)
    x, y = c.at(rng.choice(c.states.elements)), d.at(rng.choice(d.states.elements))
    assert behaviorally_equal(x, y) == brute_equal(x, y, len(c) + len(d))


@given(st.integers(0, 2**32))
@settings(max_examples=60, deadline=None)
def test_minimize_properties(seed):
    _, rng, c = _random(seed)
    x = c.at(rng.choice(c.states.elements))
    m = minimize(x)
    assert behaviorally_equal(x, m)
    assert len(m.coalgebra) == len(behavioral_partition(m.coalgebra)[0])
    assert len(m.coalgebra) <= len(reachable(c, x.point))
    assert minimize(m) == m
    f = quotient_map(x, m)
    sub = Coalgebra(c.functor, f.domain, {s: c.structure[s] for s in f.domain})
    assert is_homomorphism(f, sub, m.coalgebra)


@given(st.integers(0, 2**32))
@settings(max_examples=40, deadline=None)
def test_homomorphisms_preserve_projections(seed):
    F, rng, c = _random(seed, 4)
    m = minimize(c.at(c.states.elements[0]))
    f = quotient_map(c.at(c.states.elements[0]), m)
    for s in f.domain:
        for n in range(4):
            assert project(c.at(s), n) == project(m.coalgebra.at(f(s)), n)
