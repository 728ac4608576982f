import random
import re

import pytest
from hypothesis import given, settings, strategies as st

from munu.algebra import embed_mu_to_nu, iota_inverse
from munu.chains import terminal_chain
from munu.coalgebra import RationalElement, behaviorally_equal, parse_coalgebra, project
from munu.demos import word_element
from munu.errors import EmptyFZero, FunctorMismatch, ShapeMismatch
from munu.functor import ConstAtom, InR, fmap, set_of
from munu.metric_order import (
    ZERO,
    BasePoint,
    Distance,
    completion_witness,
    default_base,
    distance,
    epsilon,
    leq,
    plug,
)
from munu.syntax import parse_functor, parse_layered, parse_term

from generators import POINTED, random_element, random_term

PF = parse_functor("Pf(Id)")
LOOP = parse_coalgebra("functor: Pf(Id)\nstates: {x}\nx -> {x}").at("x")
AB = ("a", "b")
STOP = BasePoint(parse_functor("C{a,b} * Id + C{stop}"), InR(ConstAtom("stop")))


def test_distance_values():
    assert Distance(3).value == Distance(3).value and str(Distance(3)) == "2^-3"
    assert ZERO < Distance(10) < Distance(0)
    with pytest.raises(ValueError):
        Distance(-1)


def test_distance_examples():
    assert distance(LOOP, LOOP) == ZERO
    aaa = word_element(AB, "", "a")
    assert distance(aaa, word_element(AB, "", "ab")) == Distance(2)
    assert distance(aaa, word_element(AB, "aa", "b")) == Distance(3)
    t, s = (embed_mu_to_nu(PF, parse_term(PF, w)) for w in ("{}", "{{}}"))
    assert distance(t, s) == Distance(1)
    with pytest.raises(FunctorMismatch):
        distance(LOOP, aaa)


def test_base_points():
    assert default_base(PF).p == set_of([])
    with pytest.raises(EmptyFZero):
        default_base(parse_functor("Id * Id"))
    with pytest.raises(ShapeMismatch):
        BasePoint(PF, set_of([set_of([])]))
    with pytest.raises(EmptyFZero):
        epsilon(parse_coalgebra("functor: Id\nstates: {x}\nx -> x").at("x"), 1)


def test_epsilon_examples():
    aaa = word_element(AB, "", "a")
    assert epsilon(aaa, 2, STOP).text == "inl((a,inl((a,inr(stop)))))"
    assert epsilon(aaa, 0, STOP) == STOP.p
    assert epsilon(LOOP, 1).text == "{{}}"
    assert epsilon(LOOP, 3).text == "{{{{}}}}"
    # Σ-trees: cut at height n and put the constant at the cut
    F = parse_functor("Sig[(f,2),(c,0)]")
    tree = parse_coalgebra(f"functor: {F}\nstates: {{x}}\nx -> f(x, x)").at("x")
    assert epsilon(tree, 2, BasePoint(F, parse_term(F, "c"))).text == "f(f(c,c),f(c,c))"


def test_leq_examples():
    aaa = word_element(AB, "", "a")
    assert leq(aaa, aaa, STOP)
    assert leq(word_element(AB, "aa"), aaa, STOP)
    assert not leq(word_element(AB, "ab"), aaa, STOP)
    assert leq(word_element(AB, "ab"), word_element(AB, "", "ab"), STOP)
    assert not leq(word_element(AB, "ba"), word_element(AB, "", "ab"), STOP)
    assert not leq(aaa, word_element(AB, "aa"), STOP)


def test_witness_examples():
    w = completion_witness(word_element(AB, "", "ab"), 4, STOP)
    assert w.ok
    words = ["".join(re.findall(r"\((\w),", t.text)) for t in w.approximants]
    assert words == ["", "a", "ab", "aba", "abab"]
    assert completion_witness(LOOP, 0).approximants == [set_of([])]
    # a finite term is reproduced from its depth on
    term = parse_term(PF, "{{},{{}}}")
    w = completion_witness(embed_mu_to_nu(PF, term), 5)
    assert w.ok and all(a == term for a in w.approximants[3:])


@given(st.integers(0, 2**32))
@settings(max_examples=60, deadline=None)
def test_ultrametric(seed):
    rng = random.Random(seed)
    F = rng.choice(POINTED)
    x, y, z = (random_element(F, rng, 4) for _ in range(3))
    assert (distance(x, y) == ZERO) == behaviorally_equal(x, y)
    assert distance(x, y) == distance(y, x)
    assert distance(x, z) <= max(distance(x, y), distance(y, z))


@given(st.integers(0, 2**32))
@settings(max_examples=40, deadline=None)
def test_epsilon_laws(seed):
    rng = random.Random(seed)
    F = rng.choice(POINTED)
    x = random_element(F, rng, 4)
    base = default_base(F)
    for n in range(5):
        e = embed_mu_to_nu(F, epsilon(x, n, base))
        assert project(e, n) == project(x, n)
        e1 = embed_mu_to_nu(F, epsilon(x, n + 1, base))
        assert epsilon(e1, n, base) == epsilon(x, n, base)
        assert distance(x, e) < Distance(n)


def test_plug_then_project_is_identity():
    F = parse_functor("C{a} * Id + C{stop}")
    base = default_base(F)
    for n in range(4):
        for label in terminal_chain(F, n).stages[n]:
            u = parse_layered(F, label, n)
            assert project(embed_mu_to_nu(F, plug(F, u, n, base.p)), n) == u


@given(st.integers(0, 2**32))
@settings(max_examples=40, deadline=None)
def test_order_laws(seed):
    rng = random.Random(seed)
    F = rng.choice(POINTED)
    base = default_base(F)
    x = random_element(F, rng, 4)
    chain = [embed_mu_to_nu(F, epsilon(x, n, base)) for n in range(5)]
    for a in chain:
        assert leq(a, x, base)
        assert leq(a, a, base)
    for a, b, c in zip(chain, chain[1:], chain[2:]):
        assert leq(a, b, base) and leq(b, c, base) and leq(a, c, base)
    y = random_element(F, rng, 4)
    if leq(x, y, base) and leq(y, x, base):
        assert behaviorally_equal(x, y)


@given(st.integers(0, 2**32))
@settings(max_examples=40, deadline=None)
def test_structure_map_extends_unfolding(seed):
    rng = random.Random(seed)
    F = rng.choice(POINTED)
    t = random_term(F, rng, 4)
    m = embed_mu_to_nu(F, t)
    for n in range(4):
        top = fmap(F, iota_inverse(F, t), lambda v: project(embed_mu_to_nu(F, v.atom), n))
        assert top == project(m, n + 1)
    x = random_element(F, rng, 4)
    c = x.coalgebra
    for n in range(4):
        top = fmap(F, c.structure[x.point], lambda v: project(RationalElement(c, v.atom), n))
        assert top == project(x, n + 1)
