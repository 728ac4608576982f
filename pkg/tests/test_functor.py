import random

import pytest
from hypothesis import given, settings, strategies as st

from munu import finset
from munu.errors import EmptyIntersection, SizeLimitExceeded
from munu.finset import FiniteSet
from munu.functor import (
    SetOf,
    Var,
    apply_fun,
    apply_set,
    canonicalize,
    check_intersection_preservation,
    count,
    elements,
    is_canonical,
    set_of,
)
from munu.syntax import parse_functor

from generators import random_function, random_injection, random_set, random_value, small_functor


def test_powerset_of_two_set():
    assert list(apply_set(parse_functor("Pf(Id)"), FiniteSet("ab"))) == ["{a,b}", "{a}", "{b}", "{}"]


def test_constant_functor_ignores_argument():
    F = parse_functor("C{c}")
    for X in (FiniteSet(), FiniteSet("xyz")):
        assert list(apply_set(F, X)) == ["c"]


def test_signature_on_singleton():
    F = parse_functor("Sig[(f,2),(c,0)]")
    assert set(apply_set(F, FiniteSet("x"))) == {"c", "f(x,x)"}


def test_products_coproducts_and_composition():
    X = FiniteSet("ab")
    assert len(apply_set(parse_functor("Id * Id"), X)) == 4
    assert set(apply_set(parse_functor("Id + C{z}"), X)) == {"inl(a)", "inl(b)", "inr(z)"}
    # Pf after (Id + 1): subsets of a 3-element set
    assert len(apply_set(parse_functor("Pf(Id) . (Id + C{u})"), X)) == 8
    assert "{inl(a),inr(u)}" in apply_set(parse_functor("Pf(Id) . (Id + C{u})"), X)


def test_size_guard():
    F = parse_functor("Pf(Pf(Pf(Id)))")
    with pytest.raises(SizeLimitExceeded):
        apply_set(F, FiniteSet("abc"), limit=1000)


def test_apply_fun_identity():
    X = FiniteSet("abc")
    for text in ["Pf(Id)", "Id * C{a,b} + Id", "Sig[(f,2),(c,0)]"]:
        F = parse_functor(text)
        assert apply_fun(F, finset.identity(X)) == finset.identity(apply_set(F, X))


def test_apply_fun_merges_sets():
    f = finset.constant(FiniteSet("ab"), FiniteSet("c"), "c")
    Ff = apply_fun(parse_functor("Pf(Id)"), f)
    assert Ff("{a,b}") == "{c}"
    assert Ff("{}") == "{}"


def test_canonicalize_sorts_and_dedupes():
    messy = SetOf((Var("b"), Var("a"), Var("b")))
    assert canonicalize(messy) == set_of([Var("a"), Var("b")])
    assert not is_canonical(messy)
    assert canonicalize(canonicalize(messy)) == canonicalize(messy)


@given(st.integers(0, 2**32))
@settings(max_examples=80, deadline=None)
def test_functoriality(seed):
    rng = random.Random(seed)
    F = small_functor(rng)
    X, Y, Z = (random_set(rng, 4, p, min_size=1) for p in "xyz")
    f, g = random_function(rng, Y, Z), random_function(rng, X, Y)
    assert apply_fun(F, finset.identity(X)) == finset.identity(apply_set(F, X))
    assert apply_fun(F, finset.compose(f, g)) == finset.compose(apply_fun(F, f), apply_fun(F, g))


@given(st.integers(0, 2**32))
@settings(max_examples=80, deadline=None)
def test_count_matches_enumeration(seed):
    rng = random.Random(seed)
    F = small_functor(rng, allow_empty=True)
    for n in range(4):
        X = FiniteSet(f"x{i}" for i in range(n))
        assert count(F, n) == len(elements(F, X))


@given(st.integers(0, 2**32))
@settings(max_examples=80, deadline=None)
def test_canonical_form_is_idempotent(seed):
    rng = random.Random(seed)
    F = small_functor(rng)
    X = random_set(rng, 4, "x", 1)
    v = random_value(F, rng, lambda: Var(rng.choice(X.elements)))
    assert canonicalize(canonicalize(v)) == canonicalize(v)
    assert is_canonical(v)


@given(st.integers(0, 2**32))
@settings(max_examples=80, deadline=None)
def test_injections_stay_injective(seed):
    rng = random.Random(seed)
    F = small_functor(rng)
    Y = random_set(rng, 5, "y", 1)
    X = FiniteSet(rng.sample(Y.elements, rng.randint(0, len(Y))))
    assert apply_fun(F, finset.inclusion(X, Y)).is_injective()


def test_identity_square_is_pullback():
    X = FiniteSet("abc")
    rep = check_intersection_preservation(parse_functor("Pf(Id)"), finset.identity(X), finset.identity(X))
    assert rep.ok, str(rep)


def test_powerset_intersection_example():
    X = FiniteSet("abc")
    b1 = finset.inclusion(FiniteSet("ab"), X)
    b2 = finset.inclusion(FiniteSet("bc"), X)
    rep = check_intersection_preservation(parse_functor("Pf(Id)"), b1, b2)
    assert rep.ok, str(rep)
    names = [n for n, _ in rep.checks]
    assert "b̄1·b1 = id" in names and "a1·ā2 = b̄1·b2" in names
    # P{b} has two elements, and so does the pullback of the images
    assert rep.details["|FA|"] == rep.details["|pullback|"] == "2"
    assert rep.details["t"] == "(b,b)"


def test_disjoint_images_raise():
    X = FiniteSet("ab")
    with pytest.raises(EmptyIntersection):
        check_intersection_preservation(
            parse_functor("Id"), finset.inclusion(FiniteSet("a"), X), finset.inclusion(FiniteSet("b"), X)
        )


def test_mixed_functor_on_nested_inclusions():
    X = FiniteSet("abc")
    b1 = finset.inclusion(FiniteSet("ab"), X)
    b2 = finset.inclusion(FiniteSet("b"), X)
    rep = check_intersection_preservation(parse_functor("Pf(Id) * (Id + C{u})"), b1, b2)
    assert rep.ok


@given(st.integers(0, 2**32))
@settings(max_examples=40, deadline=None)
def test_random_squares_are_pullbacks(seed):
    rng = random.Random(seed)
    F = small_functor(rng, cap=400)
    B = random_set(rng, 5, "b", 1)
    B1 = random_set(rng, len(B), "p", 1)
    B2 = random_set(rng, len(B), "q", 1)
    b1, b2 = random_injection(rng, B1, B), random_injection(rng, B2, B)
    if not set(b1.mapping.values()) & set(b2.mapping.values()):
        return
    assert check_intersection_preservation(F, b1, b2).ok
