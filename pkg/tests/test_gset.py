import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from munu import gset
from munu.errors import GroupAxiomError, ParseError, SizeLimitExceeded

S3 = gset.symmetric_group(3)


def subgroups(G):
    """Subsets containing e and closed under products, by brute force."""
    e, rest = G.identity, [g for g in G if g != G.identity]
    out = []
    for k in range(len(rest) + 1):
        for extra in combinations(rest, k):
            H = {e, *extra}
            if all(G.mul(a, b) in H for a in H for b in H):
                out.append(frozenset(H))
    return out


def conjugacy_classes_of_subgroups(G):
    classes = set()
    for H in subgroups(G):
        classes.add(frozenset(frozenset(G.mul(G.mul(g, h), G.inv(g)) for h in H) for g in G))
    return classes


def test_group_axioms_checked():
    with pytest.raises(GroupAxiomError):
        gset.group_from_function(["0", "1"], lambda g, h: "0")
    assert len(S3) == 6 and S3.identity == "123"
    assert S3.mul("213", "132") == "231"
    assert all(S3.mul(g, S3.inv(g)) == S3.identity for g in S3)


def test_action_axioms_checked():
    Z2 = gset.cyclic_group(2)
    with pytest.raises(GroupAxiomError):
        gset.GAction(Z2, gset.FiniteSet("ab"), {("0", "a"): "b", ("0", "b"): "a", ("1", "a"): "a", ("1", "b"): "b"})


def test_orbit_examples():
    assert [list(o) for o in gset.orbits(gset.trivial_action(S3, ["p", "q"]))] == [["p"], ["q"]]
    assert len(gset.orbits(gset.regular_action(S3))) == 1
    pairs = gset.subsets_action(3, 2)
    assert [len(o) for o in gset.orbits(pairs)] == [3]
    assert gset.power(gset.trivial_action(S3, [])) == 0
    assert gset.power(gset.disjoint_union(gset.regular_action(S3), gset.regular_action(S3))) == 2


def test_connected_objects_small_groups():
    assert len(gset.connected_objects(gset.trivial_group())) == 1
    z2 = gset.connected_objects(gset.cyclic_group(2))
    assert len(z2) == 2 and sorted(len(c[0]) for c in z2) == [1, 2]


def test_symmetric_group_quotients():
    eqs = gset.equivariant_equivalences(S3)
    assert len(eqs) == len(subgroups(S3)) == 6
    classes = gset.connected_objects(S3)
    assert len(classes) == len(conjugacy_classes_of_subgroups(S3)) == 4
    assert sorted(len(c[0]) for c in classes) == [1, 2, 3, 6]
    assert all(gset.is_connected(q) for c in classes for q in c)


def test_group_size_bound():
    with pytest.raises(SizeLimitExceeded):
        gset.equivariant_equivalences(gset.cyclic_group(9))


def test_hom_count_examples():
    classes = [c[0] for c in gset.connected_objects(S3)]
    point = gset.trivial_action(S3, ["*"])
    X = gset.subsets_action(3, 1)
    free = next(c for c in classes if len(c) == 6)
    whole = next(c for c in classes if len(c) == 1)
    for C in classes:
        assert gset.hom_count(S3, C, point) == 1
    assert gset.hom_count(S3, free, X) == len(X)
    assert gset.hom_count(S3, whole, X) == len(gset.fixed_points(X)) == 0


@given(st.integers(0, 2**32))
@settings(max_examples=15, deadline=None)
def test_hom_count_matches_enumeration(seed):
    rng = random.Random(seed)
    X = gset.random_action(S3, rng.randint(1, 4), rng)
    for cls in gset.connected_objects(S3):
        C = cls[0]
        assert gset.hom_count(S3, C, X) == sum(1 for _ in gset.equivariant_maps(C, X)) <= len(X)


def test_width_reports():
    assert gset.width_report(gset.trivial_group(), []).connected_classes == 1
    rep = gset.width_report(gset.cyclic_group(2), [])
    assert (rep.connected_classes, rep.bound) == (2, 4)
    rep = gset.width_report(S3, [gset.subsets_action(3, 2)])
    assert rep.ok and rep.connected_classes == 4 and rep.bound == 64


def test_text_formats_round_trip():
    assert gset.parse_group(gset.format_group(S3)).table == S3.table
    pairs = gset.subsets_action(3, 2)
    again = gset.parse_action(S3, gset.format_action(pairs))
    assert again.carrier == pairs.carrier and dict(again.action) == dict(pairs.action)
    with pytest.raises(ParseError):
        gset.parse_action(S3, "123 x -> y")
