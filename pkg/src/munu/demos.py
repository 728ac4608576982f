"""Reproducible worked examples; each returns a JSON-ready report with an ``ok`` flag."""

from __future__ import annotations

import random
from itertools import combinations, product as cartesian

from .algebra import embed_mu_to_nu, stage_terms
from .chains import initial_chain
from .coalgebra import Coalgebra, RationalElement, behaviorally_equal, kernels
from .errors import BoundExceeded
from .finset import FiniteSet
from .functor import ConstAtom, InL, InR, Pair, Var, const, set_of
from .metric_order import BasePoint, distance, epsilon, leq
from .syntax import parse_functor

DEMOS = ("pf-countable", "aleph-stream", "trees", "prefix-order")
PF = parse_functor("Pf(Id)")


def _report(name, params, checks, **data):
    return {
        "demo": name,
        "params": params,
        **data,
        "checks": [{"name": n, "ok": bool(ok)} for n, ok in checks],
        "ok": all(ok for _, ok in checks),
    }


def _separations(c: Coalgebra, points: list[str]) -> dict[tuple[str, str], int | None]:
    """Separation depth of every pair of ``points`` from one refinement run."""
    depth: dict[tuple[str, str], int | None] = {pair: None for pair in combinations(points, 2)}
    for n, blocks in enumerate(kernels(c)):
        for (a, b), d in depth.items():
            if d is None and blocks[a] != blocks[b]:
                depth[(a, b)] = n
    return depth


# -- finite power set on countable sets -------------------------------------


def path_graph(A: frozenset[int], max_element: int, tag: str = "") -> dict:
    """``X_A`` cut after ``max_element + 1`` with a self-loop tail, as a structure map."""
    end = max_element + 1
    structure = {}
    for i in range(end):
        succ = [Var(f"{tag}{i + 1}")]
        if i in A:
            succ.append(Var(f"{tag}l{i}"))
            structure[f"{tag}l{i}"] = set_of([])
        structure[f"{tag}{i}"] = set_of(succ)
    structure[f"{tag}{end}"] = set_of([Var(f"{tag}{end}")])
    return structure


def _subset_tag(A, max_element):
    return "A" + "".join("1" if i in A else "0" for i in range(max_element + 1)) + "_"


def demo_pf_countable(max_element: int = 5, bound: int = 6) -> dict:
    """Distinct subsets ``A`` give behaviourally distinct roots of ``X_A``.

    The truncation keeps every leaf ``l_i`` at distance ``i + 1`` from the root,
    so two graphs first differing at ``i`` separate at depth ``i + 2``; the tail
    below ``max_element + 1`` never influences that.
    """
    if max_element > bound:
        raise BoundExceeded(f"max_element {max_element} exceeds {bound}")
    universe = range(max_element + 1)
    subsets = [frozenset(c) for k in range(len(universe) + 1) for c in combinations(universe, k)]
    structure = {}
    roots = {}
    for A in subsets:
        tag = _subset_tag(A, max_element)
        structure.update(path_graph(A, max_element, tag))
        roots[A] = f"{tag}0"
    union = Coalgebra(PF, FiniteSet(structure), structure)
    sep = _separations(union, [roots[A] for A in subsets])
    by_root = {roots[A]: A for A in subsets}
    distinct = all(d is not None for d in sep.values())
    expected = all(
        d == min(by_root[a] ^ by_root[b]) + 2 for (a, b), d in sep.items() if d is not None
    )
    same = frozenset(universe)
    c1 = Coalgebra(PF, FiniteSet(path_graph(same, max_element)), path_graph(same, max_element))
    sanity = behaviorally_equal(RationalElement(c1, "0"), RationalElement(c1, "0"))
    copy = Coalgebra(PF, FiniteSet(path_graph(same, max_element, "c")), path_graph(same, max_element, "c"))
    sanity = sanity and behaviorally_equal(RationalElement(c1, "0"), RationalElement(copy, "c0"))
    checks = [
        ("pairwise distinct behaviours", distinct),
        ("separation depth = min(A xor A') + 2", expected),
        ("A = A' gives equal behaviours", sanity),
    ]
    return _report(
        "pf-countable",
        {"max_element": max_element},
        checks,
        subsets=len(subsets),
        distinct_behaviours=len({tuple(sorted(b)) for b in _blocks_of(union, roots.values())}),
        min_separation_depth=min((d for d in sep.values() if d is not None), default=None),
    )


def _blocks_of(c: Coalgebra, points) -> list[set[str]]:
    *_, last = kernels(c)
    groups: dict[int, set[str]] = {}
    for p in points:
        groups.setdefault(last[p], set()).add(p)
    return list(groups.values())


# -- streams over a large alphabet ------------------------------------------


def demo_aleph_stream(alphabet_size: int = 2, prefix_len: int = 3) -> dict:
    """Streams ``n |-> (f(n), n+1)`` for all ``f``; equal roots force equal ``f``."""
    if alphabet_size < 2:
        raise ValueError("alphabet_size must be at least 2")
    alphabet = [f"c{i}" for i in range(alphabet_size)]
    F = const(*alphabet) * parse_functor("Id")
    structure = {}
    roots = {}
    for f in cartesian(alphabet, repeat=prefix_len):
        tag = "f" + "".join(a[1:] for a in f) + "_"
        for n in range(prefix_len):
            structure[f"{tag}{n}"] = Pair(ConstAtom(f[n]), Var(f"{tag}{(n + 1) % prefix_len}"))
        roots[f] = f"{tag}0"
    union = Coalgebra(F, FiniteSet(structure), structure)
    sep = _separations(union, list(roots.values()))
    by_root = {r: f for f, r in roots.items()}

    def first_diff(f, g):
        return next(i for i in range(prefix_len) if f[i] != g[i])

    injective = all(d is not None for d in sep.values())
    exponents = all(d == first_diff(by_root[a], by_root[b]) + 1 for (a, b), d in sep.items())
    some = next(iter(roots))
    c = Coalgebra(F, FiniteSet(structure), structure)
    reflexive = behaviorally_equal(RationalElement(c, roots[some]), RationalElement(union, roots[some]))
    checks = [
        ("h_f(0) = h_g(0) implies f = g", injective),
        ("distance exponent = first difference + 1", exponents),
        ("f = g gives equal behaviours", reflexive),
    ]
    return _report(
        "aleph-stream",
        {"alphabet_size": alphabet_size, "prefix_len": prefix_len},
        checks,
        functions=len(roots),
        distinct_behaviours=len(_blocks_of(union, roots.values())),
    )


# -- extensional trees -------------------------------------------------------


def demo_trees(depth: int = 4) -> dict:
    chain = initial_chain(PF, 3)
    terms = stage_terms(PF, 3)
    loop = Coalgebra(PF, FiniteSet(["x"]), {"x": set_of([Var("x")])})
    x = RationalElement(loop, "x")
    base = BasePoint(PF, set_of([]))
    approx = [epsilon(x, n, base) for n in range(depth + 1)]
    points = [embed_mu_to_nu(PF, t) for t in approx]
    dists = [distance(x, e) for e in points]
    checks = [
        ("initial stage sizes 0,1,2,4", chain.sizes() == [0, 1, 2, 4]),
        ("eps_1(x) = {{}}", approx[1].text == "{{}}"),
        ("d(x, eps_n(x)) < 2^-n", all(d.exponent is None or d.exponent > n for n, d in enumerate(dists))),
    ]
    checks += [(f"eps_{n}(x) <= x", leq(e, x, base)) for n, e in enumerate(points)]
    return _report(
        "trees",
        {"depth": depth},
        checks,
        stage_sizes=chain.sizes(),
        stages={str(k): [t.text for t in terms[k]] for k in range(1, 4)},
        new_terms=[len(terms[k]) - len(terms[k - 1]) for k in range(1, 4)],
        rational="x -> {x}",
        approximants=[t.text for t in approx],
        distances=[str(d) for d in dists],
    )


# -- prefix order on words ---------------------------------------------------


def stream_functor(alphabet):
    return const(*alphabet) * parse_functor("Id") + const("stop")


def word_element(alphabet, prefix: str, cycle: str = "") -> RationalElement:
    """``prefix · cycle^ω`` (or the finite word ``prefix`` when ``cycle`` is empty)."""
    F = stream_functor(alphabet)
    letters = prefix + cycle
    structure = {}
    for i, a in enumerate(letters):
        nxt = i + 1 if i + 1 < len(letters) else (len(prefix) if cycle else None)
        tail = Var(f"w{nxt}") if nxt is not None else Var("end")
        structure[f"w{i}"] = InL(Pair(ConstAtom(a), tail))
    if not cycle:
        structure["end"] = InR(ConstAtom("stop"))
    start = "w0" if letters else "end"
    return RationalElement(Coalgebra(F, FiniteSet(structure), structure), start)


def _letters(prefix, cycle, n):
    out = prefix
    while cycle and len(out) < n:
        out += cycle
    return out[:n]


def lcp_oracle(t, s) -> int | None:
    """Longest common prefix of two words/streams, ``None`` when they are equal."""
    (tp, tc), (sp, sc) = t, s
    bound = max(len(tp), len(sp)) + max(len(tc), 1) * max(len(sc), 1) + 1
    a, b = _letters(tp, tc, bound), _letters(sp, sc, bound)
    for i in range(min(len(a), len(b))):
        if a[i] != b[i]:
            return i
    if len(a) == len(b) and bool(tc) == bool(sc):
        return None
    return min(len(a), len(b))


def prefix_oracle(t, s) -> bool:
    if lcp_oracle(t, s) is None:
        return True
    tp, tc = t
    if tc:
        return False
    return lcp_oracle(t, s) == len(tp)


def corpus_pairs(alphabet, count: int, rng: random.Random):
    def word():
        return "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 4)))

    def stream():
        return word()[:2], "".join(rng.choice(alphabet) for _ in range(rng.randint(1, 3)))

    pairs = []
    while len(pairs) < count:
        s = stream() if rng.random() < 0.6 else (word(), "")
        kind = rng.random()
        if kind < 0.4:
            t = (_letters(*s, rng.randint(0, 6)), "")
        elif kind < 0.55:
            t = s
        elif kind < 0.8:
            t = (word(), "")
        else:
            t = stream()
        pairs.append((t, s))
    return pairs


def _show(w):
    p, c = w
    return f"{p}({c})^w" if c else (p or "ε")


def demo_prefix_order(alphabet=("a", "b"), pairs: int = 50, seed: int = 0) -> dict:
    alphabet = list(alphabet)
    if not alphabet:
        raise ValueError("alphabet must be nonempty")
    F = stream_functor(alphabet)
    base = BasePoint(F, InR(ConstAtom("stop")))
    rng = random.Random(seed)
    fixed = [(("ab", ""), ("", "ab")), (("ba", ""), ("", "ab")), (("", "a"), ("aa", "b")), (("", ""), ("", "ab"))]
    fixed = [pair for pair in fixed if set("".join(pair[0] + pair[1])) <= set(alphabet)]
    rows = []
    order_ok = metric_ok = True
    corpus = fixed + corpus_pairs(alphabet, pairs, rng)
    for t, s in corpus:
        x, y = word_element(alphabet, *t), word_element(alphabet, *s)
        le = leq(x, y, base)
        d = distance(x, y)
        lcp = lcp_oracle(t, s)
        want_d = None if lcp is None else lcp + 1
        order_ok &= le == prefix_oracle(t, s)
        metric_ok &= d.exponent == want_d
        rows.append({"t": _show(t), "s": _show(s), "leq": le, "distance": str(d)})
    checks = [
        ("leq agrees with prefix order", order_ok),
        ("distance exponent = lcp + 1", metric_ok),
        ("'' <= every word", all(leq(word_element(alphabet, ""), word_element(alphabet, *s), base) for _, s in corpus)),
    ]
    return _report(
        "prefix-order", {"alphabet": alphabet, "pairs": pairs, "seed": seed}, checks, rows=rows
    )
