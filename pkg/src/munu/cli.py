"""``munu`` command-line entry point."""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from pathlib import Path

from . import demos, gset
from .chains import detect_convergence, initial_chain, terminal_chain
from .coalgebra import (
    RationalElement,
    behavioral_partition,
    behaviorally_equal,
    format_coalgebra,
    minimize,
    parse_coalgebra,
    project,
)
from .errors import MunuError
from .metric_order import BasePoint, completion_witness, default_base, distance, epsilon, leq
from .syntax import parse_functor, parse_term


def _element(spec: str) -> RationalElement:
    path, sep, state = spec.rpartition(":")
    if not sep:
        raise MunuError(f"expected FILE:STATE, got {spec!r}")
    return RationalElement(parse_coalgebra(Path(path).read_text()), state)


def _pointed(args) -> RationalElement:
    return RationalElement(parse_coalgebra(Path(args.coalgebra).read_text()), args.state)


def _base(x: RationalElement, text: str | None) -> BasePoint:
    if text is None:
        return default_base(x.functor)
    return BasePoint(x.functor, parse_term(x.functor, text))


def _emit(args, payload: dict, text_lines: list[str]):
    if getattr(args, "format", "text") == "json":
        print(json.dumps(payload, indent=2, ensure_ascii=False, sort_keys=True))
    else:
        print("\n".join(text_lines))


# -- subcommands ------------------------------------------------------------


def cmd_chain(args) -> int:
    F = parse_functor(args.functor)
    build = initial_chain if args.direction == "init" else terminal_chain
    chain = build(F, args.depth, args.limit)
    conv = detect_convergence(chain)
    if args.csv:
        print("stage,size")
        for k, n in enumerate(chain.sizes()):
            print(f"{k},{n}")
        return 0
    payload = {
        "functor": str(F),
        "direction": args.direction,
        "sizes": chain.sizes(),
        "converged_at": conv,
    }
    lines = [f"functor: {F}", f"direction: {args.direction}"]
    for k, stage in enumerate(chain.stages):
        lines.append(f"stage {k}: {len(stage)}")
        if args.list:
            lines += [f"  {e}" for e in stage]
    if args.list:
        payload["stages"] = [list(s) for s in chain.stages]
    lines.append(f"converged at: {conv if conv is not None else 'not within prefix'}")
    _emit(args, payload, lines)
    return 0


def cmd_behavior(args) -> int:
    x = _pointed(args)
    v = project(x, args.depth)
    _emit(args, {"state": x.point, "depth": args.depth, "projection": v.text}, [v.text])
    return 0


def cmd_equal(args) -> int:
    x, y = _element(args.a), _element(args.b)
    eq = behaviorally_equal(x, y)
    _emit(args, {"equal": eq}, [str(eq).lower()])
    return 0


def cmd_minimize(args) -> int:
    x = _pointed(args)
    m = minimize(x)
    part, depth = behavioral_partition(x.coalgebra)
    text = format_coalgebra(m.coalgebra).rstrip("\n")
    payload = {
        "point": m.point,
        "states": list(m.coalgebra.states),
        "structure": {s: v.text for s, v in m.coalgebra.structure.items()},
        "stabilization_depth": depth,
    }
    _emit(args, payload, [text, f"# point: {m.point}"])
    return 0


def cmd_distance(args) -> int:
    d = distance(_element(args.a), _element(args.b))
    _emit(args, {"exponent": d.exponent, "distance": str(d)}, [str(d)])
    return 0


def cmd_epsilon(args) -> int:
    x = _pointed(args)
    base = _base(x, args.base)
    t = epsilon(x, args.n, base)
    _emit(args, {"n": args.n, "base": base.p.text, "term": t.text}, [t.text])
    return 0


def cmd_leq(args) -> int:
    x, y = _element(args.a), _element(args.b)
    base = _base(y, args.base)
    r = leq(x, y, base)
    _emit(args, {"leq": r, "base": base.p.text}, [str(r).lower()])
    return 0


def cmd_witness(args) -> int:
    x = _pointed(args)
    base = _base(x, args.base)
    w = completion_witness(x, args.depth, base)
    rows = [
        {"n": n, "term": t.text, "distance": str(d)}
        for n, (t, d) in enumerate(zip(w.approximants, w.distances))
    ]
    lines = [f"eps_{r['n']} = {r['term']}   d = {r['distance']}" for r in rows]
    lines.append(f"checks: {'ok' if w.ok else 'FAILED'}")
    _emit(args, {"base": base.p.text, "approximants": rows, "ok": w.ok}, lines)
    return 0 if w.ok else 1


_BUILTIN_GROUP = re.compile(r"(S|Z)(\d+)|trivial")


def _group(spec: str) -> gset.FiniteGroup:
    m = _BUILTIN_GROUP.fullmatch(spec)
    if m and not Path(spec).exists():
        if spec == "trivial":
            return gset.trivial_group()
        n = int(m.group(2))
        return gset.symmetric_group(n) if m.group(1) == "S" else gset.cyclic_group(n)
    return gset.parse_group(Path(spec).read_text())


def cmd_gset(args) -> int:
    G = _group(args.group)
    action = gset.parse_action(G, Path(args.action).read_text()) if args.action else None
    if args.what == "orbits":
        if action is None:
            raise MunuError("orbits needs --action")
        orbs = [list(o) for o in gset.orbits(action)]
        _emit(args, {"orbits": orbs, "power": len(orbs)}, [" ".join(o) for o in orbs] + [f"power: {len(orbs)}"])
        return 0
    if args.what == "connected":
        eqs = gset.equivariant_equivalences(G)
        classes = gset.connected_objects(G)
        payload = {
            "equivariant_equivalences": len(eqs),
            "isomorphism_classes": [[list(q.carrier) for q in cls] for cls in classes],
        }
        lines = [f"equivariant equivalences: {len(eqs)}", f"isomorphism classes: {len(classes)}"]
        lines += [f"  size {len(cls[0])}: {len(cls)} quotient(s)" for cls in classes]
        _emit(args, payload, lines)
        return 0
    rng = random.Random(args.seed)
    samples = [action] if action else [
        gset.random_action(G, rng.randint(1, 4), rng) for _ in range(args.samples)
    ]
    rep = gset.width_report(G, samples)
    payload = {
        "order": rep.order,
        "connected_classes": rep.connected_classes,
        "bound": rep.bound,
        "hom_checks": [list(c) for c in rep.hom_checks],
        "ok": rep.ok,
    }
    lines = [
        f"|G| = {rep.order}",
        f"connected objects up to iso: {rep.connected_classes} <= 2^|G| = {rep.bound}",
        f"hom_count <= |X| on {len(rep.hom_checks)} pairs: {all(c[-1] for c in rep.hom_checks)}",
    ]
    _emit(args, payload, lines)
    return 0 if rep.ok else 1


def cmd_demo(args) -> int:
    match args.name:
        case "pf-countable":
            report = demos.demo_pf_countable(args.max_element)
        case "aleph-stream":
            report = demos.demo_aleph_stream(args.alphabet_size, args.prefix_len)
        case "trees":
            report = demos.demo_trees()
        case "prefix-order":
            report = demos.demo_prefix_order(args.alphabet.split(","), args.pairs, args.seed)
    if args.format == "json":
        print(json.dumps(report, indent=2, ensure_ascii=False, sort_keys=True))
    else:
        for key, val in report.items():
            if key in ("checks", "rows"):
                continue
            print(f"{key}: {val}")
        for row in report.get("rows", []):
            print(f"  {row['t']} <= {row['s']}: {row['leq']}   d = {row['distance']}")
        for c in report["checks"]:
            print(f"{'PASS' if c['ok'] else 'FAIL'}  {c['name']}")
    return 0 if report["ok"] else 1


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="munu", description="Initial algebras and terminal coalgebras of finite set functors.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for randomized runs")
    common.add_argument("--format", choices=["text", "json"], default="text")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("chain", help="initial or terminal chain prefix", parents=[common])
    c.add_argument("--functor", required=True)
    c.add_argument("--direction", choices=["init", "term"], default="init")
    c.add_argument("--depth", type=int, required=True)
    c.add_argument("--list", action="store_true", help="print every stage element")
    c.add_argument("--csv", action="store_true")
    c.add_argument("--limit", type=int, default=10**6)
    c.set_defaults(func=cmd_chain)

    def pointed(name, func, helptext):
        q = sub.add_parser(name, help=helptext, parents=[common])
        q.add_argument("--coalgebra", required=True)
        q.add_argument("--state", required=True)
        q.set_defaults(func=func)
        return q

    def binary(name, func, helptext):
        q = sub.add_parser(name, help=helptext, parents=[common])
        q.add_argument("--a", required=True, metavar="FILE:STATE")
        q.add_argument("--b", required=True, metavar="FILE:STATE")
        q.set_defaults(func=func)
        return q

    pointed("behavior", cmd_behavior, "depth-n projection of a state").add_argument("--depth", type=int, required=True)
    binary("equal", cmd_equal, "behavioural equivalence")
    pointed("minimize", cmd_minimize, "minimal pointed coalgebra")
    binary("distance", cmd_distance, "behavioural ultrametric")
    e = pointed("epsilon", cmd_epsilon, "finite approximant eps_n")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--base")
    binary("leq", cmd_leq, "approximation order").add_argument("--base")
    w = pointed("witness", cmd_witness, "approximant sequence converging to a state")
    w.add_argument("--depth", type=int, required=True)
    w.add_argument("--base")

    g = sub.add_parser("gset", help="finite group actions", parents=[common])
    g.add_argument("what", choices=["orbits", "connected", "width"])
    g.add_argument("--group", required=True, help="Cayley table file, or S<n>, Z<n>, trivial")
    g.add_argument("--action")
    g.add_argument("--samples", type=int, default=20)
    g.set_defaults(func=cmd_gset)

    d = sub.add_parser("demo", help="worked examples", parents=[common])
    d.add_argument("name", choices=demos.DEMOS)
    d.add_argument("--max-element", type=int, default=5)
    d.add_argument("--alphabet-size", type=int, default=2)
    d.add_argument("--prefix-len", type=int, default=3)
    d.add_argument("--alphabet", default="a,b")
    d.add_argument("--pairs", type=int, default=50)
    d.set_defaults(func=cmd_demo)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (MunuError, ValueError, OSError) as exc:
        print(f"munu: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
