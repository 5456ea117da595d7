"""Command-line entry point.

Exit codes: 0 success, 1 nothing found or a property fails, 2 malformed
input or bounds.
"""

from __future__ import annotations

import argparse
import inspect
import random
import sys
from typing import Optional, Sequence

from . import formats as fmt
from .corpus import random_graph, random_normal_tree, random_permutation, random_qo_tree
from .gadgets import (
    build_fs_tree,
    build_g0,
    build_gprime,
    build_gt,
    build_gx,
    build_ordered_gt,
    build_strict_gt,
    encode_gprime,
)
from .metrics import find_isometric_embedding, geodesic_space, is_ultrametric, ultra_space
from .monoid import act, act_graph_triples, check_action_axioms, compose, identity, natural_action_triples
from .morphisms import find_morphisms
from .structures import FinInjection
from .suites import SUITES
from .trees import MODES, NormalTree, TruncationParams, check_normal, find_leqmax_witness, verify_witness

TREE_BUILDS = {
    "g0": lambda T, p: build_g0(p),
    "gt": build_gt,
    "ordered-gt": build_ordered_gt,
    "strict-gt": build_strict_gt,
    "gprime": build_gprime,
    "coded-gprime": encode_gprime,
}
GRAPH_BUILDS = {"fs-tree": build_fs_tree, "gx": build_gx}
CHECK_KINDS = {
    "embed": "embedding",
    "iso": "isomorphism",
    "homo": "homomorphism",
    "weak-homo": "weak_homomorphism",
}
MODE_ALIASES = {"plain": "plain", "lex": "lex_preserving", "code": "code_monotone"}
MODE_ALIASES.update({m: m for m in MODES})


class UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--depth", type=int)
    common.add_argument("--branch", type=int)
    common.add_argument("--tail", type=int)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--in", dest="inp")
    common.add_argument("--in2")
    common.add_argument("--map", help="witness file for 'check witness'")
    common.add_argument("--out")
    common.add_argument("--limit", type=int)
    common.add_argument("--mode", default="plain", choices=sorted(MODE_ALIASES))
    common.add_argument("--size", type=int, help="vertex count for generated graphs, code size for monoid axioms")
    common.add_argument(
        "--density",
        type=float,
        default=0.3,
        help="probability of keeping each full-depth node before closing (gen tree/qotree)",
    )
    common.add_argument("--order", action="store_true", help="draw the order relation in DOT output")

    ap = argparse.ArgumentParser(prog="biembed", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("gen", parents=[common]).add_argument("what", choices=["tree", "qotree", "graph", "perm"])
    sub.add_parser("build", parents=[common]).add_argument(
        "what", choices=sorted(TREE_BUILDS) + sorted(GRAPH_BUILDS)
    )
    sub.add_parser("check", parents=[common]).add_argument(
        "what", choices=sorted(CHECK_KINDS) + ["leqmax", "witness"]
    )
    sub.add_parser("metric", parents=[common]).add_argument(
        "what", choices=["geodesic", "ultra", "isoembed", "verify-ultra"]
    )
    sub.add_parser("monoid", parents=[common]).add_argument("what", choices=["act", "compose", "axioms"])
    sub.add_parser("suite", parents=[common]).add_argument("what", choices=sorted(SUITES))
    sub.add_parser("export", parents=[common]).add_argument("what", choices=["dot"])
    return ap


def _read(path: Optional[str], flag: str) -> str:
    if not path:
        raise UsageError(f"missing {flag}")
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _params(args, header: Optional[TruncationParams] = None) -> TruncationParams:
    depth = args.depth if args.depth is not None else (header.depth if header else None)
    if depth is None:
        raise UsageError("bounds needed: pass --depth or a !bounds header")
    branch = args.branch if args.branch is not None else (header.branch if header else 1)
    tail = args.tail if args.tail is not None else (header.tail if header else 1)
    return TruncationParams(depth, branch, tail)


def _normal_tree(text: str, args) -> tuple[NormalTree, TruncationParams]:
    tree, header = fmt.read_tree(text)
    if not isinstance(tree, NormalTree):
        raise UsageError("expected a normal tree (pairs u|s)")
    p = _params(args, header)
    if not check_normal(tree, p):
        raise UsageError("tree is not prefix-closed and normal within the bounds")
    return tree, p


def _gen(args) -> int:
    rng = random.Random(args.seed)
    if args.what in ("tree", "qotree"):
        p = _params(args)
        if args.what == "tree":
            T = random_normal_tree(p, rng, args.density)
        else:
            T = random_qo_tree(p, rng, args.density)
        _emit(fmt.write_tree(T, p), args.out)
    elif args.what == "graph":
        _emit(fmt.write_structure(random_graph(args.size or 4, rng)), args.out)
    else:
        _emit(fmt.write_permutation(random_permutation(range(args.size or 4), rng)), args.out)
    return 0


def _build(args) -> int:
    text = _read(args.inp, "--in")
    if args.what in GRAPH_BUILDS:
        x = fmt.read_structure(text)
        G = GRAPH_BUILDS[args.what](x, _params(args))
    else:
        T, p = _normal_tree(text, args)
        G = TREE_BUILDS[args.what](T, p)
    _emit(fmt.write_structure(G), args.out)
    return 0


def _check(args) -> int:
    mode = MODE_ALIASES[args.mode]
    if args.what in CHECK_KINDS:
        A = fmt.read_structure(_read(args.inp, "--in"))
        B = fmt.read_structure(_read(args.in2, "--in2"))
        found = find_morphisms(A, B, CHECK_KINDS[args.what], limit=args.limit or 1)
        _emit("".join(fmt.write_morphism(g) for g in found), args.out)
        return 0 if found else 1
    S, p = _normal_tree(_read(args.inp, "--in"), args)
    T, _ = _normal_tree(_read(args.in2, "--in2"), args)
    if args.what == "leqmax":
        f = find_leqmax_witness(S, T, mode, p)
        if f is None:
            return 1
        _emit(fmt.write_lipschitz(f), args.out)
        return 0
    f = fmt.read_lipschitz(_read(args.map, "--map"))
    return 0 if verify_witness(f, S, T, mode, p) else 1


def _metric(args) -> int:
    if args.what == "geodesic":
        _emit(fmt.write_metric(geodesic_space(fmt.read_structure(_read(args.inp, "--in")))), args.out)
        return 0
    if args.what == "ultra":
        T, p = _normal_tree(_read(args.inp, "--in"), args)
        _emit(fmt.write_metric(ultra_space(T, p)), args.out)
        return 0
    M = fmt.read_metric(_read(args.inp, "--in"))
    if args.what == "verify-ultra":
        return 0 if is_ultrametric(M) else 1
    N = fmt.read_metric(_read(args.in2, "--in2"))
    h = find_isometric_embedding(M, N)
    if h is None:
        return 1
    _emit("".join(f"{a} -> {h[a]}\n" for a in M.points), args.out)
    return 0


def _monoid(args) -> int:
    if args.what == "act":
        g = fmt.read_monoid_elem(_read(args.inp, "--in"))
        x = fmt.read_graph_code(_read(args.in2, "--in2"))
        _emit(fmt.write_graph_code(act(g, x)), args.out)
        return 0
    if args.what == "compose":
        h = fmt.read_monoid_elem(_read(args.inp, "--in"))
        g = fmt.read_monoid_elem(_read(args.in2, "--in2"))
        _emit(fmt.write_monoid_elem(compose(h, g)), args.out)
        return 0
    size = 2 if args.size is None else args.size
    natural = check_action_axioms(
        natural_action_triples(size), lambda g, h: h.then(g), lambda x: FinInjection.identity(x.size)
    )
    functional = check_action_axioms(act_graph_triples(size), compose, lambda x: identity(x.size))
    lines = [
        f"natural action: {natural.checked} checks, {len(natural.violations)} violations",
        f"functional action: {functional.checked} checks, {len(functional.violations)} violations",
    ]
    _emit("\n".join(lines) + "\n", args.out)
    return 0 if natural.ok and functional.ok else 1


def _suite(args) -> int:
    fn = SUITES[args.what]
    accepted = inspect.signature(fn.__wrapped__ if hasattr(fn, "__wrapped__") else fn).parameters
    kwargs = {}
    if "seed" in accepted:
        kwargs["seed"] = args.seed
    if "p" in accepted and args.depth is not None:
        kwargs["p"] = _params(args)
    if "count" in accepted and args.size is not None:
        kwargs["count"] = args.size
    report = fn(**kwargs)
    lines = [report.summary()] + [f"  note: {n}" for n in report.notes]
    lines += [f"  failure: {f}" for f in report.failures]
    _emit("\n".join(lines) + "\n", args.out)
    return 0 if report.ok else 1


def _export(args) -> int:
    A = fmt.read_structure(_read(args.inp, "--in"))
    _emit(fmt.to_dot(A, with_order=args.order), args.out)
    return 0


HANDLERS = {
    "gen": _gen,
    "build": _build,
    "check": _check,
    "metric": _metric,
    "monoid": _monoid,
    "suite": _suite,
    "export": _export,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    ap = _parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return HANDLERS[args.command](args)
    except (UsageError, OSError, ValueError) as exc:
        # FormatError and BoundsError are ValueErrors
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
