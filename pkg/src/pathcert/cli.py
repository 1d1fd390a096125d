"""Command-line entry point: ``pathcert <gen|find|dichotomy|verify|oracle|refine>``.

Exit codes: 0 success or verified; 1 verification failed, or a witness
required by --expect was not found; 2 input or parameter error; 3 budget
exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import certificates
from .dichotomy import MAX_K, MAX_T, bounds, spider_dichotomy, tree_dichotomy
from .embed import find_path_induced, find_path_induced_parallel
from .errors import BaseLevelViolation, BudgetExceeded, GraphFormatError, InvalidEmbedding
from .families import FAMILIES, FamilySpec, brute_force_path_induced, chromatic_number_exact, clique_number_exact
from .graph import load_graph, save_graph
from .refine import GOALS, refine_embedding
from .tree import RootedTree, path_tree, spider, spider_cover

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(cert: dict, out: str | None) -> None:
    text = certificates.dumps(cert)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _add_tree_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--d", type=int, help="spider branching")
    p.add_argument("--k", type=int, help="spider depth")
    p.add_argument("--tree", help="rooted tree JSON file")
    p.add_argument("--tree-path", type=int, metavar="M", help="path on M vertices rooted at an end")


def _tree_from(args) -> RootedTree:
    chosen = [args.tree is not None, args.tree_path is not None, args.d is not None or args.k is not None]
    if sum(chosen) != 1:
        raise UsageError("give exactly one of --d/--k, --tree, --tree-path")
    if args.tree is not None:
        try:
            data = json.loads(Path(args.tree).read_text())
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"invalid JSON: {exc}", args.tree) from None
        return RootedTree.from_dict(data, args.tree)
    if args.tree_path is not None:
        if args.tree_path < 1:
            raise UsageError("--tree-path needs at least one vertex")
        return path_tree(args.tree_path)
    if args.d is None or args.k is None:
        raise UsageError("--d and --k go together")
    try:
        return spider(args.d, args.k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_gen(args) -> int:
    params = {key: getattr(args, key) for key in ("n", "m", "p", "s", "level") if getattr(args, key) is not None}
    try:
        G = FamilySpec(args.family, params, args.seed).build()
    except (KeyError, ValueError) as exc:
        raise UsageError(f"family {args.family}: {exc!r}") from None
    comment = f"pathcert gen --family {args.family} " + " ".join(f"--{k} {v}" for k, v in sorted(params.items()))
    if args.family == "random":
        comment += f" --seed {args.seed}"
    if args.out:
        save_graph(G, args.out, comment)
    else:
        from .graph import write_dimacs
        sys.stdout.write(write_dimacs(G, comment))
    print(f"{args.family}: n={G.n} m={G.m}", file=sys.stderr)
    return EXIT_OK


def cmd_find(args) -> int:
    G = load_graph(args.graph)
    T = _tree_from(args)
    if args.anchor is not None and not 0 <= args.anchor < G.n:
        raise UsageError(f"anchor {args.anchor} out of range for n={G.n}")
    if args.threads > 1 and args.anchor is None and args.budget is None:
        emb = find_path_induced_parallel(G, T, args.threads, args.symmetry_breaking)
    else:
        emb = find_path_induced(G, T, args.anchor, budget=args.budget, symmetry_breaking=args.symmetry_breaking)
    if emb is None:
        print("none")
        return EXIT_FAIL if args.expect == "witness" else EXIT_OK
    _emit(emb.to_dict(), args.out)
    return EXIT_FAIL if args.expect == "none" else EXIT_OK


def cmd_dichotomy(args) -> int:
    G = load_graph(args.graph)
    T = _tree_from(args)
    cover = spider_cover(T)
    if not 1 <= args.t <= MAX_T:
        raise UsageError(f"--t must lie in 1..{MAX_T}")
    if cover.k > MAX_K:
        raise UsageError(f"tree depth {cover.k} exceeds the supported maximum {MAX_K}")
    table = bounds(cover.d, cover.k, args.t)
    print(f"bound B(t={args.t}, d={cover.d}, k={cover.k}) = {table.bound}", file=sys.stderr)
    if T == spider(cover.d, cover.k):
        result = spider_dichotomy(G, cover.d, cover.k, args.t)
    else:
        result = tree_dichotomy(G, T, args.t)
    _emit(result.to_dict(), args.out)
    print(f"result: {result.kind}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    G = load_graph(args.graph)
    try:
        cert = json.loads(Path(args.cert).read_text())
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid JSON: {exc}", args.cert) from None
    verdict = certificates.verify_certificate(G, cert)
    print(("verified: " if verdict.ok else "REJECTED: ") + verdict.message)
    return EXIT_OK if verdict.ok else EXIT_FAIL


def cmd_oracle(args) -> int:
    G = load_graph(args.graph)
    if args.what == "chromatic":
        chi, _ = chromatic_number_exact(G)
        print(f"chromatic number: {chi}")
    elif args.what == "clique":
        print(f"clique number: {clique_number_exact(G)}")
    else:
        T = _tree_from(args)
        emb = brute_force_path_induced(G, T, args.anchor)
        if emb is None:
            print("none")
            return EXIT_FAIL if args.expect == "witness" else EXIT_OK
        _emit(emb.to_dict(), args.out)
    return EXIT_OK


def cmd_refine(args) -> int:
    G = load_graph(args.graph)
    cert = json.loads(Path(args.cert).read_text())
    emb = certificates.embedding_from_dict(cert, args.cert)
    goals = [g for g in args.goals.split(",") if g]
    try:
        out = refine_embedding(G, emb, args.d, goals)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if out is None:
        print("insufficient branching")
        return EXIT_FAIL
    _emit(out.to_dict(), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pathcert", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="emit a graph from a family")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--s", type=int)
    p.add_argument("--level", type=int, help="Mycielski iterate (1 = K_2)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output path; .json for JSON, anything else DIMACS")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("find", help="search for a path-induced copy")
    p.add_argument("--graph", required=True)
    _add_tree_args(p)
    p.add_argument("--anchor", type=int)
    p.add_argument("--budget", type=int, help="node-expansion budget (exit 3 when exceeded)")
    p.add_argument("--symmetry-breaking", action="store_true")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--expect", choices=("witness", "none"))
    p.add_argument("--out")
    p.set_defaults(func=cmd_find)

    p = sub.add_parser("dichotomy", help="embedding or bounded colouring")
    p.add_argument("--graph", required=True)
    _add_tree_args(p)
    p.add_argument("--t", type=int, required=True, help="clique bound: the graph has no clique of size t")
    p.add_argument("--out")
    p.set_defaults(func=cmd_dichotomy)

    p = sub.add_parser("verify", help="check a certificate against a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--cert", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="exact values for small inputs")
    p.add_argument("--graph", required=True)
    p.add_argument("--what", required=True, choices=("chromatic", "clique", "embed"))
    _add_tree_args(p)
    p.add_argument("--anchor", type=int)
    p.add_argument("--expect", choices=("witness", "none"))
    p.add_argument("--out")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("refine", help="thin an embedding to a level-stable / type-uniform copy")
    p.add_argument("--graph", required=True)
    p.add_argument("--cert", required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--goals", default=",".join(GOALS))
    p.add_argument("--out")
    p.set_defaults(func=cmd_refine)
    return parser


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, GraphFormatError, InvalidEmbedding, BaseLevelViolation, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
