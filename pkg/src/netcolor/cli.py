"""Command line front end: ``netcolor {color,validate,oracle,gen,bench,export}``.

Exit codes: 0 success or valid coloring, 1 invalid coloring (or a broken
bound in ``color``), 2 bad input.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

from .draw import to_dot, to_svg
from .estimators import ALGORITHMS, bound_for, mode_of, run_algorithm
from .generators import gen_binary_tree_paths, gen_comb, gen_k4, gen_random, gen_star_pairs
from .io import (
    InstanceFormatError,
    coloring_to_dict,
    dumps,
    instance_to_dict,
    load_coloring,
    load_instance,
)
from .validator import check, min_colors_bruteforce

EXIT_OK, EXIT_INVALID, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(path):
    try:
        return load_instance(path)
    except InstanceFormatError as exc:
        raise InputError(str(exc)) from exc


def cmd_color(args) -> int:
    inst = _load(args.instance)
    try:
        col = run_algorithm(
            args.algorithm, inst.space, inst.objects,
            threshold_exact_mis=args.threshold_exact_mis,
            threshold_exact_4color=args.threshold_exact_4color,
        )
    except (TypeError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    bound = bound_for(args.algorithm, inst.space, inst.objects, col)
    doc = coloring_to_dict(col, args.algorithm, bound)
    _emit(dumps(doc), args.out)
    if args.out:
        print(f"{args.algorithm}: {col.palette_size} colors, bound {bound['formula']} = {bound['value']}, "
              f"respected={bound['respected']}")
    return EXIT_OK if bound["respected"] else EXIT_INVALID


def cmd_validate(args) -> int:
    inst = _load(args.instance)
    try:
        colors = load_coloring(args.coloring, inst)
    except InstanceFormatError as exc:
        raise InputError(str(exc)) from exc
    verdict = check(inst.space, inst.objects, colors, args.mode)
    if verdict:
        print(f"valid {args.mode}")
        return EXIT_OK
    members = ", ".join(str(m) for m in sorted(verdict.members, key=str))
    print(f"invalid {args.mode}: {verdict.reason} at {verdict.witness!r}; objects {{{members}}}")
    return EXIT_INVALID


def cmd_oracle(args) -> int:
    inst = _load(args.instance)
    try:
        m = min_colors_bruteforce(inst.space, inst.objects, args.mode, limit=args.limit)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    print(m)
    return EXIT_OK


def _generate(args):
    if args.family == "random":
        return gen_random(args.kind, args.objects, seed=args.seed, t=args.t, k=args.k, n=args.n, ell=args.ell)
    if args.family == "star-pairs":
        return gen_star_pairs(args.k or 6, args.ell, args.n)
    if args.family == "binary-tree-paths":
        return gen_binary_tree_paths(args.k or 4, args.n)
    if args.family == "comb":
        return gen_comb(args.t if args.t is not None else 3)
    if args.family == "k4":
        return gen_k4(Fraction(args.radius))
    raise InputError(f"unknown family {args.family!r}")


def cmd_gen(args) -> int:
    try:
        inst = _generate(args)
    except (TypeError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    _emit(dumps(instance_to_dict(inst)), args.out)
    return EXIT_OK


def _bench_instance(algorithm: str, size: int, seed: int):
    space_kind, object_kind, _ = ALGORITHMS[algorithm]
    if space_kind == "path":
        return gen_random("tree", "subtrees", seed=seed, t=0, n=size, ell=1)
    if object_kind == "subtree":
        return gen_random("tree", "subtrees", seed=seed, k=max(size, 2), n=size, ell=min(6, max(size, 2)))
    if space_kind == "planar":
        return gen_random("planar", "balls", seed=seed, t=max(size, 4), n=size)
    return gen_random("tree", "balls", seed=seed, t=size, n=size)


def cmd_bench(args) -> int:
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    except ValueError as exc:
        raise InputError(f"bad --sizes: {args.sizes!r}") from exc
    print("size\tseeds\tk\tell\tt\tn\tmax_palette\tmax_bound\tvalid")
    started = time.perf_counter()
    all_ok = True
    for size in sizes:
        worst = bound_max = 0
        ks, ells, ts, ns = [], [], [], []
        ok = True
        for seed in range(args.seed, args.seed + args.seeds):
            inst = _bench_instance(args.algorithm, size, seed)
            col = run_algorithm(args.algorithm, inst.space, inst.objects,
                                threshold_exact_mis=args.threshold_exact_mis,
                                threshold_exact_4color=args.threshold_exact_4color)
            b = bound_for(args.algorithm, inst.space, inst.objects, col)
            ok &= bool(check(inst.space, inst.objects, col.colors, mode_of(args.algorithm))) and b["respected"]
            worst, bound_max = max(worst, col.palette_size), max(bound_max, b["value"])
            ks.append(inst.space.k)
            ts.append(inst.space.t)
            ns.append(inst.n)
            ells.append(inst.ell)
        all_ok &= ok
        print(f"{size}\t{args.seeds}\t{max(ks)}\t{max(ells)}\t{max(ts)}\t{max(ns)}\t{worst}\t{bound_max}\t{ok}")
    # timing goes to stderr so stdout stays reproducible
    print(f"wall time {time.perf_counter() - started:.3f}s", file=sys.stderr)
    return EXIT_OK if all_ok else EXIT_INVALID


def cmd_export(args) -> int:
    inst = _load(args.instance)
    colors = None
    if args.coloring:
        try:
            colors = load_coloring(args.coloring, inst)
        except InstanceFormatError as exc:
            raise InputError(str(exc)) from exc
    text = to_dot(inst, colors) if args.format == "dot" else to_svg(inst, colors)
    _emit(text, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="netcolor", description="NM and CF colorings of objects in network spaces.")
    sub = p.add_subparsers(dest="command", required=True)

    def thresholds(sp):
        sp.add_argument("--threshold-exact-mis", type=int, default=40,
                        help="largest ball set for exact independent sets (default 40)")
        sp.add_argument("--threshold-exact-4color", type=int, default=64,
                        help="largest assignment graph for exact 4-coloring (default 64)")

    c = sub.add_parser("color", help="color an instance")
    c.add_argument("instance")
    c.add_argument("--algorithm", required=True, choices=sorted(ALGORITHMS))
    c.add_argument("--out", help="coloring file (default stdout)")
    thresholds(c)
    c.set_defaults(func=cmd_color)

    v = sub.add_parser("validate", help="check a coloring")
    v.add_argument("instance")
    v.add_argument("coloring")
    v.add_argument("--mode", required=True, choices=["nm", "cf", "unimin", "unimax"])
    v.set_defaults(func=cmd_validate)

    o = sub.add_parser("oracle", help="exact minimum palette by exhaustive search")
    o.add_argument("instance")
    o.add_argument("--mode", required=True, choices=["nm", "cf"])
    o.add_argument("--limit", type=int, default=12, help="refuse more objects than this (default 12)")
    o.set_defaults(func=cmd_oracle)

    g = sub.add_parser("gen", help="write a generated instance")
    g.add_argument("family", choices=["random", "star-pairs", "binary-tree-paths", "comb", "k4"])
    g.add_argument("--kind", choices=["tree", "planar"], default="tree")
    g.add_argument("--objects", choices=["balls", "subtrees"], default="balls")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--t", type=int)
    g.add_argument("--k", type=int)
    g.add_argument("--n", type=int, default=16)
    g.add_argument("--ell", type=int, default=4)
    g.add_argument("--radius", default="2/3", help="ball radius for k4")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    b = sub.add_parser("bench", help="palette and time over seeded instances")
    b.add_argument("--algorithm", required=True, choices=sorted(ALGORITHMS))
    b.add_argument("--sizes", default="4,8,16")
    b.add_argument("--seeds", type=int, default=5)
    b.add_argument("--seed", type=int, default=0, help="first seed")
    thresholds(b)
    b.set_defaults(func=cmd_bench)

    e = sub.add_parser("export", help="draw an instance")
    e.add_argument("instance")
    e.add_argument("format", choices=["dot", "svg"])
    e.add_argument("--coloring")
    e.add_argument("--out")
    e.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
