"""Acceptance criteria 1-10, one test each.

Every test records a single ``criterion N: PASS|FAIL ...`` line; the lines
are printed in the terminal summary (see conftest) and when this file is
run directly.  Tolerances are exactly those of the criteria; nothing is
relaxed for criteria that fail.
"""

import math
import os
import random
import subprocess
import sys
from fractions import Fraction
from unittest import mock

import networkx as nx
import pytest

from netcolor import planar_balls
from netcolor.chain import Interval, cf_chain, intervals_as_objects, nm_chain
from netcolor.generators import (
    gen_binary_tree_paths,
    gen_comb,
    gen_k4,
    gen_random,
    gen_star_pairs,
)
from netcolor.netspace import Point
from netcolor.planar_balls import build_assignment_graph, cf_color_balls_planar, nm_color_balls_planar
from netcolor.tree_balls import cf_color_balls_tree, nm_color_balls_tree
from netcolor.tree_trees import cf_color_trees, nm_color_trees
from netcolor.validator import check_cf, check_nm, check_unique_extremum, decompose, min_colors_bruteforce

RESULTS: dict = {}


def record(n: int, ok: bool, detail: str) -> None:
    RESULTS[n] = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(RESULTS[n])


# -- shared instance families ---------------------------------------------------------


def tree_tree_instances():
    # k <= 32, ell <= 6, n <= 64
    for seed in range(500):
        yield seed, gen_random("tree", "subtrees", seed=seed, k=2 + seed % 31, n=1 + (seed * 13) % 64, ell=1 + seed % 6)


def tree_ball_instances():
    # t <= 64, n <= 64
    for seed in range(500):
        yield seed, gen_random("tree", "balls", seed=seed, t=1 + seed % 64, n=1 + (seed * 7) % 64)


def planar_ball_instances():
    # t <= 32, n <= 48
    for seed in range(300):
        yield seed, gen_random("planar", "balls", seed=seed, t=4 + seed % 29, n=1 + (seed * 7) % 48)


def ceil_log_exact(x, base: Fraction) -> int:
    m, p = 0, Fraction(1)
    while p < x:
        p *= base
        m += 1
    return m


def ceil_log_float(x, base: float) -> int:
    m = 0
    while base ** m < x * (1 - 1e-12):
        m += 1
    return m


# -- criteria --------------------------------------------------------------------------


def test_criterion_1_chain_methods():
    bad = []
    for seed in range(1000):
        rng = random.Random(seed)
        ivs = []
        for i in range(rng.randint(1, 64)):
            a = Fraction(rng.randint(0, 200), rng.randint(1, 4))
            ivs.append(Interval(i, a, a + Fraction(rng.randint(0, 60), rng.randint(1, 4))))
        space, objs = intervals_as_objects(ivs)
        dec = decompose(space, objs)
        nm, cf = nm_chain(ivs), cf_chain(ivs)
        if not (check_nm(space, objs, nm, dec) and nm.palette_size <= 2):
            bad.append(("nm", seed))
        if not (check_cf(space, objs, cf, dec) and cf.palette_size <= 3):
            bad.append(("cf", seed))
    record(1, not bad, f"1000 interval sets, failures={len(bad)} {bad[:3]}")
    assert not bad


def test_criterion_2_trees_nm_upper_bound():
    bad = []
    for seed, inst in tree_tree_instances():
        k, ell, n = inst.space.k, inst.ell, inst.n
        col = nm_color_trees(inst.space, inst.objects)
        bound = min(ell + 1, math.isqrt(24 * k - 1) + 1, n)  # ceil(2*sqrt(6k)), exactly
        if not check_nm(inst.space, inst.objects, col) or col.palette_size > bound:
            bad.append(seed)
    record(2, not bad, f"500 instances, failures={len(bad)} {bad[:5]}")
    assert not bad


def test_criterion_3_trees_nm_lower_bound():
    rows, ok = [], True
    for k, ell, n in [(6, 3, 4), (10, 4, 5), (3, 2, 3)]:
        inst = gen_star_pairs(k, ell, n)
        got = min_colors_bruteforce(inst.space, inst.objects, "nm")
        want = min(ell + 1, math.floor((1 + math.sqrt(1 + 8 * k)) / 2), n)
        ok &= got == want
        rows.append(f"({k},{ell},{n}) oracle={got} expected={want}")
    record(3, ok, "; ".join(rows))
    assert ok


def test_criterion_4_trees_cf():
    bad = []
    for seed, inst in tree_tree_instances():
        k, ell = inst.space.k, inst.ell
        col = cf_color_trees(inst.space, inst.objects)
        singles = len(col.meta["heavy"])
        if ell * ell <= 6 * k:
            ell_p = ell
            rounds_cap = ceil_log_exact(6 * k, Fraction(ell + 1, ell)) if ell else 1
        else:
            ell_p = math.sqrt(6 * k)
            rounds_cap = ceil_log_float(6 * k, (ell_p + 1) / ell_p)
        cap = singles + (ell_p + 1) * max(rounds_cap, 1) + 4
        if not check_cf(inst.space, inst.objects, col):
            bad.append((seed, "cf"))
        elif col.palette_size > cap:
            bad.append((seed, "palette"))
        elif col.meta["rounds"] > max(rounds_cap, 1):
            bad.append((seed, "rounds"))
    oracle = {}
    for args, want in (((4, 4), 2), ((8, 8), 3)):
        inst = gen_binary_tree_paths(*args)
        oracle[args] = (min_colors_bruteforce(inst.space, inst.objects, "cf"), want)
    oracle_ok = all(got == want for got, want in oracle.values())
    ok = not bad and oracle_ok
    record(
        4,
        ok,
        f"500 instances, failures={len(bad)} {bad[:5]}; binary-tree-paths oracle "
        + ", ".join(f"{a}: got {g} expected {w}" for a, (g, w) in oracle.items()),
    )
    assert ok


def test_criterion_5_balls_trees_nm():
    bad = []
    for seed, inst in tree_ball_instances():
        col = nm_color_balls_tree(inst.space, inst.objects)
        if col.palette_size > 2 or not check_nm(inst.space, inst.objects, col):
            bad.append(seed)
    record(5, not bad, f"500 instances, failures={len(bad)} {bad[:5]}")
    assert not bad


def test_criterion_6_balls_trees_cf():
    bad = []
    for seed, inst in tree_ball_instances():
        space, balls = inst.space, inst.objects
        col = cf_color_balls_tree(space, balls)
        core_ids = set(col.meta["core"])
        core = [b for b in balls if b.id in core_ids]
        cap = ceil_log_exact(space.t, Fraction(2)) + 3
        if not check_cf(space, balls, col):
            bad.append((seed, "cf"))
        elif not check_unique_extremum(space, core, col.restrict(core_ids), "min"):
            bad.append((seed, "core unimin"))
        elif col.palette_size > cap:
            bad.append((seed, "palette"))
    oracle = {}
    for t, want in ((3, 2), (7, 3)):
        inst = gen_comb(t)
        oracle[t] = (min_colors_bruteforce(inst.space, inst.objects, "cf"), want)
    oracle_ok = all(got == want for got, want in oracle.values())
    ok = not bad and oracle_ok
    record(
        6,
        ok,
        f"500 instances, failures={len(bad)} {bad[:5]}; comb oracle "
        + ", ".join(f"t={t}: got {g} expected {w}" for t, (g, w) in oracle.items()),
    )
    assert ok


def test_criterion_7_balls_planar_nm():
    inst = gen_k4(Fraction(2, 3))
    col = nm_color_balls_planar(inst.space, inst.objects, exact_threshold=64)
    k4_ok = col.palette_size == 4 and bool(check_nm(inst.space, inst.objects, col))
    oracle = min_colors_bruteforce(inst.space, inst.objects, "nm")
    bad = []
    for seed, inst in planar_ball_instances():
        col = nm_color_balls_planar(inst.space, inst.objects, exact_threshold=64)
        if col.meta["core_method"] == "kempe5" or col.palette_size > 4 or not check_nm(inst.space, inst.objects, col):
            bad.append(seed)
    ok = k4_ok and oracle == 4 and not bad
    record(7, ok, f"K4 palette ok={k4_ok}, K4 oracle={oracle}; 300 instances, failures={len(bad)} {bad[:5]}")
    assert ok


def test_criterion_8_balls_planar_cf():
    bad = []
    for seed, inst in planar_ball_instances():
        space = inst.space
        col = cf_color_balls_planar(space, inst.objects, exact_threshold=64)
        cap = ceil_log_exact(space.t, Fraction(4, 3))
        if not check_cf(space, inst.objects, col):
            bad.append((seed, "cf"))
        elif not col.meta["exact_mis"]:
            bad.append((seed, "greedy"))
        elif col.meta["rounds"] > cap or col.palette_size > cap + 3:
            bad.append((seed, "bound"))
    record(8, not bad, f"300 instances, failures={len(bad)} {bad[:5]}")
    assert not bad


def _planar_certificate(g: nx.Graph) -> bool:
    """Planarity via an embedding whose structure (faces, Euler count) is verified."""
    ok, emb = nx.check_planarity(g)
    if not ok:
        return False
    emb.check_structure()
    n, m = g.number_of_nodes(), g.number_of_edges()
    return n < 3 or m <= 3 * n - 6


def _path_probe(space, balls, rng):
    assigned = space.assign_balls(balls)
    if not assigned:
        return None
    x = rng.choice(sorted(assigned, key=str))
    bid = assigned[x][0]
    c = next(b for b in balls if b.id == bid).center
    if c.is_node:
        target = c.node
    else:
        e = space.edges[c.edge]
        d = space.node_distances(Point.at(x))
        target = e.u if d[e.u] + c.offset <= d[e.v] + e.length - c.offset else e.v
    return all(assigned[y][0] == bid for y in space.shortest_path_nodes(x, target))


def test_criterion_9_structural_properties():
    rng = random.Random(0)
    probes = violations = 0
    seed = 0
    while probes < 10_000:
        kind = "tree" if seed % 2 else "planar"
        inst = gen_random(kind, "balls", seed=seed, t=4 + seed % 24, n=1 + seed % 40)
        seed += 1
        for _ in range(20):
            res = _path_probe(inst.space, inst.objects, rng)
            if res is None:
                break
            probes += 1
            violations += not res

    fired = []
    for s, inst in tree_ball_instances():
        try:
            cf_color_balls_tree(inst.space, inst.objects)
        except AssertionError as exc:
            fired.append(("center edge", s, str(exc)[:60]))

    graphs = []
    real = planar_balls.build_delaunay_graph

    def capture(*args, **kwargs):
        graphs.append(real(*args, **kwargs))
        return graphs[-1]

    with mock.patch.object(planar_balls, "build_delaunay_graph", capture):
        for s, inst in planar_ball_instances():
            try:
                nm_color_balls_planar(inst.space, inst.objects)
                cf_color_balls_planar(inst.space, inst.objects)
            except AssertionError as exc:
                fired.append(("cover/planarity", s, str(exc)[:60]))
            graphs.append(build_assignment_graph(inst.space, inst.objects))
    nonplanar = sum(not _planar_certificate(g) for g in graphs)
    ok = violations == 0 and not fired and nonplanar == 0
    record(
        9,
        ok,
        f"path-assignment probes={probes} violations={violations}; assertions fired={len(fired)} {fired[:2]}; "
        f"graphs checked={len(graphs)} non-planar or over Euler={nonplanar}",
    )
    assert ok


def _cli(args, cwd, hashseed):
    env = dict(os.environ, PYTHONHASHSEED=str(hashseed))
    proc = subprocess.run(
        [sys.executable, "-m", "netcolor.cli", *map(str, args)],
        cwd=cwd, env=env, capture_output=True, check=False,
    )
    return proc.returncode, proc.stdout


def _session(tmp, hashseed):
    outputs = []
    steps = [
        ["gen", "random", "--kind", "tree", "--objects", "subtrees", "--seed", 5, "--k", 9, "--n", 12, "--out", "tt.json"],
        ["gen", "random", "--kind", "tree", "--objects", "balls", "--seed", 6, "--t", 9, "--n", 14, "--out", "tb.json"],
        ["gen", "random", "--kind", "planar", "--seed", 7, "--t", 9, "--n", 14, "--out", "pb.json"],
        ["gen", "random", "--kind", "tree", "--objects", "subtrees", "--seed", 8, "--t", 0, "--n", 8, "--ell", 1, "--out", "ln.json"],
        ["gen", "k4", "--out", "k4.json"],
    ]
    for alg, inst in [("nm-trees", "tt"), ("cf-trees", "tt"), ("nm-balls-tree", "tb"), ("cf-balls-tree", "tb"),
                      ("nm-balls-planar", "pb"), ("cf-balls-planar", "pb"), ("nm-chain", "ln"), ("cf-chain", "ln")]:
        steps.append(["color", f"{inst}.json", "--algorithm", alg, "--out", f"{alg}.json"])
        steps.append(["validate", f"{inst}.json", f"{alg}.json", "--mode", alg.split("-")[0]])
        steps.append(["export", f"{inst}.json", "svg", "--coloring", f"{alg}.json"])
        steps.append(["export", f"{inst}.json", "dot", "--coloring", f"{alg}.json"])
    steps.append(["oracle", "k4.json", "--mode", "nm"])
    steps.append(["bench", "--algorithm", "cf-balls-tree", "--sizes", "4,8", "--seeds", 2])
    for step in steps:
        outputs.append(_cli(step, tmp, hashseed))
    files = {p: open(os.path.join(tmp, p), "rb").read() for p in sorted(os.listdir(tmp))}
    return outputs, files


def test_criterion_10_determinism(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    a.mkdir()
    b.mkdir()
    out_a, files_a = _session(a, 1)
    out_b, files_b = _session(b, 2)
    same_out = out_a == out_b
    same_files = files_a == files_b
    all_zero = all(code == 0 for code, _ in out_a)
    ok = same_out and same_files and all_zero
    record(
        10,
        ok,
        f"{len(out_a)} commands and {len(files_a)} files under two hash seeds; stdout identical={same_out}, "
        f"files identical={same_files}, exit codes all 0={all_zero}",
    )
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
