"""Instance generators: lower-bound constructions and seeded random instances."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np
from scipy.spatial import Delaunay

from .netspace import Ball, NetworkSpace, Point, SubtreeRegion

__all__ = [
    "Instance",
    "gen_binary_tree_paths",
    "gen_comb",
    "gen_k4",
    "gen_random",
    "gen_random_planar_space",
    "gen_random_tree_space",
    "gen_star_pairs",
    "random_balls",
    "random_subtrees",
    "star_pairs_size",
]


@dataclass
class Instance:
    space: NetworkSpace
    objects: list
    meta: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.objects)

    @property
    def ell(self) -> int:
        """Largest leaf count among the objects."""
        return max((o.extent(self.space).leaf_count(self.space) for o in self.objects), default=0)

    def __iter__(self):
        # allows ``space, objects = gen_...(...)``
        return iter((self.space, self.objects))


def star_pairs_size(k: int, ell: int, n: int) -> int:
    """``min(ell + 1, m', n)`` with ``m'`` the largest m such that C(m, 2) <= k."""
    m_prime = (1 + math.isqrt(1 + 8 * k)) // 2
    return min(ell + 1, m_prime, n)


def gen_star_pairs(k: int, ell: int, n: int) -> Instance:
    """Star with ``k`` leaves; every pair of trees owns a private leaf.

    Tree ``i`` is the union of the spokes leading to the leaves of its
    pairs, so any NM coloring must give all trees distinct colors.
    """
    if k < 1 or n < 1 or ell < 0:
        raise ValueError("need k >= 1, n >= 1, ell >= 0")
    m = star_pairs_size(k, ell, n)
    legs = max(k, 3)
    if k < 3:
        # a star needs 3 spokes; with fewer leaves the space is one edge
        space = NetworkSpace([(0, "hub", 0, 1)])
        legs = 1
    else:
        space = NetworkSpace(
            [(i, "hub", i, 1) for i in range(legs)],
            coords={"hub": (0.0, 0.0), **{i: (math.cos(2 * math.pi * i / legs), math.sin(2 * math.pi * i / legs)) for i in range(legs)}},
        )
    spokes: dict = {i: [] for i in range(m)}
    for leaf, (i, j) in enumerate(combinations(range(m), 2)):
        spokes[i].append(leaf)
        spokes[j].append(leaf)
    objects = []
    for i in range(m):
        legs_i = spokes[i] or [0]
        objects.append(SubtreeRegion(i, tuple((leaf, 0, 1) for leaf in legs_i)))
    return Instance(space, objects, {"generator": "star_pairs", "k": k, "ell": ell, "n": n, "m": m})


def gen_binary_tree_paths(k: int, n: int) -> Instance:
    """Complete binary tree of height ``floor(log2 min(k, n))``, one root path per leaf.

    The root has degree 2, so it is smoothed away: its two child edges form
    a single edge and the root survives as the midpoint of that edge.
    Height 0 degenerates to a single edge carrying one path.
    """
    h = int(math.floor(math.log2(min(k, n)))) if min(k, n) >= 1 else 0
    if h == 0:
        space = NetworkSpace([("e", "r", "x", 2)])
        return Instance(space, [SubtreeRegion(0, (("e", 0, 2),))], {"generator": "binary_tree_paths", "height": 0})
    # heap numbering: root 1, children 2i, 2i+1, leaves 2^h .. 2^(h+1)-1
    edges = []
    parent_edge = {}
    for x in range(2, 2 ** (h + 1)):
        if x in (2, 3):
            continue
        edges.append((f"e{x}", x // 2, x, 1))
        parent_edge[x] = (f"e{x}", 0, 1)
    edges.append(("root", 2, 3, 2))  # the root sits at offset 1
    coords = {}
    for x in range(2, 2 ** (h + 1)):
        depth = x.bit_length() - 1
        coords[x] = ((x - 2 ** depth + 0.5) / 2 ** depth, -float(depth))
    space = NetworkSpace(edges, coords=coords)
    objects = []
    for idx, leaf in enumerate(range(2 ** h, 2 ** (h + 1))):
        frags = []
        x = leaf
        while x > 3:
            frags.append(parent_edge[x])
            x //= 2
        frags.append(("root", 0, 1) if x == 2 else ("root", 1, 2))
        objects.append(SubtreeRegion(idx, tuple(frags)))
    return Instance(space, objects, {"generator": "binary_tree_paths", "height": h, "k": k, "n": n})


def gen_comb(t: int) -> Instance:
    """The comb: spine of ``t + 2`` unit-spaced points with teeth of length ``t + 2``.

    Spine point ``p_i`` sits at ``(i, 0)`` and its tooth tip ``q_i`` at
    ``(i, t + 2)``.  ``t + 1`` balls of radius ``t + 2`` are centred at
    ``(i + 2/3, 0)``.  The two end spine points have degree 2 and are
    merged into the edge joining their neighbours.
    """
    if t < 0:
        raise ValueError("t must be non-negative")
    L = t + 2
    coords = {f"p{i}": (float(i), 0.0) for i in range(2, t + 2)}
    coords.update({f"q{i}": (float(i), float(L)) for i in range(1, t + 3)})
    two_thirds = Fraction(2, 3)
    if t == 0:
        space = NetworkSpace([("s", "q1", "q2", 2 * L + 1)], coords=coords)
        balls = [Ball(1, space.point("s", L + two_thirds), L)]
        return Instance(space, balls, {"generator": "comb", "t": 0})
    edges = [("s1", "q1", "p2", L + 1)]
    for i in range(2, t + 1):
        edges.append((f"s{i}", f"p{i}", f"p{i + 1}", 1))
    edges.append((f"s{t + 1}", f"p{t + 1}", f"q{t + 2}", 1 + L))
    for i in range(2, t + 2):
        edges.append((f"tooth{i}", f"p{i}", f"q{i}", L))
    space = NetworkSpace(edges, coords=coords)
    balls = []
    for i in range(1, t + 2):
        if i == 1:
            center = space.point("s1", L + two_thirds)
        else:
            center = space.point(f"s{i}", two_thirds)
        balls.append(Ball(i, center, L))
    return Instance(space, balls, {"generator": "comb", "t": t})


def gen_k4(radius=Fraction(2, 3)) -> Instance:
    """K4 with unit edges and one ball of the given radius per node."""
    nodes = [0, 1, 2, 3]
    edges = [(f"{a}{b}", a, b, 1) for a, b in combinations(nodes, 2)]
    coords = {0: (0.0, 0.0), 1: (2.0, 0.0), 2: (1.0, 1.8), 3: (1.0, 0.6)}
    space = NetworkSpace(edges, coords=coords)
    balls = [Ball(v, Point.at(v), Fraction(radius)) for v in nodes]
    return Instance(space, balls, {"generator": "k4", "radius": str(Fraction(radius))})


# -- random instances ----------------------------------------------------------


def _rand_length(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, 12), rng.choice((1, 2, 3)))


def gen_random_tree_space(rng: random.Random, t: int | None = None, k: int | None = None) -> NetworkSpace:
    """Random tree space with ``t`` internal nodes, or with at most ``k`` leaves.

    Internal nodes get degree >= 3 by attaching extra leaves, so no node
    has degree 2.
    """
    if t is None:
        if k is None:
            raise ValueError("give t or k")
        if k < 2:
            raise ValueError("a tree space has at least 2 leaves")
        # with internal degrees exactly 3, k = t + 2
        t = max(0, k - 2 - rng.randint(0, max(0, (k - 2) // 3)))
    if t == 0:
        return NetworkSpace([(0, 0, 1, _rand_length(rng))])
    internal = list(range(t))
    deg = {x: 0 for x in internal}
    tree_edges = []
    for i in range(1, t):
        if k is None:
            a = rng.randrange(i)
        else:
            # internal degree <= 3 keeps the forced leaves at exactly t + 2 <= k
            a = rng.choice([x for x in range(i) if deg[x] < 3])
        tree_edges.append((a, i))
        deg[a] += 1
        deg[i] += 1
    leaf_budget = None if k is None else k
    extra = {}
    for x in internal:
        need = max(0, 3 - deg[x])
        extra[x] = need
    if leaf_budget is not None:
        spare = leaf_budget - sum(extra.values())
        for _ in range(max(0, spare)):
            extra[rng.choice(internal)] += 1
    else:
        for x in internal:
            if rng.random() < 0.2:
                extra[x] += 1
    edges = []
    eid = 0
    for a, b in tree_edges:
        edges.append((eid, a, b, _rand_length(rng)))
        eid += 1
    nxt = t
    for x in internal:
        for _ in range(extra[x]):
            edges.append((eid, x, nxt, _rand_length(rng)))
            eid += 1
            nxt += 1
    return NetworkSpace(edges)


def gen_random_planar_space(rng: random.Random, t: int) -> NetworkSpace:
    """Delaunay triangulation of ``t`` random points, thinned, plus pendant leaves.

    Edges are removed only while both endpoints keep degree >= 3 and the
    graph stays connected; any node left with degree 2 gets a pendant leaf.
    """
    import networkx as nx

    t = max(t, 4)
    pts = np.array([[rng.random(), rng.random()] for _ in range(t)])
    tri = Delaunay(pts)
    g = nx.Graph()
    g.add_nodes_from(range(t))
    for simplex in tri.simplices:
        for a, b in combinations(sorted(int(x) for x in simplex), 2):
            g.add_edge(a, b)
    cand = sorted(g.edges())
    rng.shuffle(cand)
    for a, b in cand[: len(cand) // 3]:
        if g.degree(a) > 3 and g.degree(b) > 3:
            g.remove_edge(a, b)
            if not nx.is_connected(g):
                g.add_edge(a, b)
    edges = []
    coords = {i: (float(pts[i][0]), float(pts[i][1])) for i in range(t)}
    eid = 0
    for a, b in sorted(g.edges()):
        edges.append((eid, a, b, _rand_length(rng)))
        eid += 1
    nxt = t
    for x in range(t):
        pendants = (3 - g.degree(x)) if g.degree(x) < 3 else (1 if rng.random() < 0.25 else 0)
        for _ in range(pendants):
            edges.append((eid, x, nxt, _rand_length(rng)))
            coords[nxt] = (coords[x][0] + 0.05 * rng.random(), coords[x][1] + 0.05 * rng.random())
            eid += 1
            nxt += 1
    return NetworkSpace(edges, coords=coords)


def _random_point(rng: random.Random, space: NetworkSpace) -> Point:
    if rng.random() < 0.25:
        return Point.at(rng.choice(space.nodes))
    eid = rng.choice(space.edge_ids())
    L = space.edges[eid].length
    return space.point(eid, L * Fraction(rng.randint(0, 12), 12))


def random_balls(rng: random.Random, space: NetworkSpace, n: int) -> list[Ball]:
    # radii on the scale of a typical edge, so that no single ball swallows the space
    lengths = sorted(e.length for e in space.edges.values())
    scale = lengths[len(lengths) // 2]
    balls = []
    for i in range(n):
        radius = scale * Fraction(rng.randint(0, 30), 12) if rng.random() < 0.85 else Fraction(0)
        balls.append(Ball(i, _random_point(rng, space), radius))
    return balls


def random_subtrees(rng: random.Random, space: NetworkSpace, n: int, ell: int) -> list[SubtreeRegion]:
    """``n`` random connected regions with at most ``ell`` leaves each.

    About a quarter are sub-intervals of a single edge; the rest grow from
    a node by whole edges and end in partial edges.
    """
    objects = []
    for i in range(n):
        if rng.random() < 0.25 or ell < 2:
            eid = rng.choice(space.edge_ids())
            L = space.edges[eid].length
            a, b = sorted(L * Fraction(rng.randint(0, 12), 12) for _ in range(2))
            if ell < 2:
                b = a
            objects.append(SubtreeRegion(i, ((eid, a, b),)))
            continue
        objects.append(SubtreeRegion(i, _grow_subtree(rng, space, ell)))
    return objects


def _grow_subtree(rng: random.Random, space: NetworkSpace, ell: int) -> tuple:
    start = rng.choice(space.internal_nodes or space.nodes)
    nodes = {start}
    frags: list = []
    target = rng.randint(0, 6)
    for _ in range(target):
        frontier = [(eid, x, y) for x in sorted(nodes, key=str) for eid, y in space.incident(x) if y not in nodes]
        if not frontier:
            break
        eid, x, y = rng.choice(frontier)
        trial = frags + [(eid, 0, space.edges[eid].length)]
        if _leaves(space, trial) <= ell:
            frags = trial
            nodes.add(y)
    # partial tips into edges leaving the node set
    for x in sorted(nodes, key=str):
        for eid, y in space.incident(x):
            if y in nodes or rng.random() < 0.5:
                continue
            L = space.edges[eid].length
            depth = L * Fraction(rng.randint(1, 11), 12)
            frag = (eid, 0, depth) if space.edges[eid].u == x else (eid, L - depth, L)
            trial = frags + [frag]
            if _leaves(space, trial) <= ell:
                frags = trial
    if not frags:
        eid, _ = space.incident(start)[0]
        off = space.offset_of(eid, start)
        frags = [(eid, off, off)]
    return tuple(frags)


def _leaves(space: NetworkSpace, frags: list) -> int:
    return SubtreeRegion(None, tuple(frags)).extent(space).leaf_count(space)


def gen_random(kind: str = "tree", objects: str = "balls", seed: int = 0, t: int | None = None,
               k: int | None = None, n: int = 16, ell: int = 4) -> Instance:
    """Deterministic random instance for a seed.

    ``kind`` is ``tree`` or ``planar``; ``objects`` is ``balls`` or
    ``subtrees`` (tree spaces only).
    """
    rng = random.Random(seed)
    if kind == "tree":
        space = gen_random_tree_space(rng, t=t, k=k if t is None else None) if (t is not None or k is not None) \
            else gen_random_tree_space(rng, t=rng.randint(1, 8))
    elif kind == "planar":
        space = gen_random_planar_space(rng, t if t is not None else rng.randint(4, 12))
    else:
        raise ValueError(f"unknown space kind {kind!r}")
    if objects == "balls":
        objs = random_balls(rng, space, n)
    elif objects == "subtrees":
        if kind != "tree":
            raise ValueError("subtree objects need a tree space")
        objs = random_subtrees(rng, space, n, ell)
    else:
        raise ValueError(f"unknown object kind {objects!r}")
    meta = {"generator": "random", "kind": kind, "objects": objects, "seed": seed}
    if objects == "subtrees":
        meta["ell"] = ell
    return Instance(space, objs, meta)
