"""Coloring geodesic balls on planar network spaces.

NM: the balls assigned to nodes form a planar contact graph, which is
4-colored; balls reaching uncovered parts of an edge are chain colored
with two colors avoiding the colors of the edge's endpoint balls, and
fully covered balls avoid the colors of at most three covering balls.

CF: repeated maximum independent sets of the Delaunay graph of the
internal-node core, one color per round, then a three-color chain on the
uncovered edge pieces.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import networkx as nx

from .chain import Interval, cf_chain, nm_chain
from .coloring import Coloring, ceil_log
from .netspace import NetworkSpace, Region, id_key
from .paths import assert_on_center_edge, gap_hits, uncovered_pieces
from .validator import decompose

__all__ = [
    "build_assignment_graph",
    "build_delaunay_graph",
    "cf_bound_planar",
    "cf_color_balls_planar",
    "check_planar_graph",
    "cover_witness",
    "max_independent_set",
    "nm_color_balls_planar",
    "planar_color",
]


def _require_planar(space: NetworkSpace) -> None:
    if not space.is_planar:
        raise ValueError("a planar network space is required")


def check_planar_graph(g: nx.Graph, what: str = "graph") -> None:
    """Raise AssertionError unless ``g`` is planar and meets the Euler bound."""
    n, m = g.number_of_nodes(), g.number_of_edges()
    if n >= 3 and m > 3 * n - 6:
        raise AssertionError(f"{what} breaks the Euler bound: {m} edges on {n} vertices")
    if not nx.check_planarity(g)[0]:
        raise AssertionError(f"{what} is not planar")


# -- graphs -----------------------------------------------------------------------


def build_assignment_graph(space: NetworkSpace, balls, assigned: dict | None = None) -> nx.Graph:
    """Graph on assigned balls; an edge per space edge joining differently assigned nodes."""
    if assigned is None:
        assigned = {x: bid for x, (bid, _) in space.assign_balls(balls).items()}
    g = nx.Graph()
    g.add_nodes_from(sorted(set(assigned.values()), key=id_key))
    for e in space.edges.values():
        a, b = assigned.get(e.u), assigned.get(e.v)
        if a is not None and b is not None and a != b:
            g.add_edge(a, b)
    check_planar_graph(g, "assignment graph")
    return g


def build_delaunay_graph(space: NetworkSpace, balls, regions: dict | None = None) -> nx.Graph:
    """Pairs of balls having a point covered by exactly those two balls."""
    balls = list(balls)
    if regions is None:
        regions = {b.id: b.extent(space) for b in balls}
    else:
        regions = {b.id: regions[b.id] for b in balls}
    g = nx.Graph()
    g.add_nodes_from(sorted(regions, key=id_key))
    for members in decompose(space, balls, regions).hyperedges(2):
        if len(members) == 2:
            g.add_edge(*sorted(members, key=id_key))
    check_planar_graph(g, "Delaunay graph")
    return g


# -- vertex coloring -------------------------------------------------------------


def planar_color(g: nx.Graph, exact_threshold: int = 64) -> Coloring:
    """Proper coloring of a planar graph.

    Exact backtracking finds a 4-coloring when the graph has at most
    ``exact_threshold`` vertices; larger graphs get the classical
    5-coloring with Kempe chain swaps.
    """
    if not nx.check_planarity(g)[0]:
        raise ValueError("planar_color needs a planar graph")
    if g.number_of_nodes() == 0:
        return Coloring({}, {"method": "empty"})
    if g.number_of_nodes() <= exact_threshold:
        colors = _backtrack_color(g, 4)
        if colors is not None:
            return Coloring(colors, {"method": "exact4"})
    return Coloring(_kempe5(g), {"method": "kempe5"})


def _backtrack_color(g: nx.Graph, k: int) -> dict | None:
    """DSATUR-ordered backtracking for a proper ``k``-coloring."""
    nodes = sorted(g.nodes, key=id_key)
    colors: dict = {}

    def pick():
        best = None
        for x in nodes:
            if x in colors:
                continue
            sat = len({colors[y] for y in g[x] if y in colors})
            key = (-sat, -g.degree(x), id_key(x))
            if best is None or key < best[0]:
                best = (key, x)
        return best[1]

    def solve():
        if len(colors) == len(nodes):
            return True
        x = pick()
        used = {colors[y] for y in g[x] if y in colors}
        top = max(colors.values(), default=-1)
        for c in range(min(k, top + 2)):
            if c in used:
                continue
            colors[x] = c
            if solve():
                return True
            del colors[x]
        return False

    return dict(colors) if solve() else None


def _kempe5(g: nx.Graph) -> dict:
    h = g.copy()
    order = []
    while h.number_of_nodes():
        x = min(h.nodes, key=lambda y: (h.degree(y), id_key(y)))
        order.append(x)
        h.remove_node(x)
    colors: dict = {}
    for x in reversed(order):
        nbrs = [y for y in g[x] if y in colors]
        free = sorted(set(range(5)) - {colors[y] for y in nbrs})
        if free:
            colors[x] = free[0]
            continue
        for a, b in combinations(sorted(nbrs, key=id_key), 2):
            ca, cb = colors[a], colors[b]
            chain = _kempe_chain(g, colors, a, ca, cb)
            if b in chain:
                continue
            for y in chain:
                colors[y] = cb if colors[y] == ca else ca
            colors[x] = ca
            break
        else:  # pragma: no cover - impossible for planar graphs
            raise AssertionError("Kempe chain recoloring failed")
    return colors


def _kempe_chain(g, colors, start, ca, cb) -> set:
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in g[x]:
            if y not in seen and colors.get(y) in (ca, cb):
                seen.add(y)
                stack.append(y)
    return seen


# -- independent sets --------------------------------------------------------------


def max_independent_set(g: nx.Graph, exact_threshold: int = 40) -> tuple[set, bool]:
    """``(independent set, exact?)``: branch and bound up to the threshold, else greedy."""
    if g.number_of_nodes() <= exact_threshold:
        return _mis_exact(g), True
    h = g.copy()
    chosen = set()
    while h.number_of_nodes():
        x = min(h.nodes, key=lambda y: (h.degree(y), id_key(y)))
        chosen.add(x)
        h.remove_nodes_from([x, *h[x]])
    return chosen, False


def _mis_exact(g: nx.Graph) -> set:
    adj = {x: set(g[x]) for x in g.nodes}
    best: list = [set()]

    def go(cand: set, chosen: set):
        if len(chosen) + len(cand) <= len(best[0]):
            return
        if not cand:
            best[0] = set(chosen)
            return
        # a vertex of degree <= 1 within the candidates is always safe to take
        for x in sorted(cand, key=id_key):
            if len(adj[x] & cand) <= 1:
                go(cand - {x} - adj[x], chosen | {x})
                return
        x = max(sorted(cand, key=id_key), key=lambda y: len(adj[y] & cand))
        go(cand - {x} - adj[x], chosen | {x})
        go(cand - {x}, chosen)

    go(set(adj), set())
    return best[0]


# -- NM ----------------------------------------------------------------------------


def cover_witness(space: NetworkSpace, ball, assigned: dict, regions: dict) -> list:
    """At most three assigned balls whose union contains ``ball``.

    Candidates are the balls assigned to the nodes inside ``ball`` and to
    the endpoints of every edge it meets; the smallest covering subset
    (ties by ids) is returned.
    """
    ext = regions[ball.id]
    cands = set()
    for eid in ext.pieces:
        e = space.edges[eid]
        for x in (e.u, e.v):
            if x in assigned:
                cands.add(assigned[x])
    cands = sorted(cands, key=id_key)
    for size in (1, 2, 3):
        for combo in combinations(cands, size):
            if ext.issubset(Region({}).union(*(regions[i] for i in combo))):
                return list(combo)
    raise AssertionError(f"ball {ball.id!r} is not covered by three assigned balls")


def nm_color_balls_planar(space: NetworkSpace, balls, exact_threshold: int = 64) -> Coloring:
    """NM coloring of balls on a planar space with at most four colors (five on fallback)."""
    _require_planar(space)
    balls = sorted(balls, key=lambda b: id_key(b.id))
    assigned = {x: bid for x, (bid, _) in space.assign_balls(balls).items()}
    g = build_assignment_graph(space, balls, assigned)
    core_col = planar_color(g, exact_threshold)
    colors = dict(core_col.colors)
    palette = list(range(5 if core_col.meta["method"] == "kempe5" else 4))
    core = set(assigned.values())
    regions = {b.id: b.extent(space) for b in balls}
    union = Region({}).union(*(regions[i] for i in core)) if core else Region({})
    gaps = uncovered_pieces(space, union)

    per_piece: dict = {}
    covered = []
    for b in balls:
        if b.id in core:
            continue
        hits = gap_hits(regions[b.id], gaps)
        assert_on_center_edge(space, b, hits)
        if not hits:
            covered.append(b)
        for key, iv in hits.items():
            per_piece.setdefault(key, []).append(Interval(b.id, *iv))
    for key in sorted(per_piece, key=lambda k: (id_key(k[0]), k[1])):
        e = space.edges[key[0]]
        avoid = {colors[assigned[x]] for x in (e.u, e.v) if x in assigned}
        pair = [c for c in palette if c not in avoid][:2]
        colors.update(nm_chain(per_piece[key], palette=tuple(pair)).colors)
    for b in covered:
        witness = cover_witness(space, b, assigned, regions)
        avoid = {colors[i] for i in witness}
        colors[b.id] = next(c for c in palette if c not in avoid)
    meta = {"algorithm": "nm-balls-planar", "core_method": core_col.meta["method"], "core": sorted(core, key=id_key)}
    return Coloring(colors, meta)


# -- CF ----------------------------------------------------------------------------


def _repair(space, balls, regions, chosen: set) -> int:
    """Drop members until no cell of two or more balls lies inside ``chosen``.

    Only needed when balls share boundaries so exactly that some cell has
    no Delaunay pair; returns the number of balls dropped.
    """
    dropped = 0
    cells = decompose(space, balls, {b.id: regions[b.id] for b in balls}).hyperedges(2)
    for members in sorted(cells, key=lambda m: sorted(map(id_key, m))):
        if members <= chosen:
            chosen.discard(max(members, key=id_key))
            dropped += 1
    return dropped


def _dominating(ids: list, regions: dict):
    """Smallest id whose region contains the union of all ``ids``, if any."""
    union = Region({}).union(*(regions[i] for i in ids))
    for i in ids:
        if union.issubset(regions[i]):
            return i
    return None


def cf_bound_planar(t: int, exact_mis: bool = True) -> int:
    """``ceil(log_{4/3} t) + 3``; with greedy independent sets ``ceil(log_{6/5} t) + 3``."""
    return ceil_log(t, Fraction(4, 3) if exact_mis else Fraction(6, 5)) + 3


def cf_color_balls_planar(space: NetworkSpace, balls, exact_threshold: int = 40) -> Coloring:
    """CF coloring of balls on a planar space.

    The core (balls assigned to internal nodes) is colored by rounds: each
    round takes an independent set of the current Delaunay graph, so the
    last round reaching a point colors exactly one of its balls and the
    core coloring is unique-maximum.  Remaining balls are chain colored on
    the uncovered edge pieces with three colors above the round colors.
    """
    _require_planar(space)
    balls = sorted(balls, key=lambda b: id_key(b.id))
    by_id = {b.id: b for b in balls}
    assigned = {x: bid for x, (bid, _) in space.assign_balls(balls, nodes=space.internal_nodes).items()}
    core = sorted(set(assigned.values()), key=id_key)
    regions = {b.id: b.extent(space) for b in balls}

    colors: dict = {}
    remaining = list(core)
    rounds = 0
    exact = True
    repairs = 0
    sizes = []
    while remaining:
        top = _dominating(remaining, regions)
        if top is not None:
            # one ball covers everything still in play: color it last and alone
            rest = [i for i in remaining if i != top]
            for i in rest:
                colors[i] = rounds
            rounds += 1 if rest else 0
            colors[top] = rounds
            sizes.append((len(remaining), 1))
            rounds += 1
            break
        g = build_delaunay_graph(space, [by_id[i] for i in remaining], regions)
        chosen, was_exact = max_independent_set(g, exact_threshold)
        exact = exact and was_exact
        dropped = _repair(space, [by_id[i] for i in remaining], regions, chosen)
        repairs += dropped
        sizes.append((len(remaining), len(chosen)))
        for i in chosen:
            colors[i] = rounds
        remaining = [i for i in remaining if i not in chosen]
        rounds += 1

    union = Region({}).union(*(regions[i] for i in core)) if core else Region({})
    gaps = uncovered_pieces(space, union)
    blue, red, grey = rounds, rounds + 1, rounds + 2
    per_piece: dict = {}
    for b in balls:
        if b.id in colors:
            continue
        hits = gap_hits(regions[b.id], gaps)
        assert_on_center_edge(space, b, hits)
        if not hits:
            colors[b.id] = grey
        for key, iv in hits.items():
            per_piece.setdefault(key, []).append(Interval(b.id, *iv))
    for key in sorted(per_piece, key=lambda k: (id_key(k[0]), k[1])):
        colors.update(cf_chain(per_piece[key], palette=(blue, red, grey)).colors)
    meta = {
        "algorithm": "cf-balls-planar",
        "rounds": rounds,
        "exact_mis": exact,
        "round_sizes": sizes,
        "repairs": repairs,
        "core": core,
        "t": space.t,
    }
    return Coloring(colors, meta)

