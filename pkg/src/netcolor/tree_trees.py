"""Coloring subtree objects on tree spaces.

The NM colorer picks a small core (two trees per edge and endpoint that
reach farthest into the edge), colors trimmed copies of it from a root
outwards, and extends the result edge by edge without new colors.  The
CF colorer peels unique-maximum classes off NM colorings of the core and
finishes with a dummy color and per-edge chains.
"""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction

from .chain import cf_chain, nm_chain
from .coloring import Coloring, ceil_log
from .netspace import NetworkSpace, Point, Region, id_key
from .paths import PathLine
from .tree_balls import find_centroid

__all__ = [
    "CoreSelection",
    "check_zones",
    "cf_bound_trees",
    "cf_color_trees",
    "nm_bound_trees",
    "nm_color_core",
    "nm_color_trees",
    "nm_extend",
    "path_zones",
    "select_core",
    "trim_tree",
]


def _require_tree(space: NetworkSpace) -> None:
    if not space.is_tree:
        raise ValueError("a tree space is required")


def _is_heavy_regime(k: int, ell: int) -> bool:
    # ell > 2 sqrt(6k)  <=>  ell^2 > 24k
    return ell * ell > 24 * k


def nm_bound_trees(k: int, ell: int, n: int) -> int:
    """``min(ell + 1, ceil(2 sqrt(6k)), n)``."""
    return min(ell + 1, math.isqrt(24 * k - 1) + 1 if k > 0 else 0, n) if n else 0


@dataclass
class CoreSelection:
    """Per ``(edge, endpoint)`` the chosen tree ids, per edge their union."""

    by_pair: dict = field(default_factory=dict)
    by_edge: dict = field(default_factory=dict)

    @property
    def core(self) -> list:
        ids = set()
        for members in self.by_edge.values():
            ids.update(members)
        return sorted(ids, key=id_key)

    def edges_of(self, tree_id) -> list:
        """``E(T)``: the edges whose selection contains the tree."""
        return sorted((e for e, ms in self.by_edge.items() if tree_id in ms), key=id_key)


def _regions(space, objects) -> dict:
    return {o.id: o.extent(space) for o in objects}


def select_core(space: NetworkSpace, objects, regions: dict | None = None) -> CoreSelection:
    """Two trees per (edge, non-leaf endpoint) containing it and reaching farthest in."""
    _require_tree(space)
    if regions is None:
        regions = _regions(space, objects)
    sel = CoreSelection()
    ids = sorted(regions, key=id_key)
    for eid in space.edge_ids():
        e = space.edges[eid]
        chosen: list = []
        for v in (e.u, e.v):
            if space.degree(v) <= 1:
                continue
            at_v = [i for i in ids if regions[i].contains(space, Point.at(v))]
            at_v.sort(key=lambda i: (-regions[i].length_on(eid), id_key(i)))
            sel.by_pair[(eid, v)] = at_v[:2]
            chosen.extend(i for i in at_v[:2] if i not in chosen)
        sel.by_edge[eid] = chosen
    return sel


def trim_tree(space: NetworkSpace, region: Region, edges) -> Region:
    """Smallest connected region containing ``region`` on each of ``edges``."""
    edges = list(edges)
    raw = [(eid, a, b) for eid in edges for a, b in region.intervals(eid)]
    if not raw:
        return Region({})
    anchors = []
    for eid, a, b in raw:
        e = space.edges[eid]
        if a == 0:
            anchors.append(e.u)
        if b == e.length:
            anchors.append(e.v)
    anchors = sorted(set(anchors), key=id_key)
    for i in range(1, len(anchors)):
        path = space.shortest_path_nodes(anchors[0], anchors[i])
        for eid in space.path_edges(path):
            raw.append((eid, 0, space.edges[eid].length))
    return Region.build(space, raw)


# -- coloring the core ---------------------------------------------------------------


class _Cover:
    """Colored regions indexed by edge, for 'covered by exactly one' queries."""

    def __init__(self, space):
        self.space = space
        self.by_edge: dict = {}

    def add(self, region: Region, color) -> None:
        for eid, ivs in region.pieces.items():
            self.by_edge.setdefault(eid, []).append((ivs, color))

    def single_colors(self, region: Region) -> set:
        """Colors of points of ``region`` covered by exactly one colored region."""
        out = set()
        for eid, ivs in region.pieces.items():
            placed = self.by_edge.get(eid)
            if not placed:
                continue
            events = set()
            for a, b in ivs:
                events.update((a, b))
            for pivs, _ in placed:
                for a, b in pivs:
                    events.update((a, b))
            events = sorted(events)
            samples = list(events) + [(x + y) / 2 for x, y in zip(events, events[1:])]
            for x in samples:
                if not any(a <= x <= b for a, b in ivs):
                    continue
                hit = [c for pivs, c in placed if any(a <= x <= b for a, b in pivs)]
                if len(hit) == 1:
                    out.add(hit[0])
        return out


def nm_color_core(space: NetworkSpace, sel: CoreSelection, regions: dict, k: int, ell: int,
                  debug: bool = False) -> Coloring:
    """NM coloring of the core.

    In the heavy regime (``ell > 2 sqrt(6k)``) trees chosen for at least
    ``sqrt(6k)`` edges get private colors.  The rest are trimmed and colored
    greedily while walking the space from a centroid root: each tree takes
    the smallest color not carried alone by any point of its trimmed copy.
    With ``debug`` the zone invariant is checked after every tree.
    """
    core = sel.core
    colors: dict = {}
    heavy = []
    if _is_heavy_regime(k, ell):
        heavy = [i for i in core if len(sel.edges_of(i)) ** 2 >= 6 * k]
    for c, i in enumerate(heavy):
        colors[i] = c
    base = len(heavy)
    light = [i for i in core if i not in colors]
    trimmed = {i: trim_tree(space, regions[i], sel.edges_of(i)) for i in light}
    if not light:
        return Coloring(colors, {"heavy": heavy, "trimmed": trimmed})

    root = find_centroid(space, space.internal_nodes)
    parent = {root: None}
    order = [root]
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for _, y in space.incident(x):
            if y not in parent:
                parent[y] = x
                order.append(y)
                queue.append(y)

    cover = _Cover(space)
    done = set()
    children: dict = {}
    for y, x in parent.items():
        if x is not None:
            children.setdefault(x, []).append(y)
    for x in order:
        here = [i for i in light if i not in done and trimmed[i].contains(space, Point.at(x))]
        if not here:
            continue
        here.sort(key=lambda i: (-trimmed[i].total_length(), id_key(i)))
        if parent[x] is not None:
            up = _edge_between(space, x, parent[x])
            first = min(here, key=lambda i: (-trimmed[i].length_on(up), id_key(i)))
            here.remove(first)
            here.insert(0, first)
        for i in here:
            banned = cover.single_colors(trimmed[i])
            c = base
            while c in banned:
                c += 1
            colors[i] = c
            cover.add(trimmed[i], c)
            done.add(i)
            if debug:
                check_zones(space, x, children, {j: trimmed[j] for j in done}, colors)
    missing = [i for i in light if i not in done]
    if missing:
        raise AssertionError(f"trimmed trees avoid every node: {missing[:5]}")
    return Coloring(colors, {"heavy": heavy, "trimmed": trimmed})


ZONE_MIXED, ZONE_SINGLE, ZONE_EMPTY = 0, 1, 2


def path_zones(line: PathLine, regions: dict, colors: dict) -> list:
    """Zone of each sample point along ``line``: mixed colors, one tree, or none.

    Raises AssertionError at a point covered twice in a single color.
    """
    ivs = line.intervals(regions)
    events = sorted({x for iv in ivs for x in (iv.left, iv.right)} | {Fraction(0), line.length})
    samples = sorted(set(events) | {(a + b) / 2 for a, b in zip(events, events[1:])})
    zones = []
    for x in samples:
        hit = [iv.id for iv in ivs if iv.left <= x <= iv.right]
        if not hit:
            zones.append(ZONE_EMPTY)
        elif len(hit) == 1:
            zones.append(ZONE_SINGLE)
        elif len({colors[i] for i in hit}) > 1:
            zones.append(ZONE_MIXED)
        else:
            raise AssertionError(f"monochromatic point at {x} on path {line.nodes}")
    return zones


def check_zones(space, root, children: dict, regions: dict, colors: dict) -> None:
    """Every path from ``root`` down to a leaf runs mixed, then single, then empty."""
    stack = [[root]]
    while stack:
        path = stack.pop()
        below = children.get(path[-1], [])
        if below:
            stack.extend(path + [y] for y in below)
            continue
        if len(path) < 2:
            continue
        zones = path_zones(PathLine(space, path), regions, colors)
        if zones != sorted(zones):
            raise AssertionError(f"zones out of order on path {path}: {zones}")


def _edge_between(space, x, y):
    for eid, z in space.incident(x):
        if z == y:
            return eid
    raise ValueError(f"{x!r} and {y!r} are not adjacent")


# -- extension -----------------------------------------------------------------------


def nm_extend(space: NetworkSpace, sel: CoreSelection, core_colors: dict, regions: dict) -> Coloring:
    """Extend an NM coloring of the core to every object without new colors.

    With fewer than two core colors everything is recolored by chains
    along paths from a fixed leaf.
    """
    colors = dict(core_colors)
    if len(set(colors.values())) < 2:
        return Coloring(_leaf_path_chains(space, regions), {"extension": "leaf-paths"})

    internal = set(n for n in space.nodes if space.degree(n) > 1)
    doubly, per_edge = [], {}
    for i in sorted(regions, key=id_key):
        if i in colors:
            continue
        reg = regions[i]
        if any(reg.contains(space, Point.at(x)) for x in internal):
            doubly.append(i)
            continue
        home = _home_edge(space, reg, internal)
        if home is None:
            raise AssertionError(f"tree {i!r} neither contains an internal node nor lies in one edge")
        per_edge.setdefault(home, []).append(i)

    for eid in space.edge_ids():
        stars = per_edge.get(eid)
        if not stars:
            continue
        _extend_edge(space, sel, regions, colors, eid, stars)

    used = sorted(set(colors.values()))
    for i in doubly:
        colors[i] = used[0]
    return Coloring(colors, {"extension": "edges", "doubly_covered": doubly})


def _home_edge(space, reg: Region, internal: set):
    """The single edge holding a region that avoids internal nodes, or None."""
    # a leaf node shows up only on its own edge, so one edge id is expected
    edges = sorted(reg.pieces, key=id_key)
    return edges[0] if len(edges) == 1 else None


def _extend_edge(space, sel, regions, colors, eid, stars):
    e = space.edges[eid]
    r, r2 = e.u, e.v
    if space.degree(r) <= 1:
        r, r2 = r2, r
    t_r = _farthest(sel, regions, eid, r)
    t_r2 = _farthest(sel, regions, eid, r2)
    palette = sorted(set(colors.values()))
    if t_r is not None:
        c_r = colors[t_r]
    elif t_r2 is not None:
        c_r = next(c for c in palette if c != colors[t_r2])
    else:
        c_r = palette[0]
    if t_r2 is not None and colors[t_r2] != c_r:
        c_r2 = colors[t_r2]
    else:
        c_r2 = next(c for c in palette if c != c_r)
    L = e.length
    if t_r is not None and regions[t_r].length_on(eid) == L:
        for i in stars:
            colors[i] = c_r2
        return
    if t_r2 is not None and regions[t_r2].length_on(eid) == L:
        for i in stars:
            colors[i] = c_r
        return
    line = PathLine(space, [r, r2])
    chain_ids = list(stars) + [i for i in (t_r, t_r2) if i is not None]
    ivs = line.intervals({i: regions[i] for i in chain_ids})
    got = nm_chain(ivs, palette=(c_r, c_r2)).colors
    if t_r is not None and got[t_r] != colors[t_r]:
        raise AssertionError("the chain must keep the color of the tree at r")
    if t_r2 is not None and got[t_r2] != colors[t_r2]:
        old, new = colors[t_r2], got[t_r2]
        side = _side_ids(space, eid, r2, regions, colors)
        for i in side:
            if colors[i] == old:
                colors[i] = new
            elif colors[i] == new:
                colors[i] = old
    for i in stars:
        colors[i] = got[i]
    if t_r2 is not None:
        colors[t_r2] = got[t_r2]


def _farthest(sel, regions, eid, v):
    members = sel.by_pair.get((eid, v))
    if not members:
        return None
    return min(members, key=lambda i: (-regions[i].length_on(eid), id_key(i)))


def _side_ids(space, eid, r2, regions, colors) -> list:
    """Colored trees inside the part of the space hanging from ``r2`` (edge ``eid`` included)."""
    e = space.edges[eid]
    r = space.other(eid, r2)
    seen = {r2}
    stack = [r2]
    side_edges = {eid}
    while stack:
        x = stack.pop()
        for f, y in space.incident(x):
            if f == eid or y in seen:
                continue
            seen.add(y)
            side_edges.add(f)
            stack.append(y)
    out = []
    for i in colors:
        reg = regions[i]
        if reg.contains(space, Point.at(r)):
            continue
        if all(f in side_edges for f in reg.pieces):
            out.append(i)
    return out


def _leaf_path_chains(space, regions) -> dict:
    leaves = sorted(space.leaves, key=id_key)
    colors: dict = {}
    if not space.edges:
        for i in regions:
            colors[i] = 0
        return colors
    start = leaves[0]
    for other in leaves[1:]:
        line = PathLine(space, space.shortest_path_nodes(start, other))
        got = nm_chain(line.intervals(regions)).colors
        for i, c in got.items():
            if colors.setdefault(i, c) != c:
                raise AssertionError(f"tree {i!r} got two chain colors")
    return colors


# -- NM pipeline ---------------------------------------------------------------------


def _max_leaves(space, regions) -> int:
    return max((reg.leaf_count(space) for reg in regions.values()), default=0)


def nm_color_trees(space: NetworkSpace, objects, debug: bool = False) -> Coloring:
    """NM coloring of subtree objects with at most ``min(ell + 1, 2 sqrt(6k))`` colors."""
    _require_tree(space)
    objects = sorted(objects, key=lambda o: id_key(o.id))
    regions = _regions(space, objects)
    return _nm_pipeline(space, regions, debug)


def _nm_pipeline(space, regions, debug: bool = False) -> Coloring:
    k, ell, n = space.k, _max_leaves(space, regions), len(regions)
    if not regions:
        return Coloring({}, {"algorithm": "nm-trees"})
    sel = select_core(space, None, regions)
    core_col = nm_color_core(space, sel, regions, k, ell, debug=debug)
    ext = nm_extend(space, sel, core_col.colors, regions)
    out = ext.relabeled()
    out.meta = {
        "algorithm": "nm-trees",
        "k": k,
        "ell": ell,
        "n": n,
        "core": sel.core,
        "heavy": core_col.meta["heavy"],
        "core_palette": len(set(core_col.colors.values())),
        "extension": ext.meta["extension"],
    }
    return out


# -- CF ------------------------------------------------------------------------------


def cf_bound_trees(k: int, ell: int, singletons: int) -> dict:
    """Implemented palette bound: ``singletons + (ell' + 1) * R + 4``.

    ``ell' = min(ell, sqrt(6k))`` and ``R = ceil(log_{(ell'+1)/ell'} 6k)``.
    """
    if ell <= 0 or k <= 0:
        return {"ell_prime": 0, "rounds": 1, "value": singletons + 5}
    if ell * ell <= 6 * k:
        ell_p = ell
        rounds = ceil_log(6 * k, Fraction(ell + 1, ell))
        value = singletons + (ell + 1) * max(rounds, 1) + 4
    else:
        ell_p = math.sqrt(6 * k)
        rounds = math.ceil(math.log(6 * k) / math.log((ell_p + 1) / ell_p))
        value = singletons + math.floor((ell_p + 1) * max(rounds, 1)) + 4
    return {"ell_prime": ell_p, "rounds": max(rounds, 1), "value": value}


def cf_color_trees(space: NetworkSpace, objects) -> Coloring:
    """CF coloring of subtree objects on a tree space.

    Colors, lowest first: one dummy color for non-core trees through an
    internal node (they are covered twice by the core), private colors
    for heavy core trees, one color per peeling round on the rest of the
    core (unique-maximum there), and three chain colors for trees inside
    a single edge.
    """
    _require_tree(space)
    objects = sorted(objects, key=lambda o: id_key(o.id))
    regions = _regions(space, objects)
    if not regions:
        return Coloring({}, {"algorithm": "cf-trees"})
    k, ell = space.k, _max_leaves(space, regions)
    sel = select_core(space, None, regions)
    core = sel.core
    heavy = []
    if _is_heavy_regime(k, ell):
        heavy = [i for i in core if len(sel.edges_of(i)) ** 2 >= 6 * k]

    internal = set(n for n in space.nodes if space.degree(n) > 1)
    doubly, per_edge = [], {}
    core_set = set(core)
    for i in sorted(regions, key=id_key):
        if i in core_set:
            continue
        reg = regions[i]
        if any(reg.contains(space, Point.at(x)) for x in internal):
            doubly.append(i)
            continue
        home = _home_edge(space, reg, internal)
        if home is None:
            raise AssertionError(f"tree {i!r} neither contains an internal node nor lies in one edge")
        per_edge.setdefault(home, []).append(i)

    colors: dict = {}
    nxt = 0
    if doubly:
        for i in doubly:
            colors[i] = nxt
        nxt += 1
    for i in heavy:
        colors[i] = nxt
        nxt += 1

    remaining = [i for i in core if i not in colors]
    rounds = 0
    round_palettes = []
    while remaining:
        nm = _nm_pipeline(space, {i: regions[i] for i in remaining})
        classes = Counter(nm.colors.values())
        round_palettes.append(len(classes))
        biggest = min(classes, key=lambda c: (-classes[c], c))
        frozen = [i for i in remaining if nm.colors[i] == biggest]
        for i in frozen:
            colors[i] = nxt
        nxt += 1
        rounds += 1
        remaining = [i for i in remaining if i not in colors]

    blue, red, grey = nxt, nxt + 1, nxt + 2
    for eid in sorted(per_edge, key=id_key):
        e = space.edges[eid]
        a, b = (e.u, e.v) if space.degree(e.u) > 1 or space.degree(e.v) <= 1 else (e.v, e.u)
        line = PathLine(space, [a, b])
        ivs = line.intervals({i: regions[i] for i in per_edge[eid]})
        colors.update(cf_chain(ivs, palette=(blue, red, grey)).colors)

    bound = cf_bound_trees(k, ell, len(heavy))
    meta = {
        "algorithm": "cf-trees",
        "k": k,
        "ell": ell,
        "n": len(regions),
        "core": core,
        "heavy": heavy,
        "rounds": rounds,
        "round_palettes": round_palettes,
        "doubly_covered": doubly,
        "bound": bound,
    }
    return Coloring(colors, meta)
