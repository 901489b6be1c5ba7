"""Coloring geodesic balls on tree spaces.

``nm_color_balls_tree`` is a divide and conquer over centroid nodes that always
uses two colors.  ``cf_color_balls_tree`` colors the assigned balls level
by level along a centroid decomposition (unique-minimum on that core) and
finishes every other ball with a chain coloring on the parts of edges no
core ball reaches.
"""

from __future__ import annotations

from .chain import Interval, cf_chain, nm_chain
from .coloring import Coloring, ceil_log
from .netspace import Ball, NetworkSpace, Point, Region, id_key
from .paths import PathLine, assert_on_center_edge, gap_hits, path_of_path_space, uncovered_pieces

__all__ = [
    "cf_bound_tree",
    "cf_color_balls_tree",
    "find_centroid",
    "nm_color_balls_tree",
    "tree_core",
]


def _require_tree(space: NetworkSpace) -> None:
    if not space.is_tree:
        raise ValueError("a tree space is required")


def find_centroid(space: NetworkSpace, active) -> object:
    """Active node whose removal leaves the fewest active nodes in any component.

    Ties go to the smallest node id.
    """
    active = set(active) & set(space.nodes)
    if not active:
        raise ValueError("no active node to split at")
    best = None
    for r in sorted(active, key=id_key):
        worst = max((len(active & comp) for comp in _components_without(space, r)), default=0)
        if best is None or worst < best[0]:
            best = (worst, r)
    return best[1]


def _components_without(space: NetworkSpace, r) -> list[set]:
    seen = {r}
    comps = []
    for _, w in space.incident(r):
        if w in seen:
            continue
        comp = {w}
        stack = [w]
        seen.add(w)
        while stack:
            x = stack.pop()
            for _, y in space.incident(x):
                if y not in seen:
                    seen.add(y)
                    comp.add(y)
                    stack.append(y)
        comps.append(comp)
    return comps


# -- NM ----------------------------------------------------------------------


def nm_color_balls_tree(space: NetworkSpace, balls) -> Coloring:
    """Two-color NM coloring of balls on a tree space.

    Divide and conquer at a centroid node ``r``.  Every ball containing
    ``r`` contains the ball of radius ``cov_r`` around ``r``, so beyond
    ``r`` the balls are nested by coverage.  Each component is solved with
    an extra pendant edge at ``r`` (which reproduces that nested family)
    together with the top-coverage ball ``F1`` clipped to ``r``; component
    colorings are then aligned on ``F1``.
    """
    _require_tree(space)
    balls = sorted(balls, key=lambda b: id_key(b.id))
    colors = _nm_rec(space, balls)
    return Coloring(colors, {"algorithm": "nm-balls-tree"})


def _flip(colors: dict) -> dict:
    return {i: 1 - c for i, c in colors.items()}


def _nm_rec(sub: NetworkSpace, balls: list) -> dict:
    if not balls:
        return {}
    if sub.is_path:
        return _nm_path(sub, balls)
    r = find_centroid(sub, sub.internal_nodes)
    at_r = Point.at(r)
    covering = []
    for b in balls:
        cov = sub.coverage(b, r)
        if cov is not None:
            covering.append((cov, b))
    top = min(covering, key=lambda cb: (-cb[0], id_key(cb[1].id)), default=None)

    out: dict = {}
    for part in sub.split_at_node(r):
        inside = [b for b in balls if b.center != at_r and part.has_point(b.center)]
        if top is None:
            out.update(_nm_rec(part, inside))
            continue
        cov1, f1 = top
        if not any(b.id == f1.id for b in inside):
            inside.append(Ball(f1.id, at_r, cov1))
        grown = _with_pendant(part, r, cov1 + 1)
        colors = _nm_rec(grown, sorted(inside, key=lambda b: id_key(b.id)))
        if colors[f1.id] != 0:
            colors = _flip(colors)
        out.update(colors)
    if top is not None:
        out.setdefault(top[1].id, 0)
    for b in balls:
        # balls centred at r other than F1 only matter where F1 and the
        # runner-up already meet, so the other color is always safe
        out.setdefault(b.id, 1)
    return out


def _with_pendant(part: NetworkSpace, r, length) -> NetworkSpace:
    node = _fresh(part.nodes, f"{r}+")
    eid = _fresh(part.edges, f"{r}+")
    edges = list(part.edges.values()) + [(eid, r, node, length)]
    return NetworkSpace(edges, allow_degree2=True)


def _fresh(taken, base: str) -> str:
    name = base
    while name in taken:
        name += "+"
    return name


def _nm_path(sub: NetworkSpace, balls: list) -> dict:
    if not sub.edges:
        ivs = [Interval(b.id, 0, 0) for b in balls]
    else:
        line = PathLine(sub, path_of_path_space(sub))
        ivs = line.intervals({b.id: b.extent(sub) for b in balls})
    return nm_chain(ivs).colors


# -- CF ----------------------------------------------------------------------


def tree_core(space: NetworkSpace, balls) -> dict:
    """Internal node -> id of its assigned ball (only covered nodes appear)."""
    assigned = space.assign_balls(balls, nodes=space.internal_nodes)
    return {x: bid for x, (bid, _) in assigned.items()}


def cf_bound_tree(t: int) -> int:
    """Palette bound ``ceil(log2 t) + 3`` (``t = 0`` and ``t = 1`` give 3)."""
    return ceil_log(t, 2) + 3


def cf_color_balls_tree(space: NetworkSpace, balls) -> Coloring:
    """CF coloring of balls on a tree space.

    The core (balls assigned to internal nodes) gets one color per level of
    a centroid decomposition, smallest color first, which makes the core
    unique-minimum.  Other balls reach outside the core union only on the
    edge holding their center; those pieces are chain colored with three
    colors above every level color.
    """
    _require_tree(space)
    balls = sorted(balls, key=lambda b: id_key(b.id))
    by_id = {b.id: b for b in balls}
    assigned = tree_core(space, balls)
    core = set(assigned.values())

    colors: dict = {}
    levels = _color_levels(space, set(space.internal_nodes), assigned, core, by_id, 0, colors)

    regions = {b.id: b.extent(space) for b in balls}
    union = Region({}).union(*(regions[i] for i in core)) if core else Region({})
    gaps = uncovered_pieces(space, union)
    per_piece: dict = {}
    for b in balls:
        if b.id in core:
            continue
        hits = gap_hits(regions[b.id], gaps)
        assert_on_center_edge(space, b, hits)
        for key, iv in hits.items():
            per_piece.setdefault(key, []).append(Interval(b.id, *iv))
        if not hits:
            colors[b.id] = levels + 2
    blue, red, grey = levels, levels + 1, levels + 2
    for key in sorted(per_piece, key=lambda k: (id_key(k[0]), k[1])):
        colors.update(cf_chain(per_piece[key], palette=(blue, red, grey)).colors)
    meta = {
        "algorithm": "cf-balls-tree",
        "levels": levels,
        "core": sorted(core, key=id_key),
        "t": space.t,
    }
    return Coloring(colors, meta)


def _color_levels(space, active, assigned, uncolored, by_id, level, colors) -> int:
    """Color one ball per centroid; return the number of levels used."""
    if not uncolored:
        return level
    here = active & set(space.nodes)
    if not here:
        raise AssertionError("uncolored core balls left in a component without internal nodes")
    r = find_centroid(space, here)
    bid = assigned.get(r)
    if bid is not None and bid not in colors:
        colors[bid] = level
    uncolored = uncolored - {bid}
    deepest = level + 1
    rest = active - {r}
    for part in space.split_at_node(r):
        inside = {
            i for i in uncolored
            if part.has_point(by_id[i].center) and by_id[i].center != Point.at(r)
        }
        deepest = max(deepest, _color_levels(part, rest, assigned, inside, by_id, level + 1, colors))
    return deepest
