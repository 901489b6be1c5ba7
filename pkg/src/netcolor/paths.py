"""Helpers that flatten a simple path of a space onto a line.

Chain colorings run on intervals, so objects restricted to a path are
projected to ``[lo, hi]`` in the path's own arc-length coordinate.
"""

from __future__ import annotations

from fractions import Fraction

from .chain import Interval
from .netspace import NetworkSpace, Point, Region, id_key

__all__ = [
    "PathLine",
    "assert_on_center_edge",
    "deepest_descent",
    "gap_hits",
    "path_of_path_space",
    "path_through_edge",
    "uncovered_pieces",
]


class PathLine:
    """A node path with cumulative offsets, usable as a coordinate axis."""

    def __init__(self, space: NetworkSpace, nodes: list):
        self.space = space
        self.nodes = list(nodes)
        self.steps = []  # (edge id, start coordinate, forward?)
        pos = Fraction(0)
        for (eid, a) in zip(space.path_edges(self.nodes), self.nodes):
            e = space.edges[eid]
            self.steps.append((eid, pos, e.u == a))
            pos += e.length
        self.length = pos
        self._by_edge = {eid: (s, fwd) for eid, s, fwd in self.steps}

    def coord(self, eid, offset) -> Fraction:
        s, fwd = self._by_edge[eid]
        return s + offset if fwd else s + self.space.edges[eid].length - offset

    def project(self, region: Region) -> tuple | None:
        """Hull ``(lo, hi)`` of the region's trace on the path, or None."""
        lo = hi = None
        for eid, _, _ in self.steps:
            for a, b in region.intervals(eid):
                x, y = sorted((self.coord(eid, a), self.coord(eid, b)))
                lo = x if lo is None else min(lo, x)
                hi = y if hi is None else max(hi, y)
        if lo is None:
            return None
        return lo, hi

    def intervals(self, regions: dict) -> list[Interval]:
        out = []
        for oid in sorted(regions, key=id_key):
            hull = self.project(regions[oid])
            if hull is not None:
                out.append(Interval(oid, *hull))
        return out


def deepest_descent(space: NetworkSpace, start) -> list:
    """Nodes of a path from ``start`` to a farthest node (ties by node id)."""
    dist = space.node_distances(Point.at(start))
    far = min(space.nodes, key=lambda x: (-dist[x], id_key(x)))
    return space.shortest_path_nodes(start, far)


def path_through_edge(t_u: NetworkSpace, u, t_v: NetworkSpace, v) -> list:
    """Longest simple path containing edge ``uv``: deepest descents glued at the edge."""
    left = deepest_descent(t_u, u)
    right = deepest_descent(t_v, v)
    return list(reversed(left)) + right


def path_of_path_space(space: NetworkSpace) -> list:
    """Node sequence of a path space, starting from its smallest-id end."""
    if len(space.nodes) == 1:
        return [space.nodes[0]]
    ends = sorted((n for n in space.nodes if space.degree(n) == 1), key=id_key)
    seq = [ends[0]]
    prev = None
    while True:
        nxt = [y for _, y in space.incident(seq[-1]) if y != prev]
        if not nxt:
            return seq
        prev = seq[-1]
        seq.append(nxt[0])


def uncovered_pieces(space: NetworkSpace, covered: Region) -> dict:
    """Edge id -> list of ``(lo, hi, lo_closed, hi_closed)`` gaps of ``covered``."""
    out = {}
    for eid in space.edge_ids():
        L = space.edges[eid].length
        gaps = []
        cursor, closed = Fraction(0), True
        for a, b in covered.intervals(eid):
            if a > cursor:
                gaps.append((cursor, a, closed, False))
            cursor, closed = b, False
        if cursor < L:
            gaps.append((cursor, L, closed, True))
        out[eid] = gaps
    return out


def gap_hits(region: Region, gaps: dict) -> dict:
    """``(edge, gap index) -> (lo, hi)``: closed hull of the region inside each gap."""
    hits = {}
    for eid, pieces in gaps.items():
        for idx, (lo, hi, lo_closed, hi_closed) in enumerate(pieces):
            for a, b in region.intervals(eid):
                x, y = max(a, lo), min(b, hi)
                if x > y:
                    continue
                if x == y and ((x == lo and not lo_closed) or (y == hi and not hi_closed)):
                    continue
                prev = hits.get((eid, idx))
                hits[(eid, idx)] = (x, y) if prev is None else (min(prev[0], x), max(prev[1], y))
    return hits


def assert_on_center_edge(space: NetworkSpace, ball, hits: dict) -> None:
    edges = {eid for eid, _ in hits}
    if not edges:
        return
    c = ball.center
    allowed = {c.edge} if not c.is_node else {eid for eid, _ in space.incident(c.node)}
    if len(edges) > 1 or not edges <= allowed:
        raise AssertionError(
            f"ball {ball.id!r} leaves the core union outside the edge holding its center: {sorted(edges, key=id_key)}"
        )
