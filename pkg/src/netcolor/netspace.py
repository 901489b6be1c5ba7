"""Metric graphs, points on them, geodesic balls and subtree regions.

All lengths, offsets and radii are :class:`fractions.Fraction` so that
coverage comparisons and containment tests are exact.  A point is either a
node or a position on an edge, measured from the edge's first endpoint ``u``.
Regions are stored per edge as sorted, merged, closed offset intervals.
"""

from __future__ import annotations

import heapq
import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable, NamedTuple

import networkx as nx

__all__ = [
    "Ball",
    "Edge",
    "NetworkSpace",
    "Point",
    "Region",
    "SubtreeRegion",
    "as_rational",
    "id_key",
]


def as_rational(value) -> Fraction:
    """Convert ``value`` (int, Fraction, ``"p/q"`` string or float) exactly."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not lengths")
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(value)


def id_key(x):
    # ints sort before strings; keeps mixed id sets totally ordered
    return (isinstance(x, str), x)


class Edge(NamedTuple):
    id: Hashable
    u: Hashable
    v: Hashable
    length: Fraction


@dataclass(frozen=True)
class Point:
    """A node (``node`` set) or a position strictly inside an edge.

    Build edge points with :meth:`NetworkSpace.point`, which maps offsets 0
    and ``length`` to the endpoint nodes so that equality is syntactic.
    """

    node: Hashable | None = None
    edge: Hashable | None = None
    offset: Fraction | None = None

    @classmethod
    def at(cls, node) -> "Point":
        return cls(node=node)

    @property
    def is_node(self) -> bool:
        return self.edge is None

    def __repr__(self):
        if self.is_node:
            return f"Point(node={self.node!r})"
        return f"Point(edge={self.edge!r}, offset={self.offset})"


class NetworkSpace:
    """A connected metric graph with positive rational edge lengths.

    Parameters
    ----------
    edges : iterable of ``(id, u, v, length)``
    nodes : optional iterable of node ids; needed for edgeless spaces.
    coords : optional ``{node: (x, y)}``, only used for drawings.
    allow_degree2 : accept degree-2 nodes.  Subspaces produced by
        :meth:`split_at_node` and friends set this.
    """

    def __init__(
        self,
        edges: Iterable = (),
        nodes: Iterable | None = None,
        coords: dict | None = None,
        allow_degree2: bool = False,
    ):
        self.edges: dict = {}
        node_set = set(nodes or ())
        for eid, u, v, length in edges:
            if eid in self.edges:
                raise ValueError(f"duplicate edge id {eid!r}")
            if u == v:
                raise ValueError(f"edge {eid!r} is a self-loop")
            length = as_rational(length)
            if length <= 0:
                raise ValueError(f"edge {eid!r} has non-positive length {length}")
            self.edges[eid] = Edge(eid, u, v, length)
            node_set.update((u, v))
        if not node_set:
            raise ValueError("a network space needs at least one node")
        self.nodes = tuple(sorted(node_set, key=id_key))
        self.coords = dict(coords or {})
        self.allow_degree2 = allow_degree2

        adj = defaultdict(list)
        for e in self.edges.values():
            adj[e.u].append((e.id, e.v))
            adj[e.v].append((e.id, e.u))
        self._adj = {n: sorted(adj.get(n, ()), key=lambda t: id_key(t[0])) for n in self.nodes}
        self._dist_cache: dict = {}
        self._planar: bool | None = None

        if not self._connected():
            raise ValueError("network space is not connected")
        if not allow_degree2:
            bad = [n for n in self.nodes if self.degree(n) == 2]
            if bad:
                raise ValueError(f"nodes of degree 2 are not allowed: {bad[:5]}")

    # -- structure -------------------------------------------------------

    def __repr__(self):
        return f"NetworkSpace(nodes={len(self.nodes)}, edges={len(self.edges)})"

    def __eq__(self, other):
        if not isinstance(other, NetworkSpace):
            return NotImplemented
        return self.nodes == other.nodes and self.edges == other.edges

    def __hash__(self):
        return hash((self.nodes, tuple(sorted(self.edges.items(), key=lambda kv: id_key(kv[0])))))

    def _connected(self) -> bool:
        seen = {self.nodes[0]}
        stack = [self.nodes[0]]
        while stack:
            x = stack.pop()
            for _, y in self._adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == len(self.nodes)

    def edge_ids(self) -> list:
        return sorted(self.edges, key=id_key)

    def incident(self, node) -> list:
        """``[(edge id, neighbour), ...]`` sorted by edge id."""
        return self._adj[node]

    def degree(self, node) -> int:
        return len(self._adj[node])

    def other(self, eid, node):
        e = self.edges[eid]
        return e.v if node == e.u else e.u

    def offset_of(self, eid, node) -> Fraction:
        e = self.edges[eid]
        if node == e.u:
            return Fraction(0)
        if node == e.v:
            return e.length
        raise ValueError(f"node {node!r} is not an endpoint of edge {eid!r}")

    @property
    def leaves(self) -> list:
        return [n for n in self.nodes if self.degree(n) <= 1]

    @property
    def internal_nodes(self) -> list:
        return [n for n in self.nodes if self.degree(n) >= 3]

    @property
    def k(self) -> int:
        """Number of leaves."""
        return len(self.leaves)

    @property
    def t(self) -> int:
        """Number of internal nodes."""
        return len(self.internal_nodes)

    @property
    def is_tree(self) -> bool:
        return len(self.edges) == len(self.nodes) - 1

    @property
    def is_path(self) -> bool:
        return self.is_tree and all(self.degree(n) <= 2 for n in self.nodes)

    @property
    def is_planar(self) -> bool:
        if self._planar is None:
            g = nx.Graph()
            g.add_nodes_from(self.nodes)
            g.add_edges_from((e.u, e.v) for e in self.edges.values())
            self._planar = nx.check_planarity(g)[0]
        return self._planar

    def to_networkx(self) -> nx.MultiGraph:
        g = nx.MultiGraph()
        g.add_nodes_from(self.nodes)
        for e in self.edges.values():
            g.add_edge(e.u, e.v, key=e.id, length=e.length)
        return g

    # -- points and distances -------------------------------------------

    def point(self, eid, offset) -> Point:
        """Canonical point at ``offset`` along edge ``eid`` (from its ``u``)."""
        if eid not in self.edges:
            raise ValueError(f"unknown edge {eid!r}")
        e = self.edges[eid]
        offset = as_rational(offset)
        if offset < 0 or offset > e.length:
            raise ValueError(f"offset {offset} outside edge {eid!r} of length {e.length}")
        if offset == 0:
            return Point(node=e.u)
        if offset == e.length:
            return Point(node=e.v)
        return Point(edge=eid, offset=offset)

    def check_point(self, p: Point) -> None:
        if p.is_node:
            if p.node not in self._adj:
                raise ValueError(f"unknown node {p.node!r}")
            return
        if p.edge not in self.edges:
            raise ValueError(f"unknown edge {p.edge!r}")
        if not 0 < p.offset < self.edges[p.edge].length:
            raise ValueError(f"point {p!r} is not in canonical form")

    def has_point(self, p: Point) -> bool:
        return p.node in self._adj if p.is_node else p.edge in self.edges

    def node_distances(self, p: Point) -> dict:
        """Geodesic distance from ``p`` to every node (Dijkstra)."""
        cached = self._dist_cache.get(p)
        if cached is not None:
            return cached
        self.check_point(p)
        dist: dict = {}
        heap: list = []
        tie = itertools.count()
        if p.is_node:
            heap.append((Fraction(0), next(tie), p.node))
        else:
            e = self.edges[p.edge]
            heap.append((p.offset, next(tie), e.u))
            heap.append((e.length - p.offset, next(tie), e.v))
            heapq.heapify(heap)
        while heap:
            d, _, x = heapq.heappop(heap)
            if x in dist:
                continue
            dist[x] = d
            for eid, y in self._adj[x]:
                if y not in dist:
                    heapq.heappush(heap, (d + self.edges[eid].length, next(tie), y))
        self._dist_cache[p] = dist
        return dist

    def distance(self, p: Point, q: Point) -> Fraction:
        """Length of a shortest path between two points."""
        self.check_point(q)
        dist = self.node_distances(p)
        if q.is_node:
            return dist[q.node]
        e = self.edges[q.edge]
        best = min(dist[e.u] + q.offset, dist[e.v] + e.length - q.offset)
        if not p.is_node and p.edge == q.edge:
            best = min(best, abs(p.offset - q.offset))
        return best

    def distance_at(self, p: Point, eid, offset) -> Fraction:
        """Distance from ``p`` to the (possibly non-canonical) spot ``(eid, offset)``."""
        return self.distance(p, self.point(eid, offset))

    def shortest_path_nodes(self, source, target) -> list:
        """Nodes of one shortest node-to-node path; ties broken by node id."""
        dist = self.node_distances(Point.at(target))
        path = [source]
        x = source
        while x != target:
            x = min(
                (y for eid, y in self._adj[x] if dist[y] + self.edges[eid].length == dist[x]),
                key=id_key,
            )
            path.append(x)
        return path

    def path_edges(self, nodes: list) -> list:
        """Edge ids along a node path (shortest parallel edge if several)."""
        out = []
        for a, b in zip(nodes, nodes[1:]):
            cands = [eid for eid, y in self._adj[a] if y == b]
            out.append(min(cands, key=lambda eid: (self.edges[eid].length, id_key(eid))))
        return out

    # -- balls -----------------------------------------------------------

    def ball_extent(self, ball: "Ball") -> "Region":
        """All points within ``ball.radius`` of its center, as edge pieces."""
        r = ball.radius
        c = ball.center
        dist = self.node_distances(c)
        raw = []
        for e in self.edges.values():
            du, dv = dist[e.u], dist[e.v]
            if du <= r:
                raw.append((e.id, Fraction(0), min(e.length, r - du)))
            if dv <= r:
                raw.append((e.id, max(Fraction(0), e.length - (r - dv)), e.length))
            if not c.is_node and c.edge == e.id:
                raw.append((e.id, max(Fraction(0), c.offset - r), min(e.length, c.offset + r)))
        return Region.build(self, raw)

    def coverage(self, ball: "Ball", node) -> Fraction | None:
        """``radius - d(center, node)`` or None when the node lies outside."""
        cov = ball.radius - self.node_distances(ball.center)[node]
        return cov if cov >= 0 else None

    def assign_balls(self, balls: Iterable["Ball"], nodes: Iterable | None = None) -> dict:
        """Map each covered node to ``(ball id, coverage)`` of its assigned ball.

        The assigned ball maximises coverage; ties go to the smallest id.
        Uncovered nodes are absent from the result.
        """
        balls = sorted(balls, key=lambda b: id_key(b.id))
        ids = [b.id for b in balls]
        if len(set(ids)) != len(ids):
            raise ValueError("ball ids must be distinct")
        out = {}
        for x in self.nodes if nodes is None else nodes:
            best = None
            for b in balls:
                cov = self.coverage(b, x)
                if cov is not None and (best is None or cov > best[1]):
                    best = (b.id, cov)
            if best is not None:
                out[x] = best
        return out

    # -- surgery ---------------------------------------------------------

    def subspace(self, edge_ids: Iterable, nodes: Iterable = ()) -> "NetworkSpace":
        """The (connected) subspace spanned by ``edge_ids`` and extra ``nodes``."""
        edge_ids = list(edge_ids)
        return NetworkSpace(
            [self.edges[eid] for eid in edge_ids],
            nodes=nodes,
            coords={n: xy for n, xy in self.coords.items()},
            allow_degree2=True,
        )._trim_coords()

    def _trim_coords(self):
        self.coords = {n: xy for n, xy in self.coords.items() if n in self._adj}
        return self

    def split_at_node(self, r) -> list["NetworkSpace"]:
        """Closures of the components of the space minus node ``r``.

        ``r`` must be internal (degree >= 3).  Each returned subspace
        contains ``r`` as an ordinary node; degree-2 nodes are tolerated.
        """
        if r not in self._adj:
            raise ValueError(f"unknown node {r!r}")
        if self.degree(r) < 3:
            raise ValueError(f"node {r!r} is not an internal node")
        comp_of: dict = {}
        comps: list = []
        for _, w in self._adj[r]:
            if w in comp_of:
                continue
            idx = len(comps)
            seen = {w}
            stack = [w]
            while stack:
                x = stack.pop()
                for _, y in self._adj[x]:
                    if y != r and y not in seen:
                        seen.add(y)
                        stack.append(y)
            for x in seen:
                comp_of[x] = idx
            comps.append([])
        for e in self.edges.values():
            x = e.v if e.u == r else e.u
            comps[comp_of[x]].append(e.id)
        return [self.subspace(sorted(c, key=id_key)) for c in comps]

    def split_at_edge(self, eid) -> tuple["NetworkSpace", "NetworkSpace"]:
        """``(T_u, T_v)``: closed components of a tree minus edge ``eid``."""
        if not self.is_tree:
            raise ValueError("split_at_edge needs a tree space")
        e = self.edges[eid]
        halves = []
        for start, avoid in ((e.u, e.v), (e.v, e.u)):
            seen = {start}
            stack = [start]
            eids = []
            while stack:
                x = stack.pop()
                for f, y in self._adj[x]:
                    if f == eid or y in seen:
                        continue
                    seen.add(y)
                    eids.append(f)
                    stack.append(y)
            halves.append(self.subspace(sorted(eids, key=id_key), nodes=[start]))
        return halves[0], halves[1]

    def attachment_nodes(self, sub: "NetworkSpace") -> list:
        """Nodes of ``sub`` incident to edges outside ``sub``."""
        return [
            n for n in sub.nodes
            if any(eid not in sub.edges for eid, _ in self._adj[n])
        ]

    def clip_ball(self, sub: "NetworkSpace", ball: "Ball") -> "Ball":
        """The ball as seen inside ``sub`` (center moved to the cut node)."""
        if sub.has_point(ball.center):
            return ball
        best = None
        for u in self.attachment_nodes(sub):
            d = self.node_distances(ball.center)[u]
            if best is None or d < best[0]:
                best = (d, u)
        if best is None or best[0] > ball.radius:
            raise ValueError(f"ball {ball.id!r} does not meet the subspace")
        d, u = best
        return Ball(ball.id, Point.at(u), ball.radius - d)


@dataclass(frozen=True)
class Ball:
    id: Hashable
    center: Point
    radius: Fraction

    def __post_init__(self):
        object.__setattr__(self, "radius", as_rational(self.radius))
        if self.radius < 0:
            raise ValueError("radius must be non-negative")

    def extent(self, space: NetworkSpace) -> "Region":
        return space.ball_extent(self)


@dataclass(frozen=True)
class SubtreeRegion:
    """A connected union of closed edge fragments ``(edge, a, b)``."""

    id: Hashable
    fragments: tuple = field(default=())

    def __post_init__(self):
        frags = tuple(
            sorted(
                ((eid, as_rational(a), as_rational(b)) for eid, a, b in self.fragments),
                key=lambda f: (id_key(f[0]), f[1], f[2]),
            )
        )
        for eid, a, b in frags:
            if a > b:
                raise ValueError(f"fragment on {eid!r} has a > b")
        object.__setattr__(self, "fragments", frags)

    def extent(self, space: NetworkSpace) -> "Region":
        return Region.build(space, self.fragments)


class Region:
    """A closed subset of a space: merged offset intervals per edge.

    Regions built through :meth:`build` are normalised: whenever a node
    belongs to the region, every incident edge carries a piece covering the
    node's offset.  Per-edge comparisons are then exact set comparisons.
    """

    __slots__ = ("pieces",)

    def __init__(self, pieces: dict):
        self.pieces = pieces

    @classmethod
    def build(cls, space: NetworkSpace, raw: Iterable) -> "Region":
        per_edge = defaultdict(list)
        for eid, a, b in raw:
            if eid not in space.edges:
                raise ValueError(f"unknown edge {eid!r}")
            a, b = as_rational(a), as_rational(b)
            if a > b:
                continue
            if a < 0 or b > space.edges[eid].length:
                raise ValueError(f"fragment [{a}, {b}] outside edge {eid!r}")
            per_edge[eid].append((a, b))
        nodes = set()
        for eid, ivs in per_edge.items():
            e = space.edges[eid]
            for a, b in ivs:
                if a == 0:
                    nodes.add(e.u)
                if b == e.length:
                    nodes.add(e.v)
        for n in nodes:
            for eid, _ in space.incident(n):
                off = space.offset_of(eid, n)
                per_edge[eid].append((off, off))
        return cls({eid: _merge(ivs) for eid, ivs in per_edge.items()})

    def __eq__(self, other):
        return isinstance(other, Region) and self.pieces == other.pieces

    def __repr__(self):
        body = ", ".join(
            f"{eid!r}: " + " ".join(f"[{a},{b}]" for a, b in ivs)
            for eid, ivs in sorted(self.pieces.items(), key=lambda kv: id_key(kv[0]))
        )
        return f"Region({body})"

    @property
    def is_empty(self) -> bool:
        return not self.pieces

    def intervals(self, eid) -> tuple:
        return self.pieces.get(eid, ())

    def contains_offset(self, eid, x) -> bool:
        return any(a <= x <= b for a, b in self.pieces.get(eid, ()))

    def contains(self, space: NetworkSpace, p: Point) -> bool:
        if p.is_node:
            inc = space.incident(p.node)
            if not inc:
                return False
            eid = inc[0][0]
            return self.contains_offset(eid, space.offset_of(eid, p.node))
        return self.contains_offset(p.edge, p.offset)

    def nodes(self, space: NetworkSpace) -> list:
        return [n for n in space.nodes if space.incident(n) and self.contains(space, Point.at(n))]

    def issubset(self, other: "Region") -> bool:
        for eid, ivs in self.pieces.items():
            cover = other.pieces.get(eid, ())
            if any(not _covered(a, b, cover) for a, b in ivs):
                return False
        return True

    def union(self, *others: "Region") -> "Region":
        per_edge = defaultdict(list)
        for reg in (self, *others):
            for eid, ivs in reg.pieces.items():
                per_edge[eid].extend(ivs)
        return Region({eid: _merge(ivs) for eid, ivs in per_edge.items()})

    def restrict(self, space: NetworkSpace) -> "Region":
        """Intersection with a subspace (rebuilt so node points stay consistent)."""
        raw = [(eid, a, b) for eid, ivs in self.pieces.items() if eid in space.edges for a, b in ivs]
        return Region.build(space, raw)

    def total_length(self) -> Fraction:
        return sum((b - a for ivs in self.pieces.values() for a, b in ivs), Fraction(0))

    def length_on(self, eid) -> Fraction:
        return sum((b - a for a, b in self.pieces.get(eid, ())), Fraction(0))

    # -- topology (meaningful on tree spaces) -----------------------------

    def _components(self, space: NetworkSpace) -> list:
        parent: dict = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            parent.setdefault(a, a)
            parent.setdefault(b, b)
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        for eid, ivs in self.pieces.items():
            e = space.edges[eid]
            for a, b in ivs:
                piece = ("piece", eid, a)
                parent.setdefault(piece, piece)
                if a == 0:
                    union(piece, ("node", e.u))
                if b == e.length:
                    union(piece, ("node", e.v))
        roots = defaultdict(list)
        for x in parent:
            roots[find(x)].append(x)
        return list(roots.values())

    def is_connected(self, space: NetworkSpace) -> bool:
        return len(self._components(space)) <= 1

    def leaf_count(self, space: NetworkSpace) -> int:
        """Number of degree-1 points of the region (a single point counts 1)."""
        if self.is_empty:
            return 0
        leaves = 0
        node_deg = defaultdict(int)
        positive = False
        for eid, ivs in self.pieces.items():
            e = space.edges[eid]
            for a, b in ivs:
                if a == b:
                    continue
                positive = True
                if a == 0:
                    node_deg[e.u] += 1
                else:
                    leaves += 1
                if b == e.length:
                    node_deg[e.v] += 1
                else:
                    leaves += 1
        if not positive:
            return 1
        return leaves + sum(1 for d in node_deg.values() if d == 1)


def _merge(ivs: list) -> tuple:
    out: list = []
    for a, b in sorted(ivs):
        if out and a <= out[-1][1]:
            if b > out[-1][1]:
                out[-1] = (out[-1][0], b)
        else:
            out.append((a, b))
    return tuple(out)


def _covered(a, b, cover) -> bool:
    """Is the closed interval [a, b] inside the union of merged ``cover``?"""
    for c, d in cover:
        if c <= a <= d:
            return b <= d
    return False
