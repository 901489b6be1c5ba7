"""Exact oracles for NM / CF / unique-extremum colorings.

Every point of a network space falls in a finite number of classes with
respect to a family of closed objects.  :func:`decompose` enumerates them
by sampling every event offset (object endpoints and edge ends) and the
midpoint of every gap between consecutive events.  All checks below are
stated over those cells, so they are exact rather than sampled.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable

from .coloring import Coloring
from .netspace import NetworkSpace, Point, Region, id_key

__all__ = [
    "RegionDecomposition",
    "Verdict",
    "check",
    "check_cf",
    "check_nm",
    "check_unique_extremum",
    "decompose",
    "extents",
    "min_colors_bruteforce",
]


@dataclass
class RegionDecomposition:
    """Cells ``(representative point, frozenset of member ids)``."""

    cells: list = field(default_factory=list)

    def hyperedges(self, min_size: int = 1) -> dict:
        """Distinct member sets of size >= ``min_size`` -> first witness point."""
        out: dict = {}
        for p, members in self.cells:
            if len(members) >= min_size and members not in out:
                out[members] = p
        return out

    def members_at(self, p: Point):
        for q, members in self.cells:
            if q == p:
                return members
        return None


@dataclass
class Verdict:
    ok: bool
    witness: Point | None = None
    members: frozenset = frozenset()
    reason: str = ""

    def __bool__(self):
        return self.ok


def extents(space: NetworkSpace, objects: Iterable) -> dict:
    """Object id -> :class:`Region`."""
    out = {}
    for obj in objects:
        if obj.id in out:
            raise ValueError(f"duplicate object id {obj.id!r}")
        out[obj.id] = obj.extent(space)
    return out


def decompose(space: NetworkSpace, objects: Iterable, regions: dict | None = None) -> RegionDecomposition:
    """Sound and complete cell decomposition of ``space`` under ``objects``."""
    if regions is None:
        regions = extents(space, objects)
    cells = []
    seen_nodes = set()
    if not space.edges:
        # isolated node: nothing can be represented on it
        return RegionDecomposition([(Point.at(space.nodes[0]), frozenset())])
    for eid in space.edge_ids():
        e = space.edges[eid]
        events = {Fraction(0), e.length}
        on_edge = []
        for oid, reg in regions.items():
            ivs = reg.intervals(eid)
            if ivs:
                on_edge.append((oid, ivs))
                for a, b in ivs:
                    events.add(a)
                    events.add(b)
        events = sorted(events)
        samples = []
        for i, x in enumerate(events):
            samples.append(x)
            if i + 1 < len(events):
                samples.append((x + events[i + 1]) / 2)
        for x in samples:
            p = space.point(eid, x)
            if p.is_node:
                if p.node in seen_nodes:
                    continue
                seen_nodes.add(p.node)
            members = frozenset(oid for oid, ivs in on_edge if any(a <= x <= b for a, b in ivs))
            cells.append((p, members))
    return RegionDecomposition(cells)


def _colors_of(coloring) -> dict:
    return coloring.colors if isinstance(coloring, Coloring) else dict(coloring)


def check_nm(space, objects, coloring, decomposition=None) -> Verdict:
    """Every point in >= 2 objects sees >= 2 colors."""
    colors = _colors_of(coloring)
    dec = decomposition or decompose(space, objects)
    for members, p in dec.hyperedges(2).items():
        if len({colors[m] for m in members}) < 2:
            return Verdict(False, p, members, "monochromatic")
    return Verdict(True)


def check_cf(space, objects, coloring, decomposition=None) -> Verdict:
    """Every covered point sees some color exactly once."""
    colors = _colors_of(coloring)
    dec = decomposition or decompose(space, objects)
    for members, p in dec.hyperedges(1).items():
        counts = Counter(colors[m] for m in members)
        if 1 not in counts.values():
            return Verdict(False, p, members, "no uniquely colored object")
    return Verdict(True)


def check_unique_extremum(space, objects, coloring, mode: str = "max", decomposition=None) -> Verdict:
    """Every covered point sees its minimum (or maximum) color exactly once."""
    if mode not in ("min", "max"):
        raise ValueError("mode must be 'min' or 'max'")
    colors = _colors_of(coloring)
    pick = min if mode == "min" else max
    dec = decomposition or decompose(space, objects)
    for members, p in dec.hyperedges(1).items():
        cs = [colors[m] for m in members]
        if cs.count(pick(cs)) != 1:
            return Verdict(False, p, members, f"{mode} color not unique")
    return Verdict(True)


def check(space, objects, coloring, mode: str, decomposition=None) -> Verdict:
    """Dispatch on ``mode`` in ``nm | cf | unimin | unimax``."""
    if mode == "nm":
        return check_nm(space, objects, coloring, decomposition)
    if mode == "cf":
        return check_cf(space, objects, coloring, decomposition)
    if mode == "unimin":
        return check_unique_extremum(space, objects, coloring, "min", decomposition)
    if mode == "unimax":
        return check_unique_extremum(space, objects, coloring, "max", decomposition)
    raise ValueError(f"unknown mode {mode!r}")


def min_colors_bruteforce(space, objects, mode: str = "nm", limit: int = 12) -> int:
    """Smallest palette admitting a valid ``mode`` coloring (exhaustive).

    Objects are colored in id order with colors introduced in order (the
    first object always gets color 0), and a hyperedge is checked as soon
    as its last member receives a color.
    """
    objects = list(objects)
    if len(objects) > limit:
        raise ValueError(f"{len(objects)} objects exceed the brute-force limit {limit}")
    if not objects:
        return 0
    if mode not in ("nm", "cf"):
        raise ValueError("mode must be 'nm' or 'cf'")
    order = sorted((o.id for o in objects), key=id_key)
    pos = {oid: i for i, oid in enumerate(order)}
    dec = decompose(space, objects)
    min_size = 2 if mode == "nm" else 1
    due: list = [[] for _ in order]
    for members in dec.hyperedges(min_size):
        idx = sorted(pos[m] for m in members)
        due[idx[-1]].append(idx)

    def ok(edge, assign):
        cs = [assign[i] for i in edge]
        if mode == "nm":
            return len(set(cs)) > 1
        counts = Counter(cs)
        return 1 in counts.values()

    n = len(order)
    for c in range(1, n + 1):
        assign = [0] * n

        def search(i, used):
            if i == n:
                return True
            for color in range(min(used + 1, c)):
                assign[i] = color
                if all(ok(edge, assign) for edge in due[i]):
                    if search(i + 1, max(used, color + 1)):
                        return True
            return False

        if search(0, 0):
            return c
    return n
