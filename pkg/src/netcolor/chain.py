"""Chain methods for closed intervals on a line.

``nm_chain`` gives a non-monochromatic 2-coloring, ``cf_chain`` a
conflict-free 3-coloring (two alternating chain colors plus a dummy color
for intervals already covered by the chain).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable

from .coloring import Coloring
from .netspace import NetworkSpace, SubtreeRegion, as_rational, id_key

__all__ = ["Interval", "cf_chain", "intervals_as_objects", "nm_chain", "sweep_order"]


@dataclass(frozen=True)
class Interval:
    id: Hashable
    left: Fraction
    right: Fraction

    def __post_init__(self):
        object.__setattr__(self, "left", as_rational(self.left))
        object.__setattr__(self, "right", as_rational(self.right))
        if self.left > self.right:
            raise ValueError(f"interval {self.id!r}: left > right")

    def contains(self, x) -> bool:
        return self.left <= x <= self.right


def sweep_order(intervals: Iterable[Interval]) -> list[Interval]:
    """Left endpoint ascending, longest first on ties, then by id."""
    return sorted(intervals, key=lambda iv: (iv.left, iv.left - iv.right, id_key(iv.id)))


def nm_chain(intervals: Iterable[Interval], palette=(0, 1)) -> Coloring:
    """Non-monochromatic 2-coloring by the active-color sweep.

    The active color flips after an interval whose right endpoint is not
    inside an earlier colored interval.  Earlier intervals start no later,
    so that test reduces to comparing with the largest right end seen.
    """
    a, b = palette
    colors = {}
    active = a
    reach = None
    for iv in sweep_order(intervals):
        colors[iv.id] = active
        if reach is None or iv.right > reach:
            active = b if active == a else a
            reach = iv.right
    return Coloring(colors, {"method": "nm_chain"})


def cf_chain(intervals: Iterable[Interval], palette=(0, 1, 2)) -> Coloring:
    """Conflict-free coloring with two alternating colors and a dummy."""
    blue, red, grey = palette
    order = sweep_order(intervals)
    colors: dict = {}
    chain_union: list = []  # merged closed pieces covered by blue/red intervals
    while len(colors) < len(order):
        start = next(iv for iv in order if iv.id not in colors)
        last, cur = start, blue
        colors[start.id] = cur
        _absorb(chain_union, start)
        while True:
            best = None
            for iv in order:
                if iv.id in colors or not last.left <= iv.left <= last.right:
                    continue
                if iv.right <= last.right:
                    continue
                if best is None or iv.right > best.right:
                    best = iv
            if best is None:
                break
            cur = red if cur == blue else blue
            colors[best.id] = cur
            _absorb(chain_union, best)
            last = best
        for iv in order:
            if iv.id not in colors and _inside(iv, chain_union):
                colors[iv.id] = grey
    return Coloring(colors, {"method": "cf_chain"})


def _absorb(pieces: list, iv: Interval) -> None:
    pieces.append((iv.left, iv.right))
    pieces.sort()
    merged = []
    for a, b in pieces:
        if merged and a <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(b, merged[-1][1]))
        else:
            merged.append((a, b))
    pieces[:] = merged


def _inside(iv: Interval, pieces: list) -> bool:
    return any(a <= iv.left and iv.right <= b for a, b in pieces)


def intervals_as_objects(intervals: Iterable[Interval]) -> tuple[NetworkSpace, list[SubtreeRegion]]:
    """Embed intervals on a single-edge space so the validator can check them."""
    intervals = list(intervals)
    lo = min((iv.left for iv in intervals), default=Fraction(0)) - 1
    hi = max((iv.right for iv in intervals), default=Fraction(0)) + 1
    space = NetworkSpace([("line", "lo", "hi", hi - lo)])
    objs = [SubtreeRegion(iv.id, (("line", iv.left - lo, iv.right - lo),)) for iv in intervals]
    return space, objs
