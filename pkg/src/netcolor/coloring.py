"""The coloring result type shared by every colorer."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .netspace import id_key


@dataclass
class Coloring:
    """Object id -> integer color, plus free-form metadata.

    ``meta`` records algorithm-specific facts such as the number of
    independent-set rounds or whether a fallback palette was used.
    """

    colors: dict = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    @property
    def palette(self) -> list:
        return sorted(set(self.colors.values()))

    @property
    def palette_size(self) -> int:
        return len(set(self.colors.values()))

    def __getitem__(self, obj_id):
        return self.colors[obj_id]

    def __len__(self):
        return len(self.colors)

    def restrict(self, ids) -> "Coloring":
        ids = set(ids)
        return Coloring({i: c for i, c in self.colors.items() if i in ids}, dict(self.meta))

    def relabeled(self) -> "Coloring":
        """Same partition with colors renumbered 0.. in order of first use by id."""
        mapping: dict = {}
        for i in sorted(self.colors, key=id_key):
            mapping.setdefault(self.colors[i], len(mapping))
        return Coloring({i: mapping[c] for i, c in self.colors.items()}, dict(self.meta))


def ceil_log(x, base) -> int:
    """Smallest ``m >= 0`` with ``base**m >= x``, computed exactly (``base > 1``)."""
    base = Fraction(base)
    if base <= 1:
        raise ValueError("base must exceed 1")
    m, power = 0, Fraction(1)
    while power < x:
        power *= base
        m += 1
    return m
