"""Algorithm registry, palette bounds, and scikit-learn style colorers.

A colorer is fitted on an instance (``Instance`` or ``(space, objects)``)
and exposes ``labels_`` aligned with the object order, like a clusterer.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin

from .chain import Interval, cf_chain, nm_chain
from .coloring import Coloring
from .netspace import NetworkSpace
from .paths import PathLine, path_of_path_space
from .planar_balls import cf_bound_planar, cf_color_balls_planar, nm_color_balls_planar
from .tree_balls import cf_bound_tree, cf_color_balls_tree, nm_color_balls_tree
from .tree_trees import cf_color_trees, nm_bound_trees, nm_color_trees
from .utils import check_instance

__all__ = [
    "ALGORITHMS",
    "ChainColorer",
    "PlanarBallsColorer",
    "TreeBallsColorer",
    "TreeTreesColorer",
    "bound_for",
    "mode_of",
    "run_algorithm",
]

# name -> (space kind, object kind, coloring mode)
ALGORITHMS = {
    "nm-trees": ("tree", "subtree", "nm"),
    "cf-trees": ("tree", "subtree", "cf"),
    "nm-balls-tree": ("tree", "ball", "nm"),
    "cf-balls-tree": ("tree", "ball", "cf"),
    "nm-balls-planar": ("planar", "ball", "nm"),
    "cf-balls-planar": ("planar", "ball", "cf"),
    "nm-chain": ("path", None, "nm"),
    "cf-chain": ("path", None, "cf"),
}


def mode_of(algorithm: str) -> str:
    return ALGORITHMS[algorithm][2]


def _chain(space: NetworkSpace, objects, cf: bool) -> Coloring:
    if not space.edges:
        ivs = [Interval(o.id, 0, 0) for o in objects]
    else:
        line = PathLine(space, path_of_path_space(space))
        ivs = line.intervals({o.id: o.extent(space) for o in objects})
    out = cf_chain(ivs) if cf else nm_chain(ivs)
    out.meta = {"algorithm": "cf-chain" if cf else "nm-chain"}
    return out


def run_algorithm(algorithm: str, space: NetworkSpace, objects, threshold_exact_mis: int = 40,
                  threshold_exact_4color: int = 64) -> Coloring:
    """Run a registered colorer after checking the input kinds."""
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}; choose from {sorted(ALGORITHMS)}")
    space_kind, object_kind, _ = ALGORITHMS[algorithm]
    space, objects = check_instance((space, objects), space_kind, object_kind)
    if algorithm == "nm-trees":
        return nm_color_trees(space, objects)
    if algorithm == "cf-trees":
        return cf_color_trees(space, objects)
    if algorithm == "nm-balls-tree":
        return nm_color_balls_tree(space, objects)
    if algorithm == "cf-balls-tree":
        return cf_color_balls_tree(space, objects)
    if algorithm == "nm-balls-planar":
        return nm_color_balls_planar(space, objects, exact_threshold=threshold_exact_4color)
    if algorithm == "cf-balls-planar":
        return cf_color_balls_planar(space, objects, exact_threshold=threshold_exact_mis)
    return _chain(space, objects, cf=algorithm == "cf-chain")


def bound_for(algorithm: str, space: NetworkSpace, objects, coloring: Coloring) -> dict:
    """``{formula, value, respected}`` for the palette guarantee of ``algorithm``."""
    n = len(objects)
    meta = coloring.meta
    if algorithm == "nm-trees":
        k, ell = meta.get("k", space.k), meta.get("ell", 0)
        formula, value = "min(ell+1, ceil(2*sqrt(6k)), n)", nm_bound_trees(k, ell, n)
    elif algorithm == "cf-trees":
        b = meta.get("bound") or {"value": 0, "rounds": 0, "ell_prime": 0}
        formula, value = "singletons + (ell'+1)*ceil(log_{(ell'+1)/ell'} 6k) + 4", b["value"]
    elif algorithm == "nm-balls-tree":
        formula, value = "2", 2
    elif algorithm == "cf-balls-tree":
        formula, value = "ceil(log2 t) + 3", cf_bound_tree(space.t)
    elif algorithm == "nm-balls-planar":
        if meta.get("core_method") == "kempe5":
            formula, value = "5 (guaranteed five-coloring fallback)", 5
        else:
            formula, value = "4", 4
    elif algorithm == "cf-balls-planar":
        if meta.get("exact_mis", True):
            formula, value = "ceil(log_{4/3} t) + 3", cf_bound_planar(space.t)
        else:
            formula, value = "ceil(log_{6/5} t) + 3 (greedy independent sets)", cf_bound_planar(space.t, False)
    elif algorithm == "nm-chain":
        formula, value = "2", 2
    elif algorithm == "cf-chain":
        formula, value = "3", 3
    else:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    # no coloring needs more colors than objects
    value = min(value, n)
    return {"formula": formula, "value": value, "respected": coloring.palette_size <= value}


class _Colorer(ClusterMixin, BaseEstimator):
    """Shared fit logic; subclasses pick the registered algorithm."""

    def _algorithm(self) -> str:
        raise NotImplementedError

    def _thresholds(self) -> dict:
        return {}

    def fit(self, X, y=None):
        algorithm = self._algorithm()
        space_kind, object_kind, _ = ALGORITHMS[algorithm]
        space, objects = check_instance(X, space_kind, object_kind)
        coloring = run_algorithm(algorithm, space, objects, **self._thresholds())
        self.coloring_ = coloring
        self.object_ids_ = [o.id for o in objects]
        self.labels_ = np.array([coloring.colors[i] for i in self.object_ids_], dtype=int)
        self.n_colors_ = coloring.palette_size
        self.bound_ = bound_for(algorithm, space, objects, coloring)
        return self


def _check_mode(mode):
    if mode not in ("nm", "cf"):
        raise ValueError(f"mode must be 'nm' or 'cf', got {mode!r}")


class TreeTreesColorer(_Colorer):
    """Subtrees of a tree space.  ``mode`` is ``"nm"`` or ``"cf"``."""

    def __init__(self, mode: str = "nm"):
        self.mode = mode

    def _algorithm(self):
        _check_mode(self.mode)
        return f"{self.mode}-trees"


class TreeBallsColorer(_Colorer):
    """Geodesic balls on a tree space."""

    def __init__(self, mode: str = "nm"):
        self.mode = mode

    def _algorithm(self):
        _check_mode(self.mode)
        return f"{self.mode}-balls-tree"


class PlanarBallsColorer(_Colorer):
    """Geodesic balls on a planar space.

    ``threshold_exact_4color`` caps the assignment graph size for exact
    four-coloring; ``threshold_exact_mis`` caps the exact independent sets.
    """

    def __init__(self, mode: str = "nm", threshold_exact_4color: int = 64, threshold_exact_mis: int = 40):
        self.mode = mode
        self.threshold_exact_4color = threshold_exact_4color
        self.threshold_exact_mis = threshold_exact_mis

    def _algorithm(self):
        _check_mode(self.mode)
        return f"{self.mode}-balls-planar"

    def _thresholds(self):
        return {
            "threshold_exact_mis": self.threshold_exact_mis,
            "threshold_exact_4color": self.threshold_exact_4color,
        }


class ChainColorer(_Colorer):
    """Objects on a path space, colored by the left-to-right chain."""

    def __init__(self, mode: str = "nm"):
        self.mode = mode

    def _algorithm(self):
        _check_mode(self.mode)
        return f"{self.mode}-chain"
