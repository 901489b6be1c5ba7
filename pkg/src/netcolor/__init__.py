"""Non-monochromatic and conflict-free colorings of objects in network spaces."""

from .chain import Interval, cf_chain, nm_chain
from .coloring import Coloring
from .estimators import (
    ALGORITHMS,
    ChainColorer,
    PlanarBallsColorer,
    TreeBallsColorer,
    TreeTreesColorer,
    bound_for,
    run_algorithm,
)
from .generators import Instance, gen_binary_tree_paths, gen_comb, gen_k4, gen_random, gen_star_pairs
from .netspace import Ball, NetworkSpace, Point, Region, SubtreeRegion
from .planar_balls import cf_color_balls_planar, nm_color_balls_planar
from .tree_balls import cf_color_balls_tree, nm_color_balls_tree
from .tree_trees import cf_color_trees, nm_color_trees
from .validator import check, check_cf, check_nm, check_unique_extremum, min_colors_bruteforce

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS",
    "Ball",
    "ChainColorer",
    "Coloring",
    "Instance",
    "Interval",
    "NetworkSpace",
    "PlanarBallsColorer",
    "Point",
    "Region",
    "SubtreeRegion",
    "TreeBallsColorer",
    "TreeTreesColorer",
    "bound_for",
    "cf_chain",
    "cf_color_balls_planar",
    "cf_color_balls_tree",
    "cf_color_trees",
    "check",
    "check_cf",
    "check_nm",
    "check_unique_extremum",
    "gen_binary_tree_paths",
    "gen_comb",
    "gen_k4",
    "gen_random",
    "gen_star_pairs",
    "min_colors_bruteforce",
    "nm_chain",
    "nm_color_balls_planar",
    "nm_color_balls_tree",
    "nm_color_trees",
    "run_algorithm",
]
