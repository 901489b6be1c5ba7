from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from netcolor.generators import gen_comb, gen_random
from netcolor.netspace import Ball, NetworkSpace, Point, Region
from netcolor.paths import assert_on_center_edge, gap_hits, uncovered_pieces
from netcolor.tree_balls import cf_bound_tree, cf_color_balls_tree, find_centroid, nm_color_balls_tree, tree_core
from netcolor.validator import check_cf, check_nm, check_unique_extremum


def _random(seed):
    return gen_random("tree", "balls", seed=seed, t=1 + seed % 64, n=1 + (seed * 7) % 64)


def _caterpillar(t):
    """Spine x0..x{t-1}, each spine node with enough unit legs to have degree 3."""
    edges = [(f"s{i}", f"x{i}", f"x{i + 1}", 1) for i in range(t - 1)]
    for i in range(t):
        legs = 3 - (i > 0) - (i < t - 1)
        edges += [(f"l{i}_{j}", f"x{i}", f"y{i}_{j}", 1) for j in range(legs)]
    return NetworkSpace(edges)


def test_two_overlapping_balls_on_an_edge():
    space = NetworkSpace([("e", "a", "b", 4)])
    balls = [Ball(0, space.point("e", 1), 1), Ball(1, space.point("e", 2), 1)]
    col = nm_color_balls_tree(space, balls)
    assert sorted(col.colors.values()) == [0, 1]


def test_two_internal_nodes_eight_balls():
    space = _caterpillar(2)
    balls = [
        Ball(0, Point.at("x0"), Fraction(3, 2)),
        Ball(1, Point.at("x1"), Fraction(3, 2)),
        Ball(2, space.point("s0", Fraction(1, 2)), 1),
        Ball(3, space.point("l0_0", Fraction(1, 2)), Fraction(1, 2)),
        Ball(4, space.point("l1_0", Fraction(1, 3)), Fraction(2, 3)),
        Ball(5, Point.at("y1_1"), Fraction(1, 2)),
        Ball(6, space.point("s0", Fraction(1, 4)), Fraction(1, 4)),
        Ball(7, space.point("l0_1", Fraction(3, 4)), 2),
    ]
    col = nm_color_balls_tree(space, balls)
    assert col.palette_size == 2
    assert check_nm(space, balls, col)


def test_centroid_examples(star3):
    assert find_centroid(star3, ["h"]) == "h"
    space = _caterpillar(3)
    assert find_centroid(space, space.internal_nodes) == "x1"


@given(st.integers(0, 3000))
def test_centroid_halves_active_nodes(seed):
    space = _random(seed).space
    active = set(space.internal_nodes)
    r = find_centroid(space, active)
    for part in space.split_at_node(r):
        assert len(active & (set(part.nodes) - {r})) <= len(active) // 2


@given(st.integers(0, 5000))
def test_nm_two_colors(seed):
    inst = _random(seed)
    col = nm_color_balls_tree(inst.space, inst.objects)
    assert col.palette_size <= 2
    assert check_nm(inst.space, inst.objects, col)


def test_nm_uses_exactly_two_when_balls_overlap():
    inst = _random(11)
    assert nm_color_balls_tree(inst.space, inst.objects).palette_size == 2


def test_cf_single_star(star3):
    balls = [Ball(i, star3.point(i, Fraction(1, 2)), 1) for i in range(3)]
    col = cf_color_balls_tree(star3, balls)
    assert col.meta["levels"] == 1
    assert col.palette_size <= 4
    assert check_cf(star3, balls, col)


def test_cf_comb():
    inst = gen_comb(3)
    col = cf_color_balls_tree(inst.space, inst.objects)
    assert check_cf(inst.space, inst.objects, col)
    assert col.palette_size >= 2


@given(st.integers(0, 5000))
def test_cf_valid_core_unimin_and_bounded(seed):
    inst = _random(seed)
    col = cf_color_balls_tree(inst.space, inst.objects)
    assert check_cf(inst.space, inst.objects, col)
    core = [b for b in inst.objects if b.id in set(col.meta["core"])]
    assert check_unique_extremum(inst.space, core, col.restrict(col.meta["core"]), "min")
    assert col.palette_size <= cf_bound_tree(inst.space.t)


@given(st.integers(0, 5000))
def test_non_core_balls_leave_core_only_on_center_edge(seed):
    inst = _random(seed)
    space = inst.space
    core = set(tree_core(space, inst.objects).values())
    regions = {b.id: b.extent(space) for b in inst.objects}
    union = Region({}).union(*(regions[i] for i in core)) if core else Region({})
    gaps = uncovered_pieces(space, union)
    for b in inst.objects:
        if b.id not in core:
            assert_on_center_edge(space, b, gap_hits(regions[b.id], gaps))


def test_center_edge_check_fires():
    space = _caterpillar(2)
    ball = Ball("b", Point.at("y0_0"), Fraction(1, 2))
    with pytest.raises(AssertionError):
        assert_on_center_edge(space, ball, {("s0", 0): (0, 1), ("l1_0", 0): (0, 1)})


def test_cf_bound_values():
    assert [cf_bound_tree(t) for t in (0, 1, 2, 3, 4, 5, 64)] == [3, 3, 4, 5, 5, 6, 9]
