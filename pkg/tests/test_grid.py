import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from netsubset.grid import (
    ElementaryInterval,
    GridSizeError,
    Params,
    Point,
    PointSet,
    cell_of_point,
    cells_of_points,
    compositions,
    interval_keys,
    interval_of_cell,
)


def test_compositions_examples():
    assert compositions(2, 2) == [(0, 2), (1, 1), (2, 0)]
    assert compositions(0, 3) == [(0, 0, 0)]
    assert len(compositions(3, 3)) == 10


@pytest.mark.parametrize("m", range(7))
@pytest.mark.parametrize("d", range(1, 5))
def test_composition_count_matches_enumeration(m, d):
    brute = sorted(c for c in itertools.product(range(m + 1), repeat=d) if sum(c) == m)
    got = compositions(m, d)
    assert got == brute
    assert len(got) == math.comb(m + d - 1, d - 1)


def test_params_reject_oversized_grid():
    with pytest.raises(GridSizeError):
        Params(2, 32, 2)
    Params(2, 31, 2)
    with pytest.raises(ValueError):
        Params(1, 1, 1)


def test_cell_of_point_examples():
    assert cell_of_point(Point((0.0, 0.0)), Params(2, 1, 2)) == (0, 0)
    assert cell_of_point(Point((0.5, 0.25)), Params(2, 2, 2)) == (2, 1)
    exact = Point.from_exact((1, 1), exponent=1, base=2)
    assert cell_of_point(exact, Params(2, 1, 2)) == (1, 1)


def test_exact_form_beats_float_rounding():
    # 1/3 is below 0.333... in binary, but the exact ternary digit is 1.
    p = Point.from_exact((1,), exponent=1, base=3)
    assert cell_of_point(p, Params(3, 1, 1)) == (1,)
    assert cell_of_point(p, Params(3, 2, 1)) == (3,)


def test_point_rejects_one():
    with pytest.raises(ValueError):
        Point((1.0, 0.2))
    with pytest.raises(ValueError):
        PointSet([[0.2, 1.0]])


def test_interval_of_cell_examples():
    assert interval_of_cell((3, 0), (1, 1), Params(2, 2, 2)).a == (1, 0)
    assert interval_of_cell((3, 0), (2, 0), Params(2, 2, 2)).a == (3, 0)
    assert interval_of_cell((5, 7), (0, 3), Params(2, 3, 2)).a == (0, 7)


@pytest.mark.parametrize("b,m,d", [(2, 2, 2), (3, 1, 2), (2, 2, 3)])
def test_cell_lies_inside_its_interval(b, m, d):
    params = Params(b, m, d)
    for cell in itertools.product(range(b**m), repeat=d):
        lo = [Fraction(x, b**m) for x in cell]
        hi = [Fraction(x + 1, b**m) for x in cell]
        for c in compositions(m, d):
            box = interval_of_cell(cell, c, params).bounds()
            assert all(bl <= l and h <= bh for (bl, bh), l, h in zip(box, lo, hi))


@settings(max_examples=200, deadline=None)
@given(
    b=st.sampled_from([2, 3]),
    m=st.integers(0, 2),
    d=st.integers(1, 3),
    u=st.lists(st.floats(0, 1, exclude_max=True), min_size=3, max_size=3),
)
def test_partition_exactly_one_interval(b, m, d, u):
    p = Point(tuple(u[:d]))
    for c in compositions(m, d):
        offsets = itertools.product(*(range(b**cj) for cj in c))
        holders = [a for a in offsets if ElementaryInterval(b, c, a).contains(p)]
        assert len(holders) == 1


@settings(max_examples=300, deadline=None)
@given(
    b=st.sampled_from([2, 3, 5]),
    m=st.integers(0, 4),
    num=st.integers(0, 10**12),
)
def test_exact_and_float_paths_agree_away_from_boundaries(b, m, num):
    exp = 12
    num = num % b**exp
    x = num / b**exp
    scaled = x * b**m
    if abs(scaled - round(scaled)) * b**-m < 2**-40:
        return
    exact = Point(((x,)), ((num, exp),), b)
    approx = Point((x,))
    params = Params(b, m, 1)
    assert cell_of_point(exact, params) == cell_of_point(approx, params)


def test_vectorised_cells_match_scalar(rng):
    params = Params(3, 2, 3)
    pts = PointSet(rng.random((50, 3)))
    cells = cells_of_points(pts, params)
    for i, p in enumerate(pts):
        assert tuple(cells[i]) == cell_of_point(p, params)


def test_interval_keys_are_bijective_labels():
    params = Params(2, 2, 2)
    cells = np.array(list(itertools.product(range(4), repeat=2)))
    keys = interval_keys(cells, params)
    for k, c in enumerate(compositions(2, 2)):
        labels = {}
        for cell, key in zip(cells.tolist(), keys[:, k].tolist()):
            labels.setdefault(key, set()).add(interval_of_cell(cell, c, params).a)
        assert len(labels) == 4 and all(len(v) == 1 for v in labels.values())
