"""Find a (0,m,d)-net hidden in a finite point set."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .grid import Params, PointSet, cells_of_points
from .patterns import (
    EnumerationSizeError,
    Pattern,
    _backtrack,
    _columns,
    _pattern_from_flat,
    count_patterns_upper,
    family_masks,
    pattern_family,
    within_enumeration_guard,
)

__all__ = ["SearchResult", "occupied_cells", "find_net_subset", "STRATEGIES"]

STRATEGIES = ("auto", "enumerate", "backtrack")
# auto scans the enumerated family only when it is small enough to beat backtracking
AUTO_ENUMERATE_MAX_A = 4096


@dataclass(frozen=True)
class SearchResult:
    found: bool
    pattern: Pattern | None = None
    point_indices: tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return self.found

    def to_dict(self) -> dict:
        return {
            "found": self.found,
            "pattern": [list(c) for c in self.pattern.cells] if self.pattern else [],
            "point_indices": list(self.point_indices),
        }


def occupied_cells(points: PointSet, params: Params) -> dict[tuple[int, ...], list[int]]:
    """Resolution-m cells holding at least one point, each with its point indices in input order.

    Keys are in lexicographic order.
    """
    cells = cells_of_points(points, params)
    buckets: dict[tuple[int, ...], list[int]] = {}
    for i, cell in enumerate(map(tuple, cells.tolist())):
        buckets.setdefault(cell, []).append(i)
    return dict(sorted(buckets.items()))


def _flat(cell: tuple[int, ...], bm: int) -> int:
    idx = 0
    for x in cell:
        idx = idx * bm + x
    return idx


def _use_enumeration(params: Params) -> bool:
    return within_enumeration_guard(params) and count_patterns_upper(params) <= math.log(AUTO_ENUMERATE_MAX_A)


def find_net_subset(points: PointSet, params: Params, strategy: str = "auto") -> SearchResult:
    """Look for an admissible pattern whose cells are all occupied.

    Returns the lexicographically first such pattern and, per pattern cell,
    the lowest-index point inside it; the selected points form a
    (0,m,d)-net. ``enumerate`` scans the enumerated family, ``backtrack``
    builds a pattern column by column over occupied cells with incremental
    injectivity checks, ``auto`` picks ``enumerate`` for small families.
    Both strategies are exact.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")
    base = Params(params.b, params.m, params.d)
    if strategy == "enumerate" and not within_enumeration_guard(base):
        raise EnumerationSizeError(
            f"enumerate strategy is limited to enumerable families; got b^(md) = {base.cells}"
        )
    if len(points) < base.bm:
        return SearchResult(False)
    occupied = occupied_cells(points, base)
    if len(occupied) < base.bm:
        return SearchResult(False)
    bm = base.bm
    if strategy == "auto":
        strategy = "enumerate" if _use_enumeration(base) else "backtrack"

    pattern: Pattern | None = None
    if strategy == "enumerate":
        occ_mask = 0
        for cell in occupied:
            occ_mask |= 1 << _flat(cell, bm)
        for k, mask in enumerate(family_masks(base)):
            if mask & occ_mask == mask:
                pattern = pattern_family(base)[k]
                break
    else:
        cells = list(occupied)
        columns = _columns(base, np.asarray(cells, dtype=np.int64), [_flat(c, bm) for c in cells])
        first = next(_backtrack(base, columns), None)
        if first is not None:
            pattern = _pattern_from_flat(base, first)

    if pattern is None:
        return SearchResult(False)
    indices = tuple(occupied[cell][0] for cell in pattern.cells)
    return SearchResult(True, pattern, indices)
