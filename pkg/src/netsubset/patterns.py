"""
Admissible patterns of resolution-m cells.

A pattern is a set of ``b**m`` cells of the ``b**(m*d)`` sub-cube grid such
that any choice of one point per cell is a (0,m,d)-net. This module tests
admissibility, enumerates the family by backtracking, counts it exactly for
``d = 2`` through the strip/permutation recursion, and computes the pairwise
overlap statistics used by the second-moment bound.
"""

from __future__ import annotations

import math
from fractions import Fraction
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations, product
from typing import Iterator, Sequence

import numpy as np

from .grid import Params, all_cells, interval_keys
from .netcheck import checking_order

__all__ = [
    "EnumerationSizeError",
    "Pattern",
    "Admissibility",
    "StripDecomposition",
    "PatternCount",
    "OverlapCensus",
    "is_admissible",
    "enumerate_patterns",
    "pattern_family",
    "count_patterns_exact_d2",
    "count_patterns_upper",
    "lps_compose",
    "lps_decompose",
    "all_strip_decompositions",
    "project_pattern",
    "overlap_census",
    "within_enumeration_guard",
]

MAX_ENUM_CELLS = 4096
MAX_ENUM_POINTS = 16
MAX_EXACT_DIGITS = 10**6
# (2,4,2) passes the grid guard but has 2**32 patterns.
MAX_ENUM_FAMILY = 2**24


class EnumerationSizeError(ValueError):
    """Brute-force enumeration requested beyond its size guard."""


@dataclass(frozen=True)
class Pattern:
    """``b**m`` distinct resolution-m cells, stored in lexicographic order."""

    b: int
    m: int
    d: int
    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        cells = tuple(sorted(tuple(int(x) for x in c) for c in self.cells))
        object.__setattr__(self, "cells", cells)
        params = self.params
        if len(cells) != params.bm:
            raise ValueError(f"a pattern needs {params.bm} cells, got {len(cells)}")
        if len(set(cells)) != len(cells):
            raise ValueError("pattern cells must be distinct")
        for c in cells:
            if len(c) != self.d or not all(0 <= x < params.bm for x in c):
                raise ValueError(f"cell {c} invalid at resolution {self.m} in dimension {self.d}")

    @property
    def params(self) -> Params:
        return Params(self.b, self.m, self.d)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.cells, dtype=np.int64).reshape(-1, self.d)

    def flat_indices(self) -> list[int]:
        bm = self.b**self.m
        out = []
        for c in self.cells:
            idx = 0
            for x in c:
                idx = idx * bm + x
            out.append(idx)
        return out

    def to_dict(self) -> dict:
        return {"b": self.b, "m": self.m, "d": self.d, "cells": [list(c) for c in self.cells]}

    @classmethod
    def from_dict(cls, data: dict) -> "Pattern":
        return cls(int(data["b"]), int(data["m"]), int(data["d"]), tuple(tuple(c) for c in data["cells"]))


@dataclass(frozen=True)
class Admissibility:
    ok: bool
    c: tuple[int, ...] | None = None
    pair: tuple[tuple[int, ...], tuple[int, ...]] | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_admissible(pattern: Pattern) -> Admissibility:
    """Check that every composition maps the cells injectively to intervals.

    Returns the first composition (same order as :func:`netcheck.is_net`)
    under which two cells share an elementary interval, with that pair.
    """
    params = pattern.params
    order = checking_order(params.m, params.d)
    keys = interval_keys(pattern.as_array(), params, order)
    for k, c in enumerate(order):
        seen: dict[int, int] = {}
        for i, key in enumerate(keys[:, k].tolist()):
            if key in seen:
                return Admissibility(False, c, (pattern.cells[seen[key]], pattern.cells[i]))
            seen[key] = i
    return Admissibility(True)


def within_enumeration_guard(params: Params) -> bool:
    """Grid-size guard plus a cap on the projection bound of the family size."""
    return (
        params.cells <= MAX_ENUM_CELLS
        and params.bm <= MAX_ENUM_POINTS
        and count_patterns_upper(params) <= math.log(MAX_ENUM_FAMILY)
    )


def _search_compositions(params: Params) -> list[tuple[int, ...]]:
    # The (m, 0, ..., 0) composition is enforced structurally: one cell per column.
    return [c for c in checking_order(params.m, params.d) if c[0] != params.m]


def _columns(params: Params, cells: np.ndarray, ids: Sequence[int]) -> list[list[tuple[int, tuple[int, ...]]]]:
    """Group ``cells`` (lexicographic) by first coordinate, paired with interval labels."""
    comps = _search_compositions(params)
    if comps:
        keys = [tuple(row) for row in interval_keys(cells, params, comps).tolist()]
    else:
        keys = [()] * len(ids)
    columns: list[list[tuple[int, tuple[int, ...]]]] = [[] for _ in range(params.bm)]
    for cid, cell, row in zip(ids, cells.tolist(), keys):
        columns[cell[0]].append((cid, row))
    return columns


def _backtrack(
    params: Params, columns: Sequence[Sequence[tuple[int, tuple[int, ...]]]]
) -> Iterator[list[int]]:
    """Yield admissible patterns as lists of cell ids, lexicographically.

    ``columns[x]`` lists the candidate cells of first coordinate ``x`` in
    ascending order as ``(id, interval labels)`` pairs.
    """
    bm = params.bm
    n_comps = len(_search_compositions(params))
    if any(len(col) == 0 for col in columns):
        return
    used = [bytearray(bm) for _ in range(n_comps)]
    chosen: list[int] = []

    def place(x: int) -> Iterator[list[int]]:
        if x == bm:
            yield list(chosen)
            return
        for cid, row in columns[x]:
            if any(used[k][row[k]] for k in range(n_comps)):
                continue
            for k in range(n_comps):
                used[k][row[k]] = 1
            chosen.append(cid)
            yield from place(x + 1)
            chosen.pop()
            for k in range(n_comps):
                used[k][row[k]] = 0

    yield from place(0)


def _pattern_from_flat(params: Params, flat: Sequence[int]) -> Pattern:
    bm = params.bm
    cells = []
    for idx in flat:
        cell = []
        for _ in range(params.d):
            idx, r = divmod(idx, bm)
            cell.append(r)
        cells.append(tuple(reversed(cell)))
    return Pattern(params.b, params.m, params.d, tuple(cells))


def enumerate_patterns(params: Params) -> list[Pattern]:
    """All admissible patterns for ``(b, m, d)``, lexicographically sorted.

    Exhaustive backtracking over cells with incremental injectivity checks
    per composition. Guarded to ``b**(m*d) <= 4096``, ``b**m <= 16`` and a
    projection bound of at most ``2**24`` patterns.
    """
    return list(pattern_family(Params(params.b, params.m, params.d)))


@lru_cache(maxsize=32)
def pattern_family(params: Params) -> tuple[Pattern, ...]:
    if not within_enumeration_guard(params):
        raise EnumerationSizeError(
            f"enumeration needs b^(md) <= {MAX_ENUM_CELLS}, b^m <= {MAX_ENUM_POINTS} and at most "
            f"{MAX_ENUM_FAMILY} patterns by the projection bound; got b^(md) = {params.cells}, b^m = {params.bm}"
        )
    cells = all_cells(params)
    columns = _columns(params, cells, range(len(cells)))
    return tuple(_pattern_from_flat(params, flat) for flat in _backtrack(params, columns))


@lru_cache(maxsize=32)
def family_masks(params: Params) -> tuple[int, ...]:
    """Each enumerated pattern as a bitmask over flat cell indices."""
    out = []
    for pat in pattern_family(params):
        mask = 0
        for i in pat.flat_indices():
            mask |= 1 << i
        out.append(mask)
    return tuple(out)


@dataclass(frozen=True)
class PatternCount:
    """A pattern count as an exact integer (when cheap) and its natural log."""

    log: float
    exact: int | None = None

    @property
    def log10(self) -> float:
        return self.log / math.log(10)

    def to_dict(self) -> dict:
        out: dict = {"log10": self.log10}
        if self.exact is not None:
            out["exact"] = str(self.exact) if self.exact >= 2**53 else self.exact
        return out


def count_patterns_exact_d2(b: int, m: int) -> PatternCount:
    """``a_{b,2}(m) = (b!)**(m * b**(m-1))``; exact when it has at most 10**6 digits."""
    if b < 2 or m < 0:
        raise ValueError("need b >= 2 and m >= 0")
    if m == 0:
        return PatternCount(0.0, 1)
    exponent = m * b ** (m - 1)
    log_fact = math.lgamma(b + 1)
    log_a = exponent * log_fact
    exact = None
    if log_a / math.log(10) <= MAX_EXACT_DIGITS:
        exact = math.factorial(b) ** exponent
    return PatternCount(log_a, exact)


def count_patterns_upper(params: Params) -> float:
    """Natural log of the projection bound ``(b!)**(m * b**(m-1) * (d-1))``."""
    b, m, d = params.b, params.m, params.d
    if m == 0 or d == 1:
        return 0.0
    return m * b ** (m - 1) * (d - 1) * math.lgamma(b + 1)


@dataclass(frozen=True)
class StripDecomposition:
    """``b`` order-(m-1) sub-patterns (one per vertical strip) and ``b**(m-1)`` row permutations."""

    subpatterns: tuple[Pattern, ...]
    perms: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "subpatterns", tuple(self.subpatterns))
        object.__setattr__(self, "perms", tuple(tuple(p) for p in self.perms))
        if not self.subpatterns:
            raise ValueError("need at least one strip")
        b = len(self.subpatterns)
        orders = {(p.b, p.m, p.d) for p in self.subpatterns}
        if len(orders) != 1:
            raise ValueError("all sub-patterns must share (b, m, d)")
        (pb, pm, pd), = orders
        if pb != b or pd != 2:
            raise ValueError(f"expected {b} two-dimensional sub-patterns in base {b}")
        if len(self.perms) != b**pm:
            raise ValueError(f"expected {b ** pm} row permutations, got {len(self.perms)}")
        for perm in self.perms:
            if sorted(perm) != list(range(b)):
                raise ValueError(f"{perm} is not a permutation of range({b})")
        for sub in self.subpatterns:
            if not is_admissible(sub):
                raise ValueError("sub-patterns must be admissible")

    @property
    def b(self) -> int:
        return len(self.subpatterns)

    @property
    def m(self) -> int:
        return self.subpatterns[0].m + 1


def lps_compose(dec: StripDecomposition) -> Pattern:
    """Assemble an order-m ``d = 2`` pattern from strips and row permutations.

    Sub-pattern cell ``(x, y)`` of strip ``k`` becomes
    ``(k * b**(m-1) + x, y * b + perms[y][k])``.
    """
    b, m = dec.b, dec.m
    width = b ** (m - 1)
    cells = [
        (k * width + x, y * b + dec.perms[y][k])
        for k, sub in enumerate(dec.subpatterns)
        for x, y in sub.cells
    ]
    return Pattern(b, m, 2, tuple(cells))


def lps_decompose(pattern: Pattern) -> StripDecomposition:
    """Inverse of :func:`lps_compose` for an admissible ``d = 2`` pattern with ``m >= 1``."""
    if pattern.d != 2 or pattern.m < 1:
        raise ValueError("strip decomposition needs d = 2 and m >= 1")
    if not is_admissible(pattern):
        raise ValueError("pattern is not admissible")
    b, m = pattern.b, pattern.m
    width = b ** (m - 1)
    strips: list[list[tuple[int, int]]] = [[] for _ in range(b)]
    perms = [[-1] * b for _ in range(width)]
    for x, y in pattern.cells:
        k, xs = divmod(x, width)
        row, digit = divmod(y, b)
        strips[k].append((xs, row))
        perms[row][k] = digit
    subs = tuple(Pattern(b, m - 1, 2, tuple(s)) for s in strips)
    return StripDecomposition(subs, tuple(tuple(p) for p in perms))


def all_strip_decompositions(b: int, m: int) -> Iterator[StripDecomposition]:
    """Every valid decomposition at order ``m``, with sub-patterns from enumeration."""
    if m < 1:
        return
    subs = enumerate_patterns(Params(b, m - 1, 2))
    perms = list(permutations(range(b)))
    for choice in product(subs, repeat=b):
        for rows in product(perms, repeat=b ** (m - 1)):
            yield StripDecomposition(choice, rows)


def project_pattern(pattern: Pattern, axes: tuple[int, int]) -> Pattern:
    """Drop all coordinates except ``axes``; the image of an admissible pattern is admissible."""
    i, j = axes
    if i == j or not (0 <= i < pattern.d and 0 <= j < pattern.d):
        raise ValueError(f"axes {axes} must be two distinct indices below {pattern.d}")
    cells = [(c[i], c[j]) for c in pattern.cells]
    if len(set(cells)) != len(cells):
        raise ValueError("projection collapses cells; the pattern is not admissible")
    return Pattern(pattern.b, pattern.m, 2, tuple(cells))


@dataclass(frozen=True)
class OverlapCensus:
    """Pairwise overlap statistics of a pattern family.

    ``N_ell[l]`` counts unordered pattern pairs sharing exactly ``l`` cells,
    ``M`` is the number of patterns through each cell and ``Q`` the total
    overlap ``sum_l l * N_ell[l]``.
    """

    params: Params
    A: int
    N_ell: dict[int, int]
    M: np.ndarray = field(repr=False)
    M_constant: bool
    Q: int
    N0_lower_bound: float

    @property
    def N0(self) -> int:
        return self.N_ell.get(0, 0)

    @property
    def M_value(self) -> int | None:
        return int(self.M[0]) if self.M_constant and self.M.size else None

    def to_dict(self) -> dict:
        return {
            "b": self.params.b,
            "m": self.params.m,
            "d": self.params.d,
            "A": self.A,
            "N_ell": {str(k): v for k, v in sorted(self.N_ell.items())},
            "M": self.M_value if self.M_constant else self.M.tolist(),
            "M_constant": self.M_constant,
            "Q": self.Q,
            "N0": self.N0,
            "N0_lower_bound": self.N0_lower_bound,
        }


def n0_lower_bound(A: float, params: Params) -> float:
    """``A**2 / 2 * (1 - b**(-m(d-2))) + A / 2 * (b**m - 1)``."""
    b, m, d = params.b, params.m, params.d
    if isinstance(A, int):
        shrink = 1 - Fraction(b) ** (-m * (d - 2))
        return float(Fraction(A * A, 2) * shrink + Fraction(A, 2) * (b**m - 1))
    return A * A / 2 * (1 - float(b) ** (-m * (d - 2))) + A / 2 * (b**m - 1)


def overlap_census(patterns: Sequence[Pattern], chunk: int = 2048) -> OverlapCensus:
    """Exact overlap census of a family of patterns sharing ``(b, m, d)``."""
    if not patterns:
        raise ValueError("empty pattern family")
    params = patterns[0].params
    if any(p.params != params for p in patterns):
        raise ValueError("patterns must share (b, m, d)")
    if not within_enumeration_guard(params):
        raise EnumerationSizeError("overlap census is limited to enumerable families")
    A = len(patterns)
    K = params.cells
    member = np.zeros((A, K), dtype=np.float32)
    for i, pat in enumerate(patterns):
        member[i, pat.flat_indices()] = 1.0
    M = member.sum(axis=0).astype(np.int64)
    counts = np.zeros(params.bm + 1, dtype=np.int64)
    for start in range(0, A, chunk):
        block = member[start : start + chunk] @ member.T
        overlap = np.rint(block).astype(np.int64)
        rows = np.arange(start, min(start + chunk, A))[:, None]
        upper = np.arange(A)[None, :] > rows
        counts += np.bincount(overlap[upper], minlength=params.bm + 1)
    N_ell = {ell: int(v) for ell, v in enumerate(counts.tolist())}
    Q = sum(ell * v for ell, v in N_ell.items())
    return OverlapCensus(
        params=params,
        A=A,
        N_ell=N_ell,
        M=M,
        M_constant=bool(np.all(M == M[0])),
        Q=Q,
        N0_lower_bound=n0_lower_bound(A, params),
    )
