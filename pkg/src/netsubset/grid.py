"""
b-adic grid arithmetic.

Compositions of the order ``m`` into ``d`` parts, elementary intervals,
resolution-``m`` cell indices and the point-to-cell map. Everything here is a
pure function of its arguments; the dataclasses are frozen.

Conventions
-----------
Intervals are half-open ``[lo, hi)``. A coordinate equal to ``1.0`` is an
invalid input, never clamped. The float path computes ``floor(x * b**m)`` and
clamps to ``b**m - 1`` to absorb upward rounding; points carrying an exact
b-adic form are mapped with integer arithmetic only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "UINT64_LIMIT",
    "GridSizeError",
    "Params",
    "ElementaryInterval",
    "Point",
    "PointSet",
    "compositions",
    "count_compositions",
    "cell_of_point",
    "cells_of_points",
    "interval_of_cell",
    "interval_keys",
    "all_cells",
]

UINT64_LIMIT = 2**64

Composition = tuple[int, ...]
CellIndex = tuple[int, ...]


class GridSizeError(ValueError):
    """Raised when a derived grid size does not fit 64-bit unsigned arithmetic."""


@dataclass(frozen=True)
class Params:
    """Base ``b``, order ``m``, dimension ``d`` and optional sample count ``N``."""

    b: int
    m: int
    d: int
    N: int | None = None

    def __post_init__(self) -> None:
        for name in ("b", "m", "d"):
            if not isinstance(getattr(self, name), (int, np.integer)):
                raise TypeError(f"{name} must be an integer")
        if self.b < 2:
            raise ValueError(f"base b must be >= 2, got {self.b}")
        if self.m < 0:
            raise ValueError(f"order m must be >= 0, got {self.m}")
        if self.d < 1:
            raise ValueError(f"dimension d must be >= 1, got {self.d}")
        if self.N is not None and self.N < 0:
            raise ValueError(f"sample count N must be >= 0, got {self.N}")
        if self.b ** (self.m * self.d) >= UINT64_LIMIT:
            raise GridSizeError(
                f"b^(m*d) = {self.b}^{self.m * self.d} does not fit in 64 bits"
            )

    @property
    def bm(self) -> int:
        """Number of points in a net, ``b**m``."""
        return self.b**self.m

    @property
    def cells(self) -> int:
        """Number of resolution-m sub-cubes, ``b**(m*d)``."""
        return self.b ** (self.m * self.d)

    def with_N(self, N: int) -> "Params":
        return Params(self.b, self.m, self.d, N)


def count_compositions(m: int, d: int) -> int:
    if m < 0 or d < 1:
        raise ValueError("need m >= 0 and d >= 1")
    count = math.comb(m + d - 1, d - 1)
    if count >= UINT64_LIMIT:
        raise GridSizeError(f"binomial({m + d - 1}, {d - 1}) compositions overflow 64 bits")
    return count


def _compositions(m: int, d: int) -> Iterator[Composition]:
    if d == 1:
        yield (m,)
        return
    for first in range(m + 1):
        for rest in _compositions(m - first, d - 1):
            yield (first,) + rest


@lru_cache(maxsize=256)
def _compositions_cached(m: int, d: int) -> tuple[Composition, ...]:
    return tuple(_compositions(m, d))


def compositions(m: int, d: int) -> list[Composition]:
    """All ``d``-vectors of non-negative integers summing to ``m``, lexicographic.

    >>> compositions(2, 2)
    [(0, 2), (1, 1), (2, 0)]
    """
    count_compositions(m, d)
    return list(_compositions_cached(m, d))


@dataclass(frozen=True)
class ElementaryInterval:
    """The box ``prod_j [a_j / b**c_j, (a_j + 1) / b**c_j)``."""

    b: int
    c: Composition
    a: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.c) != len(self.a):
            raise ValueError("c and a must have the same length")
        for cj, aj in zip(self.c, self.a):
            if cj < 0 or not 0 <= aj < self.b**cj:
                raise ValueError(f"offset {aj} out of range for exponent {cj}")

    def bounds(self) -> list[tuple[Fraction, Fraction]]:
        return [
            (Fraction(aj, self.b**cj), Fraction(aj + 1, self.b**cj))
            for cj, aj in zip(self.c, self.a)
        ]

    def volume(self) -> Fraction:
        return Fraction(1, self.b ** sum(self.c))

    def contains(self, point: "Point") -> bool:
        # Exact test through the resolution-c_j digit of each coordinate.
        for j, (cj, aj) in enumerate(zip(self.c, self.a)):
            if _axis_cell(point, j, self.b, cj) != aj:
                return False
        return True


@dataclass(frozen=True)
class Point:
    """A point of ``[0, 1)^d`` with an optional exact b-adic form.

    ``exact[j] = (numerator, exponent)`` means ``numerator / base**exponent``.
    """

    coords: tuple[float, ...]
    exact: tuple[tuple[int, int], ...] | None = None
    base: int | None = None

    def __post_init__(self) -> None:
        coords = tuple(float(x) for x in self.coords)
        object.__setattr__(self, "coords", coords)
        for x in coords:
            if not 0.0 <= x < 1.0:
                raise ValueError(f"coordinate {x!r} outside [0, 1)")
        if self.exact is not None:
            if self.base is None or self.base < 2:
                raise ValueError("an exact form needs a base >= 2")
            if len(self.exact) != len(coords):
                raise ValueError("exact form and coordinates differ in length")
            for (num, exp), x in zip(self.exact, coords):
                if exp < 0 or not 0 <= num < self.base**exp:
                    raise ValueError(f"exact coordinate {num}/{self.base}^{exp} outside [0, 1)")
                if abs(num / self.base**exp - x) > math.ulp(1.0):
                    raise ValueError("exact form disagrees with the float coordinates")

    @property
    def d(self) -> int:
        return len(self.coords)

    @classmethod
    def from_exact(cls, numerators: Sequence[int], exponent: int, base: int) -> "Point":
        coords = tuple(n / base**exponent for n in numerators)
        return cls(coords, tuple((int(n), exponent) for n in numerators), base)


def _axis_cell(point: Point, j: int, b: int, resolution: int) -> int:
    scale = b**resolution
    if point.exact is not None:
        num, exp = point.exact[j]
        base = point.base
        return (num * scale) // base**exp
    return min(math.floor(point.coords[j] * scale), scale - 1)


def cell_of_point(point: Point, params: Params) -> CellIndex:
    """Resolution-``m`` cell containing ``point``.

    Exact-form points are mapped with integer digit arithmetic, so a point
    sitting exactly on a cell boundary lands in the cell it opens.
    """
    if point.d != params.d:
        raise ValueError(f"point has dimension {point.d}, expected {params.d}")
    return tuple(_axis_cell(point, j, params.b, params.m) for j in range(params.d))


class PointSet:
    """An ordered collection of points in ``[0, 1)^d``.

    Coordinates are held as an ``(n, d)`` float array. Constructed nets also
    carry ``exact``: an ``(n, d)`` integer array of numerators over the common
    denominator ``exact_base ** exact_exponent``.
    """

    def __init__(
        self,
        coords: np.ndarray | Sequence[Sequence[float]],
        d: int | None = None,
        *,
        exact: np.ndarray | Sequence[Sequence[int]] | None = None,
        exact_base: int | None = None,
        exact_exponent: int | None = None,
    ) -> None:
        arr = np.array(coords, dtype=np.float64)
        if arr.size == 0:
            if d is None:
                raise ValueError("dimension must be given for an empty point set")
            arr = arr.reshape(0, d)
        if arr.ndim != 2:
            raise ValueError("coordinates must form an (n, d) array")
        if d is not None and arr.shape[1] != d:
            raise ValueError(f"points have dimension {arr.shape[1]}, expected {d}")
        if not np.all((arr >= 0.0) & (arr < 1.0)):
            raise ValueError("all coordinates must lie in [0, 1)")
        self.coords = arr
        self.coords.setflags(write=False)
        self.d = arr.shape[1]
        self.exact: np.ndarray | None = None
        self.exact_base = exact_base
        self.exact_exponent = exact_exponent
        if exact is not None:
            if exact_base is None or exact_exponent is None:
                raise ValueError("exact numerators need exact_base and exact_exponent")
            ex = np.asarray(exact, dtype=object).reshape(arr.shape)
            denom = exact_base**exact_exponent
            for num, x in zip(ex.ravel(), arr.ravel()):
                if not 0 <= num < denom:
                    raise ValueError("exact numerator outside [0, denominator)")
                if abs(num / denom - x) > math.ulp(1.0):
                    raise ValueError("exact form disagrees with the float coordinates")
            self.exact = ex

    def __len__(self) -> int:
        return self.coords.shape[0]

    def __iter__(self) -> Iterator[Point]:
        for i in range(len(self)):
            yield self.point(i)

    def __repr__(self) -> str:
        tag = ", exact" if self.exact is not None else ""
        return f"PointSet(n={len(self)}, d={self.d}{tag})"

    def point(self, i: int) -> Point:
        if self.exact is None:
            return Point(tuple(self.coords[i]))
        return Point(
            tuple(self.coords[i]),
            tuple((int(n), self.exact_exponent) for n in self.exact[i]),
            self.exact_base,
        )

    @classmethod
    def from_points(cls, points: Iterable[Point], d: int | None = None) -> "PointSet":
        pts = list(points)
        if not pts:
            return cls(np.empty((0, d or 0)), d)
        dims = {p.d for p in pts}
        if len(dims) != 1:
            raise ValueError("all points must share one dimension")
        coords = [p.coords for p in pts]
        if all(p.exact is not None for p in pts):
            bases = {p.base for p in pts}
            exps = {e for p in pts for _, e in p.exact}
            if len(bases) == 1:
                (base,) = bases
                top = max(exps)
                nums = [[n * base ** (top - e) for n, e in p.exact] for p in pts]
                return cls(coords, d, exact=nums, exact_base=base, exact_exponent=top)
        return cls(coords, d)

    @classmethod
    def from_exact(cls, numerators: Sequence[Sequence[int]], base: int, exponent: int) -> "PointSet":
        nums = np.asarray(numerators, dtype=object)
        denom = base**exponent
        coords = np.array([[int(n) / denom for n in row] for row in nums], dtype=np.float64)
        if coords.size == 0:
            coords = coords.reshape(0, nums.shape[1] if nums.ndim == 2 else 0)
        return cls(coords, coords.shape[1], exact=nums, exact_base=base, exact_exponent=exponent)

    def subset(self, indices: Sequence[int]) -> "PointSet":
        idx = list(indices)
        ex = None if self.exact is None else self.exact[idx]
        return PointSet(
            self.coords[idx] if idx else np.empty((0, self.d)),
            self.d,
            exact=ex,
            exact_base=self.exact_base,
            exact_exponent=self.exact_exponent,
        )

    def concat(self, other: "PointSet") -> "PointSet":
        if other.d != self.d:
            raise ValueError("dimension mismatch")
        coords = np.vstack([self.coords, other.coords])
        return PointSet(coords, self.d)


def cells_of_points(points: PointSet, params: Params) -> np.ndarray:
    """Vectorised :func:`cell_of_point`; returns an ``(n, d)`` int64 array."""
    if points.d != params.d:
        raise ValueError(f"point set has dimension {points.d}, expected {params.d}")
    bm = params.bm
    if points.exact is not None:
        denom = points.exact_base**points.exact_exponent
        out = [[(int(n) * bm) // denom for n in row] for row in points.exact]
        return np.asarray(out, dtype=np.int64).reshape(len(points), params.d)
    if bm > 2**53:
        raise GridSizeError("float cell mapping needs b^m <= 2^53; supply exact coordinates")
    cells = np.floor(points.coords * float(bm)).astype(np.int64)
    np.minimum(cells, bm - 1, out=cells)
    return cells


def interval_of_cell(cell: Sequence[int], c: Composition, params: Params) -> ElementaryInterval:
    """The elementary interval of shape ``c`` containing resolution-``m`` ``cell``."""
    if len(c) != params.d or sum(c) != params.m or min(c) < 0:
        raise ValueError(f"{c} is not a composition of {params.m} into {params.d} parts")
    if len(cell) != params.d or not all(0 <= x < params.bm for x in cell):
        raise ValueError(f"cell {tuple(cell)} invalid at resolution {params.m}")
    b, m = params.b, params.m
    a = tuple(int(x) // b ** (m - cj) for x, cj in zip(cell, c))
    return ElementaryInterval(b, tuple(c), a)


def interval_keys(cells: np.ndarray, params: Params, comps: Sequence[Composition] | None = None) -> np.ndarray:
    """Mixed-radix interval label of each cell under each composition.

    Row ``i``, column ``k`` holds an integer in ``[0, b**m)`` identifying the
    elementary interval of shape ``comps[k]`` that contains cell ``i``.
    Ordering of labels follows lexicographic order of the offsets ``a``.
    """
    b, m = params.b, params.m
    if comps is None:
        comps = compositions(m, params.d)
    cells = np.asarray(cells, dtype=np.int64).reshape(-1, params.d)
    keys = np.zeros((cells.shape[0], len(comps)), dtype=np.int64)
    for k, c in enumerate(comps):
        key = np.zeros(cells.shape[0], dtype=np.int64)
        for j, cj in enumerate(c):
            key = key * b**cj + cells[:, j] // b ** (m - cj)
        keys[:, k] = key
    return keys


def all_cells(params: Params) -> np.ndarray:
    """Every resolution-``m`` cell in lexicographic order, as a ``(b**(md), d)`` array."""
    grids = np.indices((params.bm,) * params.d).reshape(params.d, -1).T
    return np.ascontiguousarray(grids, dtype=np.int64)
