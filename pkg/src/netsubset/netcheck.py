"""Net verification and exact star discrepancy for small point sets."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import Params, PointSet, cells_of_points, compositions, interval_keys

__all__ = [
    "NetCheck",
    "DiscrepancySizeError",
    "is_net",
    "star_discrepancy",
    "star_discrepancy_1d",
    "MAX_DISCREPANCY_NODES",
]

# Nodes of the critical grid, prod_j (#distinct coords on axis j + 1).
MAX_DISCREPANCY_NODES = 2**25


class DiscrepancySizeError(ValueError):
    """The critical grid of the exact discrepancy algorithm is too large."""


@dataclass(frozen=True)
class NetCheck:
    """Outcome of :func:`is_net`.

    On failure either ``size`` is set (wrong number of points) or ``c``/``a``
    name the first elementary interval whose point count ``count`` is not 1.
    """

    is_net: bool
    size: int
    c: tuple[int, ...] | None = None
    a: tuple[int, ...] | None = None
    count: int | None = None

    def __bool__(self) -> bool:
        return self.is_net

    @property
    def reason(self) -> str:
        if self.is_net:
            return "ok"
        if self.c is None:
            return f"point set has {self.size} points"
        return f"interval c={self.c}, a={self.a} holds {self.count} points"

    def to_dict(self) -> dict:
        out: dict = {"is_net": self.is_net}
        if not self.is_net:
            out["witness"] = {
                "size": self.size,
                "c": None if self.c is None else list(self.c),
                "a": None if self.a is None else list(self.a),
                "count": self.count,
            }
        return out


def checking_order(m: int, d: int) -> list[tuple[int, ...]]:
    """Compositions in the order violations are searched for.

    Starts from ``(m, 0, ..., 0)``, i.e. descending lexicographic order, so the
    first-axis strata are examined first.
    """
    return compositions(m, d)[::-1]


def _decode(key: int, c: tuple[int, ...], b: int) -> tuple[int, ...]:
    a = []
    for cj in reversed(c):
        key, r = divmod(key, b**cj)
        a.append(r)
    return tuple(reversed(a))


def is_net(points: PointSet, params: Params) -> NetCheck:
    """Decide whether ``points`` is a (0,m,d)-net in base ``b``.

    Every elementary interval of volume ``b**-m`` must hold exactly one point.
    Coincident points are counted separately. Exact b-adic coordinates are
    used when present, so points on cell boundaries are classified exactly.
    """
    n = len(points)
    if points.d != params.d:
        raise ValueError(f"point set has dimension {points.d}, expected {params.d}")
    if n != params.bm:
        return NetCheck(False, n)
    cells = cells_of_points(points, params)
    order = checking_order(params.m, params.d)
    keys = interval_keys(cells, params, order)
    for k, c in enumerate(order):
        counts = np.bincount(keys[:, k], minlength=params.bm)
        bad = np.flatnonzero(counts != 1)
        if bad.size:
            key = int(bad[0])
            return NetCheck(False, n, c, _decode(key, c, params.b), int(counts[key]))
    return NetCheck(True, n)


def _shift_forward(x: np.ndarray) -> np.ndarray:
    # out[g] = x[g - 1] along every axis, zero where any index is 0
    out = np.zeros_like(x)
    if x.ndim == 0:
        return x.copy()
    out[(slice(1, None),) * x.ndim] = x[(slice(None, -1),) * x.ndim]
    return out


def _cumsum_all(x: np.ndarray) -> np.ndarray:
    for axis in range(x.ndim):
        x = np.cumsum(x, axis=axis)
    return x


def star_discrepancy(points: PointSet | np.ndarray) -> float:
    """Exact star discrepancy over anchored half-open boxes ``[0, y)``.

    The supremum is attained (possibly as a limit) at nodes of the grid
    spanned by the point coordinates together with 1 on each axis. At every
    node the deficit ``vol - open count / n`` and the excess
    ``closed count / n - vol`` are evaluated.

    Intended for ``n <= 256`` and ``d <= 3``; the grid has
    ``prod_j (u_j + 1)`` nodes with ``u_j`` distinct values on axis ``j`` and
    is capped at ``MAX_DISCREPANCY_NODES``.
    """
    x = points.coords if isinstance(points, PointSet) else np.asarray(points, dtype=np.float64)
    if x.ndim == 1:
        x = x[:, None]
    n, d = x.shape
    if n == 0:
        raise ValueError("star discrepancy needs at least one point")
    axes = []
    ranks = []
    for j in range(d):
        vals = np.unique(np.append(x[:, j], 1.0))
        axes.append(vals)
        ranks.append(np.searchsorted(vals, x[:, j]))
    nodes = int(np.prod([len(v) for v in axes], dtype=object))
    if nodes > MAX_DISCREPANCY_NODES:
        raise DiscrepancySizeError(
            f"critical grid has {nodes} nodes (limit {MAX_DISCREPANCY_NODES}); "
            "reduce the number of points or the dimension"
        )
    hist = np.zeros([len(v) for v in axes], dtype=np.int64)
    np.add.at(hist, tuple(ranks), 1)

    rest = axes[1:]
    rest_vol = np.ones(())
    for v in rest:
        rest_vol = np.multiply.outer(rest_vol, v)

    worst = 0.0
    running = np.zeros(hist.shape[1:], dtype=np.int64)
    for i, y0 in enumerate(axes[0]):
        open_count = _shift_forward(_cumsum_all(running))
        running = running + hist[i]
        closed_count = _cumsum_all(running)
        vol = y0 * rest_vol
        worst = max(
            worst,
            float(np.max(vol - open_count / n)),
            float(np.max(closed_count / n - vol)),
        )
    return min(max(worst, 0.0), 1.0)


def star_discrepancy_1d(x: np.ndarray) -> float:
    """Closed form ``1/(2n) + max_i |x_(i) - (2i - 1)/(2n)|`` for ``d = 1``."""
    xs = np.sort(np.asarray(x, dtype=np.float64).ravel())
    n = xs.size
    i = np.arange(1, n + 1)
    return float(1.0 / (2 * n) + np.max(np.abs(xs - (2 * i - 1) / (2 * n))))
