"""Deterministic (0,m,d)-nets with exact b-adic coordinates, and seeded uniform samples."""

from __future__ import annotations

import numpy as np

from .grid import Params, PointSet

__all__ = [
    "UnsupportedBaseError",
    "NetExistenceError",
    "is_prime",
    "pascal_matrix",
    "generate_net",
    "sample_uniform",
    "rng_for",
]

SEED_MASK = (1 << 64) - 1


class UnsupportedBaseError(ValueError):
    """Only prime bases are constructed."""


class NetExistenceError(ValueError):
    """No (0,m,d)-net in base b exists for the requested parameters."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def pascal_matrix(b: int, m: int, power: int) -> np.ndarray:
    """``P**power mod b`` for the upper-triangular Pascal matrix ``P[r, s] = C(s, r)``."""
    out = np.zeros((m, m), dtype=np.int64)
    for s in range(m):
        binom = 1  # C(s, r) built up row by row
        for r in range(s + 1):
            if r > 0:
                binom = binom * (s - r + 1) // r
            out[r, s] = binom * pow(power, s - r, b) % b
    return out


def generate_net(b: int, m: int, d: int) -> PointSet:
    """A (0,m,d)-net in prime base ``b`` with ``d <= b + 1``.

    Point ``i`` (``0 <= i < b**m``) has ``d - 1`` Faure coordinates, the
    van der Corput radical inverse of ``i`` with its digit vector multiplied
    by successive powers of the Pascal matrix mod ``b``, followed by the
    coordinate ``i / b**m``. All coordinates are exact multiples of
    ``b**-m``.

    Raises
    ------
    UnsupportedBaseError
        ``b`` is not prime.
    NetExistenceError
        ``m >= 2`` and ``d >= b + 2``.
    """
    if not is_prime(b):
        raise UnsupportedBaseError(f"base {b} is not prime; only prime bases are constructed")
    if m < 0 or d < 1:
        raise ValueError("need m >= 0 and d >= 1")
    if m >= 2 and d >= b + 2:
        raise NetExistenceError(
            f"a (0,{m},{d})-net in base {b} cannot exist if m≥2 and d≥b+2"
        )
    params = Params(b, m, d)
    n = params.bm
    idx = np.arange(n, dtype=np.int64)
    nums = np.empty((n, d), dtype=np.int64)
    if d > b + 1:
        # m <= 1: the diagonal i/b in every coordinate is a net.
        nums[:] = idx[:, None]
        return PointSet.from_exact(nums.tolist(), b, m)
    digits = np.empty((n, m), dtype=np.int64)
    rest = idx.copy()
    for r in range(m):
        rest, digits[:, r] = np.divmod(rest, b)
    weights = b ** np.arange(m - 1, -1, -1, dtype=np.int64)
    for j in range(d - 1):
        gen = pascal_matrix(b, m, j)
        scrambled = (digits @ gen.T) % b
        nums[:, j] = scrambled @ weights
    nums[:, d - 1] = idx
    return PointSet.from_exact(nums.tolist(), b, m)


def rng_for(seed: int, stream: int = 0) -> np.random.Generator:
    """Counter-based generator keyed by ``(seed, stream)``.

    Philox4x64 with the 128-bit key ``[seed, stream]``; different streams
    are independent and need no coordination.
    """
    if seed < 0 or stream < 0:
        raise ValueError("seed and stream must be non-negative")
    key = np.array([seed & SEED_MASK, stream & SEED_MASK], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def sample_uniform(d: int | Params, seed: int, count: int, stream: int = 0) -> PointSet:
    """``count`` i.i.d. uniform points in ``[0, 1)^d`` determined by ``(seed, stream)``.

    Doubles carry 53 random mantissa bits, so 1.0 is never produced.
    """
    dim = d.d if isinstance(d, Params) else int(d)
    if count < 0:
        raise ValueError("count must be non-negative")
    coords = rng_for(seed, stream).random((count, dim))
    return PointSet(coords, dim)
