"""
Occupancy probabilities and the containment bounds for random point sets.

``p_N(k)`` is the probability that ``k`` fixed cells out of ``K`` equally
likely cells all receive at least one of ``N`` uniform points. With ``A``
admissible patterns, the number ``X`` of patterns whose cells are all
occupied satisfies

    (E X)^2 / E[X^2] <= P(X > 0) <= E X = A * p_N(b^m),

and the second-moment side reduces to

    1 / (1 + (1/p - 1) * (b^{-m(d-2)} - (b^m - 1)/A)),   p = p_N(b^m).

Quantities involving ``A`` are kept in natural-log form because ``A``
overflows every fixed-width type for moderate ``m``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .grid import Params
from .patterns import (
    EnumerationSizeError,
    PatternCount,
    count_patterns_exact_d2,
    count_patterns_upper,
    family_masks,
    pattern_family,
    within_enumeration_guard,
)

__all__ = [
    "BruteForceSizeError",
    "SandwichReport",
    "occupancy_exact",
    "occupancy_fraction",
    "log_occupancy",
    "na_bounds_p",
    "pattern_count",
    "pz_sandwich",
    "exact_containment_bruteforce",
    "sufficient_N",
    "necessary_N",
    "necessary_N_closed_form",
    "factorial_ratio_bound",
]

CANCELLATION_TOL = 1e-8
MAX_RATIONAL_K = 64
MAX_BRUTEFORCE_A = 20
# Enumerate a d >= 3 family for the sandwich only when the projection bound says it is small.
MAX_ENUMERATED_A = 10**5
_EPS = np.finfo(float).eps


class BruteForceSizeError(ValueError):
    """Inclusion-exclusion over the pattern family would be too large."""


def _check_occupancy_args(K: int, k: int, N: int) -> None:
    if K < 1 or not 0 <= k <= K:
        raise ValueError(f"need 0 <= k <= K and K >= 1, got K={K}, k={k}")
    if N < 0:
        raise ValueError(f"N must be non-negative, got {N}")


@lru_cache(maxsize=65536)
def occupancy_fraction(K: int, k: int, N: int) -> Fraction:
    """Exact rational ``p_N(k) = sum_i (-1)^i C(k, i) (K - i)^N / K^N``."""
    _check_occupancy_args(K, k, N)
    if N < k:
        return Fraction(0)
    num = 0
    for i in range(k + 1):
        term = math.comb(k, i) * (K - i) ** N
        num += -term if i % 2 else term
    return Fraction(num, K**N)


def _occupancy_chain(K: int, k: int, N: int) -> float:
    # Distribution of the number of hit target cells; all terms positive.
    dist = np.zeros(k + 1)
    dist[0] = 1.0
    advance = (k - np.arange(k + 1)) / K
    for _ in range(N):
        moved = dist * advance
        dist = dist - moved
        dist[1:] += moved[:-1]
    return float(dist[k])


@lru_cache(maxsize=65536)
def _occupancy(K: int, k: int, N: int) -> tuple[float, float]:
    """``(p, log p)`` for :func:`occupancy_exact`."""
    _check_occupancy_args(K, k, N)
    if k == 0:
        return 1.0, 0.0
    if N < k:
        return 0.0, -math.inf
    log_binom = [math.lgamma(k + 1) - math.lgamma(i + 1) - math.lgamma(k - i + 1) for i in range(k + 1)]
    terms = []
    for i in range(k + 1):
        if i == K:
            continue  # (1 - K/K)^N = 0 for N >= 1
        if k <= 1000:
            mag = math.comb(k, i) * (1.0 - i / K) ** N
        else:
            mag = math.exp(log_binom[i] + N * math.log1p(-i / K))
        terms.append(-mag if i % 2 else mag)
    total = math.fsum(terms)
    spread = math.fsum(abs(t) for t in terms)
    if total > 0 and spread * 4 * _EPS <= CANCELLATION_TOL * total:
        p = min(total, 1.0)
        return p, math.log(p)
    if k <= MAX_RATIONAL_K:
        frac = occupancy_fraction(K, k, N)
        p = min(float(frac), 1.0)
        log_p = math.log(frac.numerator) - math.log(frac.denominator) if frac > 0 else -math.inf
        return p, min(log_p, 0.0)
    p = min(max(_occupancy_chain(K, k, N), 0.0), 1.0)
    return p, (math.log(p) if p > 0 else -math.inf)


def occupancy_exact(K: int, k: int, N: int) -> float:
    """Probability that ``k`` given cells of ``K`` are all hit by ``N`` uniform points.

    Inclusion-exclusion ``sum_{i=0}^{k} (-1)^i C(k, i) (1 - i/K)^N`` with
    compensated summation. When the alternating sum loses more than ``1e-8``
    relative accuracy the value is recomputed exactly in rationals
    (``k <= 64``) or, beyond that, by a positive-term Markov chain on the
    number of occupied target cells.

    >>> occupancy_exact(4, 2, 4)
    0.4296875
    """
    return _occupancy(int(K), int(k), int(N))[0]


def log_occupancy(K: int, k: int, N: int) -> float:
    """Natural log of :func:`occupancy_exact`, accurate below float underflow for ``k <= 64``."""
    return _occupancy(int(K), int(k), int(N))[1]


def na_bounds_p(params: Params) -> tuple[float, float]:
    """Union-bound lower and negative-association upper bounds on ``p_N(b^m)``.

    ``lower = max(0, 1 - b^m exp(-N / b^(md)))`` and
    ``upper = min((1 - (1 - b^-(md))^N)^(b^m), (N b^-(md))^(b^m))``, clamped to ``[0, 1]``.
    """
    N = _require_N(params)
    K, k = params.cells, params.bm
    lower = max(0.0, 1.0 - k * math.exp(-N / K))
    if N == 0:
        return lower, 0.0
    single = -math.expm1(N * math.log1p(-1.0 / K))
    upper_product = math.exp(k * math.log(single))
    upper_linear = math.exp(min(k * math.log(N / K), 0.0)) if N < K else 1.0
    upper = min(upper_product, upper_linear, 1.0)
    return min(lower, 1.0), max(upper, 0.0)


def _require_N(params: Params) -> int:
    if params.N is None:
        raise ValueError("these parameters need a sample count N")
    return params.N


def _nonexistent(params: Params) -> bool:
    return params.m >= 2 and params.d >= params.b + 2


def pattern_count(params: Params) -> tuple[PatternCount, str]:
    """The pattern count ``A`` used by the bounds, and how it was obtained.

    Modes: ``exact-d1`` (``A = 1``), ``exact-d2`` (closed form),
    ``exact-enumerated`` (brute force), ``upper-bound`` (projection bound;
    keeps both sandwich sides valid but conservative) and ``nonexistent``
    (``m >= 2``, ``d >= b + 2``: ``A = 0``).
    """
    if params.d == 1:
        return PatternCount(0.0, 1), "exact-d1"
    if _nonexistent(params):
        return PatternCount(-math.inf, 0), "nonexistent"
    if params.d == 2:
        return count_patterns_exact_d2(params.b, params.m), "exact-d2"
    base = Params(params.b, params.m, params.d)
    log_upper = count_patterns_upper(base)
    if within_enumeration_guard(base) and log_upper <= math.log(MAX_ENUMERATED_A):
        A = len(pattern_family(base))
        return PatternCount(math.log(A) if A else -math.inf, A), "exact-enumerated"
    return PatternCount(log_upper, None), "upper-bound"


@dataclass(frozen=True)
class SandwichReport:
    """Second-moment lower bound and first-moment upper bound on ``P[C_{b,d}(N,m)]``."""

    params: Params
    p_target: float
    log_p_target: float
    log_A: float
    A_exact: int | None
    A_mode: str
    log_mean_count: float
    pz_factor: float
    pz_factor_negative: bool
    pz_lower: float
    markov_upper: float
    exact: float | None = None

    def to_dict(self) -> dict:
        def log10(x: float) -> dict:
            return {"log10": x / math.log(10) if math.isfinite(x) else None}

        return {
            "b": self.params.b,
            "m": self.params.m,
            "d": self.params.d,
            "N": self.params.N,
            "p_target": self.p_target,
            "log_p_target": log10(self.log_p_target),
            "A": log10(self.log_A),
            "A_exact": None if self.A_exact is None else str(self.A_exact),
            "A_mode": self.A_mode,
            "mean_count": log10(self.log_mean_count),
            "pz_factor": self.pz_factor,
            "pz_factor_negative": self.pz_factor_negative,
            "pz_lower": self.pz_lower,
            "markov_upper": self.markov_upper,
            "exact": self.exact,
        }


def pz_sandwich(params: Params, with_exact: bool = False) -> SandwichReport:
    """Paley-Zygmund lower bound and Markov upper bound for containment.

    ``d = 1`` has a single pattern and both sides equal ``p_N(b^m)``.
    A negative second-moment factor reports ``pz_lower = 0`` with
    ``pz_factor_negative`` set. ``with_exact`` attaches the inclusion-exclusion
    value when the family is small enough.
    """
    N = _require_N(params)
    K, k = params.cells, params.bm
    p = occupancy_exact(K, k, N)
    log_p = log_occupancy(K, k, N)
    count, mode = pattern_count(params)
    log_A = count.log
    exact = None
    if with_exact:
        try:
            exact = exact_containment_bruteforce(params)
        except (BruteForceSizeError, EnumerationSizeError):
            exact = None

    def report(factor: float, negative: bool, lower: float, upper: float) -> SandwichReport:
        return SandwichReport(
            params=params,
            p_target=p,
            log_p_target=log_p,
            log_A=log_A,
            A_exact=count.exact,
            A_mode=mode,
            log_mean_count=log_A + log_p if math.isfinite(log_p) and math.isfinite(log_A) else -math.inf,
            pz_factor=factor,
            pz_factor_negative=negative,
            pz_lower=lower,
            markov_upper=upper,
            exact=exact,
        )

    if params.d == 1:
        return report(1.0, False, p, p)
    factor = float(params.b) ** (-params.m * (params.d - 2))
    if math.isfinite(log_A):
        factor -= (k - 1) * math.exp(-log_A)
    if not math.isfinite(log_p) or not math.isfinite(log_A):
        return report(factor, factor < 0, 0.0, 0.0)
    if count.exact is not None and count.exact < 2**53:
        upper = min(1.0, count.exact * p)
    else:
        upper = math.exp(min(log_A + log_p, 0.0))
    if factor < 0:
        return report(factor, True, 0.0, upper)
    if factor == 0 or p >= 1.0:
        return report(factor, False, 1.0, upper)
    # 1 / (1 + t) with t = (1/p - 1) * factor, evaluated through log t.
    log_t = math.log1p(-p) - log_p + math.log(factor)
    lower = math.exp(-log_t) / (1.0 + math.exp(-log_t)) if log_t > 0 else 1.0 / (1.0 + math.exp(log_t))
    return report(factor, False, lower, upper)


def _union_size_coefficients(masks: list[int], K: int) -> dict[int, int]:
    """``coef[u] = sum over non-empty S with |union S| = u of (-1)^(|S|+1)``."""
    A = len(masks)
    words = (K + 63) // 64
    pat = np.zeros((A, words), dtype=np.uint64)
    for i, mask in enumerate(masks):
        for w in range(words):
            pat[i, w] = (mask >> (64 * w)) & 0xFFFFFFFFFFFFFFFF
    unions = np.zeros((1 << A, words), dtype=np.uint64)
    parity = np.zeros(1 << A, dtype=np.int8)
    for i in range(A):
        lo, hi = 1 << i, 1 << (i + 1)
        unions[lo:hi] = unions[:lo] | pat[i]
        parity[lo:hi] = 1 - parity[:lo]
    sizes = np.bitwise_count(unions).sum(axis=1, dtype=np.int64)[1:]
    signs = np.where(parity[1:] == 1, 1, -1)
    coef = np.bincount(sizes, weights=signs, minlength=K + 1)
    return {u: int(round(c)) for u, c in enumerate(coef.tolist()) if round(c) != 0}


def exact_containment_bruteforce(params: Params, max_rational_N: int = 4096) -> float:
    """``P[C_{b,d}(N,m)]`` by inclusion-exclusion over the enumerated patterns.

    ``sum_{S} (-1)^(|S|+1) p_N(|union of the cells of S|)`` over non-empty
    subsets ``S`` of the family, accumulated per union size. Occupancy values
    are exact rationals for ``N <= max_rational_N``. Limited to ``A <= 20``.
    """
    N = _require_N(params)
    base = Params(params.b, params.m, params.d)
    if _nonexistent(base):
        return 0.0
    if base.d == 1:
        return occupancy_exact(base.bm, base.bm, N)
    count, _ = pattern_count(base)
    if count.exact is None or count.exact > MAX_BRUTEFORCE_A or not within_enumeration_guard(base):
        raise BruteForceSizeError(
            f"inclusion-exclusion needs an enumerable family with A <= {MAX_BRUTEFORCE_A}"
        )
    masks = list(family_masks(base))
    if not masks:
        return 0.0
    K = base.cells
    coef = _union_size_coefficients(masks, K)
    if N <= max_rational_N:
        total = sum((c * occupancy_fraction(K, u, N) for u, c in coef.items()), Fraction(0))
        return min(max(float(total), 0.0), 1.0)
    total = math.fsum(c * occupancy_exact(K, u, N) for u, c in coef.items())
    return min(max(total, 0.0), 1.0)


def sufficient_N(b: int, d: int, m: int, eps: float) -> int:
    """``ceil((1 + eps) * b^(md) * m * ln b)``.

    ``eps = 0`` is accepted for exploration; the limit statement needs ``eps > 0``.
    """
    if eps < 0:
        raise ValueError("eps must be non-negative")
    cells = Params(b, m, d).cells
    return math.ceil((1.0 + eps) * cells * m * math.log(b))


def necessary_N_closed_form(b: int, d: int, m: int) -> float:
    """``2^(m + m(d-1)/2)`` for ``b = 2``; ``b^m exp((b - 2 - 2 ln(b/2)) / b)^(m(d-1))`` otherwise."""
    if b == 2:
        return 2.0 ** (m + m * (d - 1) / 2)
    return b**m * math.exp(m * (d - 1) * (b - 2 - 2 * (math.log(b) - math.log(2))) / b)


def necessary_N(b: int, d: int, m: int) -> float:
    """``b^(md) / (b!)^(m(d-1)/b)``, checked against its closed-form minorant."""
    Params(b, m, d)
    log_value = m * d * math.log(b) - m * (d - 1) / b * math.lgamma(b + 1)
    value = math.exp(log_value)
    closed = necessary_N_closed_form(b, d, m)
    if b == 2:
        if not math.isclose(value, closed, rel_tol=1e-12):
            raise ArithmeticError(f"b=2 closed form mismatch: {value} != {closed}")
    elif value < closed * (1 - 1e-12):
        raise ArithmeticError(f"necessary threshold {value} below its minorant {closed}")
    return value


def factorial_ratio_bound(b: int) -> tuple[float, float]:
    """``(b / (b!)^(1/b), exp((b - 2 - 2(ln b - ln 2)) / b))``; the first dominates."""
    if b < 3:
        raise ValueError("the factorial ratio bound is stated for b >= 3")
    lhs = math.exp(math.log(b) - math.lgamma(b + 1) / b)
    rhs = math.exp((b - 2 - 2 * (math.log(b) - math.log(2))) / b)
    return lhs, rhs
