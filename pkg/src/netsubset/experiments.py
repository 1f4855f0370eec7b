"""
Seeded Monte Carlo estimates of the containment probability.

Trial ``i`` of a run with master seed ``s`` draws its ``N`` points from the
counter-based stream keyed by ``(s, i)`` and decides containment exactly with
:func:`netsubset.search.find_net_subset`. Records therefore do not depend on
how trials are scheduled or how many workers run them.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from statistics import NormalDist
from typing import Iterable, Sequence

import numpy as np

from .constructions import rng_for, sample_uniform
from .grid import Params
from .patterns import EnumerationSizeError
from .probability import (
    BruteForceSizeError,
    exact_containment_bruteforce,
    necessary_N,
    pz_sandwich,
    sufficient_N,
)
from .search import find_net_subset

__all__ = [
    "CSV_HEADER",
    "ExperimentRecord",
    "SweepResult",
    "wilson_interval",
    "run_trials",
    "estimate_containment",
    "estimate_occupancy",
    "sweep",
    "records_to_csv",
]

CSV_HEADER = ("b", "m", "d", "N", "trials", "successes", "p_hat", "ci_low", "ci_high",
              "pz_lower", "markov_upper", "exact", "seed")
Z95 = NormalDist().inv_cdf(0.975)


def wilson_interval(successes: int, trials: int, z: float = Z95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials <= 0:
        raise ValueError("trials must be positive")
    p = successes / trials
    denom = 1 + z * z / trials
    centre = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, min(centre - half, p)), min(1.0, max(centre + half, p))


@dataclass(frozen=True)
class ExperimentRecord:
    b: int
    m: int
    d: int
    N: int
    trials: int
    successes: int
    p_hat: float
    ci_low: float
    ci_high: float
    pz_lower: float
    markov_upper: float
    exact: float | None
    master_seed: int

    @property
    def params(self) -> Params:
        return Params(self.b, self.m, self.d, self.N)

    def to_dict(self) -> dict:
        return asdict(self)

    def csv_row(self) -> list[str]:
        def g(x: float | None) -> str:
            return "" if x is None else format(x, ".12g")

        return [str(self.b), str(self.m), str(self.d), str(self.N), str(self.trials),
                str(self.successes), g(self.p_hat), g(self.ci_low), g(self.ci_high),
                g(self.pz_lower), g(self.markov_upper), g(self.exact), str(self.master_seed)]


def _trial(params: Params, master_seed: int, index: int, strategy: str) -> bool:
    points = sample_uniform(params.d, master_seed, params.N, stream=index)
    return find_net_subset(points, params, strategy).found


def run_trials(params: Params, master_seed: int, indices: Iterable[int], strategy: str = "auto") -> dict[int, bool]:
    """Outcome of each listed trial, keyed by trial index."""
    return {int(i): _trial(params, master_seed, int(i), strategy) for i in indices}


def _chunk_worker(args: tuple[Params, int, int, int, str]) -> np.ndarray:
    params, master_seed, start, stop, strategy = args
    return np.fromiter((_trial(params, master_seed, i, strategy) for i in range(start, stop)),
                       dtype=bool, count=stop - start)


def _exact_or_none(params: Params) -> float | None:
    try:
        return exact_containment_bruteforce(params)
    except (BruteForceSizeError, EnumerationSizeError):
        return None


def estimate_containment(
    params: Params,
    trials: int,
    master_seed: int,
    *,
    strategy: str = "auto",
    workers: int = 1,
    with_exact: bool = True,
) -> ExperimentRecord:
    """Estimate ``P[C_{b,d}(N,m)]`` from ``trials`` independent seeded trials.

    Returns the success count, ``p_hat`` with its 95% Wilson interval, the
    analytic sandwich and, when the family is small, the exact probability.
    Identical arguments give identical records for any ``workers``.
    """
    if params.N is None:
        raise ValueError("params must carry N")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if workers <= 1 or trials < 2 * workers:
        outcomes = _chunk_worker((params, master_seed, 0, trials, strategy))
    else:
        bounds = np.linspace(0, trials, workers + 1).astype(int)
        jobs = [(params, master_seed, int(lo), int(hi), strategy) for lo, hi in zip(bounds[:-1], bounds[1:])]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = np.concatenate(list(pool.map(_chunk_worker, jobs)))
    successes = int(outcomes.sum())
    lo, hi = wilson_interval(successes, trials)
    report = pz_sandwich(params)
    return ExperimentRecord(
        b=params.b, m=params.m, d=params.d, N=params.N,
        trials=trials, successes=successes, p_hat=successes / trials,
        ci_low=lo, ci_high=hi,
        pz_lower=report.pz_lower, markov_upper=report.markov_upper,
        exact=_exact_or_none(params) if with_exact else None,
        master_seed=master_seed,
    )


def estimate_occupancy(K: int, k: int, N: int, trials: int, seed: int) -> float:
    """Monte Carlo frequency with which ``N`` uniform draws from ``K`` cells hit cells ``0..k-1``."""
    if not 1 <= k <= K:
        raise ValueError("need 1 <= k <= K")
    draws = rng_for(seed).integers(0, K, size=(trials, N))
    hit = np.zeros((trials, K), dtype=bool)
    np.put_along_axis(hit, draws, True, axis=1)
    return float(hit[:, :k].all(axis=1).mean())


@dataclass(frozen=True)
class SweepResult:
    records: list[ExperimentRecord]
    sufficient_N: int
    necessary_N: float
    nearest_sufficient: int | None
    nearest_necessary: int | None

    def to_csv(self) -> str:
        return records_to_csv(self.records)

    def to_dict(self) -> dict:
        return {
            "records": [r.to_dict() for r in self.records],
            "sufficient_N": self.sufficient_N,
            "necessary_N": self.necessary_N,
            "nearest_sufficient_row": self.nearest_sufficient,
            "nearest_necessary_row": self.nearest_necessary,
        }


def records_to_csv(records: Sequence[ExperimentRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for rec in records:
        writer.writerow(rec.csv_row())
    return buf.getvalue()


def _nearest(values: Sequence[int], target: float) -> int | None:
    if not values:
        return None
    return min(range(len(values)), key=lambda i: (abs(values[i] - target), i))


def sweep(
    params: Params,
    N_list: Sequence[int],
    trials: int,
    master_seed: int,
    *,
    eps: float = 0.1,
    strategy: str = "auto",
    workers: int = 1,
) -> SweepResult:
    """One :func:`estimate_containment` record per ``N``, annotated with the thresholds.

    The rows closest to ``sufficient_N(b, d, m, eps)`` and ``necessary_N(b, d, m)``
    are reported by index.
    """
    Ns = [int(n) for n in N_list]
    if any(b <= a for a, b in zip(Ns, Ns[1:])):
        raise ValueError("N_list must be strictly increasing")
    base = Params(params.b, params.m, params.d)
    records = [
        estimate_containment(base.with_N(n), trials, master_seed, strategy=strategy, workers=workers)
        for n in Ns
    ]
    suff = sufficient_N(base.b, base.d, base.m, eps)
    nec = necessary_N(base.b, base.d, base.m)
    return SweepResult(records, suff, nec, _nearest(Ns, suff), _nearest(Ns, nec))
