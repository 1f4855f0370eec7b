import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from conftest import brute_force_containment
from netsubset.grid import Params
from netsubset.patterns import enumerate_patterns
from netsubset.probability import (
    BruteForceSizeError,
    exact_containment_bruteforce,
    factorial_ratio_bound,
    log_occupancy,
    na_bounds_p,
    necessary_N,
    necessary_N_closed_form,
    occupancy_exact,
    occupancy_fraction,
    pattern_count,
    pz_sandwich,
    sufficient_N,
)


def occupancy_by_enumeration(K, k, N):
    hits = sum(1 for a in itertools.product(range(K), repeat=N) if set(range(k)) <= set(a))
    return Fraction(hits, K**N)


def test_occupancy_examples():
    assert occupancy_exact(4, 2, 4) == pytest.approx(0.4296875, abs=1e-12)
    assert occupancy_exact(2, 2, 2) == pytest.approx(0.5, abs=1e-12)
    assert occupancy_exact(9, 5, 4) == 0.0


@pytest.mark.parametrize("K,k,N", [(4, 2, 4), (2, 2, 2), (4, 4, 6), (5, 3, 5), (8, 2, 4), (3, 1, 7)])
def test_occupancy_matches_enumeration(K, k, N):
    exact = occupancy_by_enumeration(K, k, N)
    assert occupancy_fraction(K, k, N) == exact
    assert occupancy_exact(K, k, N) == pytest.approx(float(exact), abs=1e-12)


def test_occupancy_cancellation_fallback():
    # 64 targets among 4096 cells with 70 points: the alternating sum cancels badly.
    exact = occupancy_fraction(4096, 64, 70)
    assert occupancy_exact(4096, 64, 70) == pytest.approx(float(exact), rel=1e-12)
    assert log_occupancy(4096, 64, 70) == pytest.approx(
        math.log(exact.numerator) - math.log(exact.denominator), rel=1e-12
    )


def test_occupancy_large_k_chain_path():
    # k > 64 falls back to the Markov chain; compare against exact rationals.
    K, k, N = 200, 80, 300
    exact = float(occupancy_fraction(K, k, N))
    assert occupancy_exact(K, k, N) == pytest.approx(exact, rel=1e-9)


@pytest.mark.parametrize("K", [4, 16, 64])
def test_occupancy_monotone(K):
    ks = range(1, min(16, K) + 1)
    Ns = range(0, 257, 4)
    table = np.array([[occupancy_exact(K, k, N) for N in Ns] for k in ks])
    assert np.all(np.diff(table, axis=0) <= 1e-15)
    assert np.all(np.diff(table, axis=1) >= -1e-15)
    assert np.all((table >= 0) & (table <= 1))


@pytest.mark.parametrize("K", [16, 64])
def test_negative_association_square(K):
    for k in range(1, K // 2 + 1):
        for N in range(0, 257, 8):
            assert occupancy_exact(K, k, N) ** 2 >= occupancy_exact(K, 2 * k, N) - 1e-15


def test_na_bounds_example():
    lo, hi = na_bounds_p(Params(2, 1, 2, 4))
    assert lo == pytest.approx(1 - 2 * math.exp(-1), abs=1e-12)
    assert hi == pytest.approx((1 - 0.75**4) ** 2, abs=1e-12)
    assert na_bounds_p(Params(2, 1, 2, 0)) == (0.0, 0.0)


def test_na_bounds_limit_and_bracketing():
    prev = (0.0, 0.0)
    for N in [1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024]:
        lo, hi = na_bounds_p(Params(2, 1, 2, N))
        assert lo >= prev[0] and hi >= prev[1]
        prev = (lo, hi)
    assert prev[0] >= 1 - 1e-12 and prev[1] == 1.0
    for b, m, d in [(2, 1, 2), (2, 2, 2), (3, 1, 2), (2, 1, 3), (2, 2, 3)]:
        for N in range(0, 200, 3):
            params = Params(b, m, d, N)
            lo, hi = na_bounds_p(params)
            p = occupancy_exact(params.cells, params.bm, N)
            assert lo - 1e-12 <= p <= hi + 1e-12


def test_pz_sandwich_example():
    r = pz_sandwich(Params(2, 1, 2, 4))
    # p = 55/128, factor 1/2, bound 1 / (1 + (73/55)/2) = 110/183
    assert r.pz_lower == pytest.approx(110 / 183, abs=1e-12)
    assert r.pz_lower == pytest.approx(0.601093, abs=1e-6)
    assert r.markov_upper == pytest.approx(0.859375, abs=1e-12)
    assert r.A_mode == "exact-d2" and r.A_exact == 2


def test_pz_d1_equality():
    r = pz_sandwich(Params(2, 1, 1, 2))
    assert r.pz_lower == r.markov_upper == 0.5
    assert exact_containment_bruteforce(Params(2, 1, 1, 2)) == 0.5


def test_pz_modes_and_zero_probability():
    assert pattern_count(Params(2, 2, 3))[1] == "exact-enumerated"
    assert pattern_count(Params(2, 5, 3))[1] == "upper-bound"
    assert pattern_count(Params(2, 2, 4))[1] == "nonexistent"
    r = pz_sandwich(Params(2, 2, 2, 3))
    assert (r.pz_lower, r.markov_upper) == (0.0, 0.0)


def test_bruteforce_examples():
    assert exact_containment_bruteforce(Params(2, 1, 2, 4)) == pytest.approx(0.765625, abs=1e-12)
    assert exact_containment_bruteforce(Params(2, 1, 2, 1)) == 0.0


@pytest.mark.parametrize(
    "b,m,d,N", [(2, 1, 2, 2), (2, 1, 2, 4), (2, 1, 2, 6), (2, 1, 3, 3), (2, 1, 3, 5), (3, 1, 2, 4), (2, 2, 2, 5)]
)
def test_bruteforce_matches_assignment_enumeration(b, m, d, N):
    params = Params(b, m, d, N)
    oracle = brute_force_containment(params, enumerate_patterns(params))
    assert exact_containment_bruteforce(params) == pytest.approx(oracle, abs=1e-12)


def test_bruteforce_size_guard():
    with pytest.raises(BruteForceSizeError):
        exact_containment_bruteforce(Params(2, 2, 3, 10))  # A = 128


@pytest.mark.parametrize("b,m,d", [(2, 1, 2), (2, 1, 3), (3, 1, 2), (2, 2, 2), (2, 1, 4)])
def test_sandwich_contains_exact(b, m, d):
    for N in range(1, 49):
        r = pz_sandwich(Params(b, m, d, N), with_exact=True)
        assert r.pz_lower <= r.exact + 1e-12
        assert r.exact <= r.markov_upper + 1e-12


def test_sandwich_is_conservative_with_upper_bound_A():
    # Replacing the enumerated A by the projection bound can only widen the sandwich.
    from netsubset import probability as prob
    params = Params(3, 1, 3, 12)
    tight = pz_sandwich(params)
    log_upper = math.log(6**2)
    factor = 1 / 3 - 2 / math.exp(log_upper)
    p = tight.p_target
    loose_lower = 1 / (1 + (1 / p - 1) * factor)
    assert tight.A_exact == 36 and math.exp(log_upper) == 36  # bound is tight here
    assert loose_lower == pytest.approx(tight.pz_lower)
    assert prob.count_patterns_upper(Params(2, 2, 3)) >= math.log(128)


def test_sufficient_N_examples():
    assert sufficient_N(2, 2, 2, 0.1) == 25
    assert sufficient_N(2, 1, 1, 0.0) == 2
    values = [sufficient_N(3, 2, 2, e) for e in np.linspace(0, 2, 21)]
    assert values == sorted(values)


def test_necessary_N_examples():
    assert necessary_N(2, 2, 2) == pytest.approx(8)
    assert necessary_N_closed_form(2, 2, 2) == 8
    assert necessary_N(2, 3, 1) == pytest.approx(4)
    assert necessary_N(3, 2, 1) == pytest.approx(9 / 6 ** (1 / 3), rel=1e-12)
    for b in (3, 5, 7):
        for m in (1, 2, 3):
            for d in (2, 3, 4):
                assert necessary_N(b, d, m) >= necessary_N_closed_form(b, d, m)


def test_factorial_ratio_examples():
    lhs, rhs = factorial_ratio_bound(3)
    assert lhs == pytest.approx(3 / 6 ** (1 / 3), rel=1e-12)
    assert rhs == pytest.approx(math.exp((1 - 2 * math.log(1.5)) / 3), rel=1e-12)
    assert lhs == pytest.approx(1.65096, abs=1e-5) and rhs == pytest.approx(1.06505, abs=1e-5)
    for b in (4, 64):
        lhs, rhs = factorial_ratio_bound(b)
        assert lhs >= rhs
