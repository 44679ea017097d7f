import math
from fractions import Fraction

import pytest

from gowerslab.primes import (compare_asymptotic, count_prime_5aps, count_prime_5aps_bruteforce,
                              hl_gamma, sieve)


def trial_prime(n):
    return n >= 2 and all(n % r for r in range(2, math.isqrt(n) + 1))


def test_sieve_examples():
    assert sieve(10).primes.tolist() == [2, 3, 5, 7]
    assert len(sieve(100)) == 25
    assert len(sieve(10 ** 5)) == sum(1 for m in range(10 ** 5 + 1) if trial_prime(m)) == 9592


def test_gamma_exact_values():
    g5 = hl_gamma(5)
    assert g5.exact == Fraction(3375, 4096) and float(g5) == 0.823974609375
    assert hl_gamma(7).exact == Fraction(3375, 4096) * Fraction(1029, 1296)


def test_gamma_decreasing_and_bracketed_by_tail():
    Ps = [5, 7, 11, 100, 1000, 10 ** 4, 10 ** 5]
    vals = [hl_gamma(P) for P in Ps]
    for a, b in zip(vals, vals[1:]):
        assert b.value < a.value
        assert a.value - a.tail_bound <= b.value


def test_gamma_reference_digits():
    # oracle: product accumulated in plain floats with math.fsum of logs
    logs = [math.log(p ** 3 * (p - 4) / (p - 1) ** 4) for p in sieve(10 ** 5).primes.tolist() if p >= 5]
    ref = 27 / 16 * math.exp(math.fsum(logs))
    assert float(hl_gamma(10 ** 5)) == pytest.approx(ref, rel=1e-12)


def test_small_counts():
    assert count_prime_5aps(28) == 0
    assert count_prime_5aps(29) == 1
    ref = [count_prime_5aps_bruteforce(N) for N in (28, 29, 500)]
    assert ref[:2] == [0, 1]
    assert count_prime_5aps(500) == ref[2]


def test_count_against_independent_loop():
    N = 3000
    ps = [p for p in range(2, N + 1) if trial_prime(p)]
    pset = set(ps)
    ref = sum(1 for p in ps for d in range(1, (N - p) // 4 + 1) if all(p + j * d in pset for j in range(1, 5)))
    assert count_prime_5aps(N) == ref == count_prime_5aps_bruteforce(N)


def test_count_monotone_and_thread_independent():
    prev = 0
    for N in range(100, 2001, 100):
        c = count_prime_5aps(N)
        assert c >= prev
        prev = c
    assert count_prime_5aps(20000, threads=1) == count_prime_5aps(20000, threads=4)


def test_compare_asymptotic_positive():
    res = compare_asymptotic(10 ** 4, gamma_P=10 ** 4)
    assert res.prediction > 0 and res.ratio == res.count / res.prediction
    with pytest.raises(ValueError):
        compare_asymptotic(999)
