import itertools

import numpy as np
import pytest
from fractions import Fraction
from hypothesis import given, settings, strategies as st

from gowerslab.gowers import (GowersResult, HypothesisError, ShiftSet, count_correlated_quadruples,
                              gowers_inner_product, gowers_norm_group, gowers_norm_interval)
from gowerslab.seqfun import Cyclic, Interval, PurePoly, SeqFn, constant, from_phase, random_bounded


def brute_power(v, k):
    """E_{x,h} prod_omega C^|omega| v(x + omega.h) by nested loops."""
    M = len(v)
    total = 0j
    for hs in itertools.product(range(M), repeat=k):
        for x in range(M):
            p = 1 + 0j
            for w in itertools.product((0, 1), repeat=k):
                z = v[(x + sum(a * b for a, b in zip(w, hs))) % M]
                p *= np.conj(z) if sum(w) % 2 else z
            total += p
    return total / M ** (k + 1)


def test_constant_and_character():
    assert gowers_norm_group(constant(Cyclic(16)), 2).norm_value == pytest.approx(1.0, abs=1e-12)
    f = from_phase(PurePoly((0, Fraction(3, 16))), Cyclic(16))
    assert gowers_norm_group(f, 2).norm_value == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("k,M", [(1, 9), (2, 9), (3, 7)])
def test_methods_match_loop_oracle(k, M):
    f = random_bounded(Cyclic(M), np.random.default_rng(k))
    ref = brute_power(f.values, k)
    assert abs(ref.imag) < 1e-10
    for method in ("direct", "recursion"):
        r = gowers_norm_group(f, k, method=method)
        assert r.power == pytest.approx(ref.real, abs=1e-12)


def test_recursion_vs_direct_u3_z32():
    f = random_bounded(Cyclic(32), np.random.default_rng(11))
    a = gowers_norm_group(f, 3, "recursion").norm_value
    b = gowers_norm_group(f, 3, "direct").norm_value
    assert abs(a - b) < 1e-9


def test_u2_fft_identity():
    f = random_bounded(Cyclic(1024), np.random.default_rng(12))
    fh = np.fft.fft(f.values) / 1024
    assert gowers_norm_group(f, 2, "fft").power == pytest.approx(np.sum(np.abs(fh) ** 4), abs=1e-12)
    assert abs(gowers_norm_group(f, 2, "recursion").power - np.sum(np.abs(fh) ** 4)) < 1e-9


def test_recursion_identity_k2_k3():
    from gowerslab.seqfun import mult_derivative

    f = random_bounded(Cyclic(64), np.random.default_rng(13))
    for k in (2, 3):
        lhs = gowers_norm_group(f, k + 1).power
        rhs = np.mean([gowers_norm_group(mult_derivative(f, h), k).power for h in range(64)])
        assert abs(lhs - rhs) < 1e-9


def test_rejects_bad_k():
    f = constant(Cyclic(8))
    for k in (0, 5, 7):
        with pytest.raises(ValueError):
            gowers_norm_group(f, k)


def test_interval_normalization():
    for k in (1, 2, 3, 4):
        assert gowers_norm_interval(constant(Interval(16)), k).norm_value == pytest.approx(1.0, abs=1e-12)
    f = from_phase(PurePoly((0, 0, 0.1234567)), Interval(64))
    assert gowers_norm_interval(f, 3).norm_value == pytest.approx(1.0, abs=1e-9)


def test_interval_independent_of_modulus():
    f = random_bounded(Interval(32), np.random.default_rng(14))
    a = gowers_norm_interval(f, 4, M_tilde=16 * 32).norm_value
    b = gowers_norm_interval(f, 4, M_tilde=16 * 32 + 5).norm_value
    c = gowers_norm_interval(f, 4).norm_value
    assert abs(a - b) < 1e-9 and abs(a - c) < 1e-9


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_monotone_in_k(seed):
    f = random_bounded(Cyclic(24), np.random.default_rng(seed))
    u = [gowers_norm_group(f, k).norm_value for k in (2, 3, 4)]
    assert u[0] <= u[1] + 1e-12 and u[1] <= u[2] + 1e-12


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.integers(0, 63))
def test_modulation_invariance(seed, j):
    f = random_bounded(Cyclic(64), np.random.default_rng(seed))
    chi = from_phase(PurePoly((0, Fraction(j, 64))), Cyclic(64))
    assert abs(gowers_norm_group(f * chi, 2).norm_value - gowers_norm_group(f, 2).norm_value) < 1e-9


def test_inner_product_examples():
    one = constant(Cyclic(8))
    assert gowers_inner_product([one] * 4, 2) == pytest.approx(1.0)
    f = random_bounded(Cyclic(12), np.random.default_rng(15))
    assert abs(gowers_inner_product([f] * 4, 2) - gowers_norm_group(f, 2).power) < 1e-9
    zero = SeqFn(Cyclic(8), np.zeros(8))
    assert gowers_inner_product([one, one, zero, one], 2) == 0
    g = random_bounded(Cyclic(6), np.random.default_rng(16))
    assert abs(gowers_inner_product([g] * 8, 3) - brute_power(g.values, 3)) < 1e-12


def test_inner_product_domain_mismatch():
    with pytest.raises(ValueError):
        gowers_inner_product([constant(Cyclic(8))] * 3 + [constant(Cyclic(9))], 2)


def _quadratic(N, a=0.1234, b=0.377):
    f = from_phase(PurePoly((0, b, a)), Interval(2 * N))
    v = np.concatenate([[0], f.values])
    n = np.arange(1, N + 1)
    return f, {h: v[n + h] * np.conj(v[n]) for h in range(1, N + 1)}


def test_quadruples_empty_and_single():
    f, chi = _quadratic(16)
    assert count_correlated_quadruples(f, ShiftSet((), 16), chi, 0.5).count == 0
    r = count_correlated_quadruples(f, ShiftSet((5,), 16), chi, 0.5)
    assert r.count == 1 and r.additive_quadruples == 1


def test_quadruples_quadratic_n64():
    N = 64
    f, chi = _quadratic(N)
    r = count_correlated_quadruples(f, ShiftSet(range(1, N + 1), N), chi, 1.0, c=0.01)
    # sum_s (N - |s|)^2 additive quadruples in [64]^4
    assert r.additive_quadruples == sum((N - abs(s)) ** 2 for s in range(-N + 1, N))
    assert r.count >= r.bound == N ** 3 / 2


def test_quadruples_hypothesis_error():
    N = 8
    f, chi = _quadratic(N)
    chi = dict(chi)
    chi[3] = np.zeros(N)
    with pytest.raises(HypothesisError) as exc:
        count_correlated_quadruples(f, ShiftSet(range(1, N + 1), N), chi, 0.5)
    assert exc.value.h == 3


def test_quadruples_thread_independent():
    f, chi = _quadratic(20)
    H = ShiftSet(range(1, 21), 20)
    a = count_correlated_quadruples(f, H, chi, 1.0, collect=True, threads=1)
    b = count_correlated_quadruples(f, H, chi, 1.0, collect=True, threads=3)
    assert a == b


def test_result_type():
    r = gowers_norm_group(constant(Cyclic(4)), 1)
    assert isinstance(r, GowersResult)
    assert r.domain == {"type": "cyclic", "M": 4}
    assert gowers_norm_interval(constant(Interval(3)), 2).domain == {"type": "interval", "N": 3, "M_tilde": 6}
