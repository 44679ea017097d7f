from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gowerslab.bohr import (BohrSizer, LocalLinearityError, build_bohr, check_local_linearity,
                            cutoff_decomposition, default_kappa_grid, find_regular, locally_linear_shrink,
                            regularity_ratio)


def brute_bohr(S, rho, N):
    """Membership straight from the definition with Fractions."""
    rho = Fraction(rho)
    out = []
    for m in range(1, N + 1):
        if m <= rho * N and all(min((Fraction(t) * m) % 1, 1 - (Fraction(t) * m) % 1) <= rho for t in S):
            out.append(m)
    return out


def test_build_examples():
    assert build_bohr([], 0.3, 100).members.tolist() == list(range(1, 31))
    B = build_bohr([Fraction(1, 2)], 0.3, 100)
    assert B.members.tolist() == list(range(2, 31, 2)) and len(B) == 15
    # rho close to 1 from below keeps n <= rho N < N
    assert build_bohr([], Fraction(999, 1000), 100).members.tolist() == list(range(1, 100))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(0, 1, max_denominator=97), max_size=3),
       st.fractions(Fraction(1, 100), Fraction(99, 100), max_denominator=100), st.integers(1, 300))
def test_build_matches_definition(S, rho, N):
    assert build_bohr(S, rho, N).members.tolist() == brute_bohr(S, rho, N)


def test_float_parameters_read_as_decimals():
    # 0.3 * 10 = 3 exactly in decimal; membership at the boundary is kept
    assert 10 in build_bohr([0.1], 0.3, 100).members


def test_sizer_matches_build():
    S = [0.41421356, Fraction(2, 7)]
    sizer = BohrSizer(S, 2000)
    for rho in (0.01, 0.05, 0.123, 0.3):
        assert sizer(rho) == len(build_bohr(S, rho, 2000))


def test_regular_examples():
    rep = find_regular([], 0.1, 1000)
    assert rep.passed and rep.rejected == []
    rep = find_regular([0.41421356], 0.05, 10 ** 4)
    assert rep.passed and 0.05 <= rep.rho <= 0.1


def test_adversarial_radius_rejected():
    # near rho = 1/q the set for theta = 1/q jumps from multiples of q to almost everything
    rep = find_regular([Fraction(1, 10)], 0.08, 10 ** 4, C_reg=1.0)
    assert rep.rejected


def test_regular_rho_restable_on_finer_grid():
    S = [Fraction(3, 17), 0.2718281828]
    rep = find_regular(S, 0.1, 5000)
    assert rep.passed
    d = len(S)
    fine = sorted(set(default_kappa_grid(d)) | {s * k / (16 * d) for k in range(1, 17) for s in (1, -1)})
    _, worst = regularity_ratio(BohrSizer(S, 5000), rep.rho, d, fine)
    assert worst <= 100


def test_cutoff_decomposition_invariants():
    for S in ([], [Fraction(1, 2)], [0.1234, 0.777]):
        B = build_bohr(S, 0.2, 4000)
        dec = cutoff_decomposition(B, 0.1)
        ind = B.indicator()
        assert dec.passed and dec.psi2_mass <= 0.1 * B.N
        assert np.allclose(dec.psi1.values + dec.psi2.values, ind, atol=1e-12)
        # exact form: counts + (|B'| 1_B - counts) = |B'| 1_B
        assert np.all(dec.counts >= 0) and np.all(dec.counts <= dec.b_prime_size)
        psi1 = dec.psi1.values.real
        assert psi1.min() >= 0 and psi1.max() <= 1
        rp = Fraction(dec.rho_prime)
        inner = set(build_bohr(S, 0.2 - rp, 4000).members.tolist()) if rp < 0.2 else set()
        outer = set(build_bohr(S, min(0.2 + rp, Fraction(99, 100)), 4000).members.tolist())
        for m in range(1, 4001):
            if m in inner and m > rp * 4000:
                assert psi1[m - 1] == pytest.approx(1.0)
            if m not in outer:
                assert psi1[m - 1] == 0


def test_cutoff_degenerate_eps():
    B = build_bohr([Fraction(1, 3)], 0.25, 600)
    dec = cutoff_decomposition(B, 1.0)
    assert dec.passed and dec.b_prime_size >= 1


def test_shrink_examples():
    B = build_bohr([0.31], 0.2, 5000)
    r = locally_linear_shrink(B, lambda x: np.zeros(len(x)), 0.5, 0.01)
    assert r.rho_prime == 0.2
    r = locally_linear_shrink(B, lambda x: 1e-6 * np.asarray(x, float), 0.5, 0.01)
    assert r.rho_prime == 0.2
    E = build_bohr([Fraction(1, 2)], 0.3, 1000)
    r = locally_linear_shrink(E, lambda x: np.asarray(x, float) / 2, 0.5, 0.01)
    assert r.rho_prime is not None and r.correlation == pytest.approx(1.0)
    r = locally_linear_shrink(B, lambda x: 0.0002 * np.asarray(x, float), 0.1, 0.05)
    assert r.rho_prime is not None and r.rho_prime < 0.2


def test_local_linearity_violation():
    B = build_bohr([], 0.5, 200)
    with pytest.raises(LocalLinearityError):
        check_local_linearity(B, lambda x: 0.001 * np.asarray(x, float) ** 2)
