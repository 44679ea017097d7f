import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gowerslab.bracket import (CASES, TrilinearForm, check_key_identity, const, eval_mod1, floor, frac,
                               n, symmetrize_trilinear, verify_bracket_lemma)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=500)


def fl(x):
    return math.floor(x)


def fr(x):
    return x - math.floor(x)


def test_eval_examples():
    assert eval_mod1(frac(const(0.5) * n), 3) == pytest.approx(0.5)
    assert eval_mod1(const(Fraction(3, 10)) * n * floor(const(Fraction(7, 10)) * n), 4) == Fraction(2, 5)
    assert eval_mod1(const(0.3) * n * floor(const(0.7) * n), 4, mode="float") == pytest.approx(0.4)
    assert eval_mod1(const(Fraction(2, 3)) * n * n + frac(const(Fraction(1, 5)) * n), 0) == 0


def test_key_identity_examples():
    assert check_key_identity(0, 0) == 0
    assert check_key_identity(2.5, 3.25) == 0
    X = 2.5
    assert X * fl(3.25) == 7.5
    rng = np.random.default_rng(0)
    xy = rng.uniform(-10, 10, (10 ** 4, 2))
    assert max(check_key_identity(x, y) for x, y in xy) < 1e-10


@settings(max_examples=60, deadline=None)
@given(rationals, rationals, rationals, st.integers(1, 10 ** 4))
def test_lemma_cases_against_direct_fraction_arithmetic(a, b, c, m):
    # direct mod-1 checks written with plain Fractions, one n at a time
    assert fr((a + b) * m * fl(c * m) - a * m * fl(c * m) - b * m * fl(c * m)) == 0
    lhs = a * m * fl((b + c) * m)
    rhs = a * m * fl(b * m) + a * m * fl(c * m) + fr(a * m) * fr(b * m) + fr(a * m) * fr(c * m) \
        - fr(a * m) * fr((b + c) * m)
    assert fr(lhs - rhs) == 0
    lhs = a * m * fl(b * m)
    rhs = -b * m * fl(a * m) + a * b * m * m - fr(a * m) * fr(b * m)
    assert fr(lhs - rhs) == 0
    assert fr(a * m) * fr(b * m) * fr(c * m) == (a * m - fl(a * m)) * (b * m - fl(b * m)) * (c * m - fl(c * m))


@pytest.mark.parametrize("case", CASES)
def test_every_case_passes_exactly(case):
    rng = np.random.default_rng(hash(case) % 2 ** 32)
    keys = {"key": "alpha beta", "i": "alpha1 alpha2 beta", "ii": "alpha beta1 beta2", "iii": "alpha beta",
            "iv": "gamma", "3brack": "alpha beta gamma", "3brack_phase": "alpha beta gamma",
            "another": "alpha beta"}[case].split()
    for _ in range(5):
        p = {k: Fraction(int(rng.integers(-999, 1000)), int(rng.integers(1, 300))) for k in keys}
        rep = verify_bracket_lemma(case, p, range(1, 301))
        assert rep.passed, rep.first_failure
        assert rep.worst_residual == 0


def test_spec_examples():
    z = verify_bracket_lemma("i", {"alpha1": 0, "alpha2": 0, "beta": 0}, range(1, 10))
    assert z.passed and z.worst_residual == 0
    assert verify_bracket_lemma("iii", {"alpha": "1/3", "beta": "1/7"}, range(1, 1001)).passed
    rep = verify_bracket_lemma("iv", {"gamma": "2/5"}, range(1, 1001))
    assert rep.passed and rep.corrections


def test_cubic_phase_needs_its_correction():
    # without e(-alpha beta gamma n^3) the six-term expansion is off by that phase
    a, b, c = Fraction(1, 3), Fraction(2, 7), Fraction(1, 5)
    bad = 0
    for m in range(1, 50):
        lhs = fl(a * m) * fl(b * m) * c * m
        rhs = (fr(a * m) * fr(b * m) * fr(c * m) - fl(a * m) * b * m * fl(c * m) - a * m * fl(b * m) * fl(c * m)
               + a * b * m * m * fl(c * m) + a * c * m * m * fl(b * m) + b * c * m * m * fl(a * m))
        bad += fr(lhs - rhs) != 0
        assert fr(lhs - rhs + a * b * c * m ** 3) == 0
    assert bad > 0


def test_batched_params():
    rng = np.random.default_rng(3)
    A = np.array([Fraction(int(x), 97) for x in rng.integers(-300, 300, 50)], dtype=object)
    B = np.array([Fraction(int(x), 89) for x in rng.integers(-300, 300, 50)], dtype=object)
    rep = verify_bracket_lemma("iii", {"alpha": A, "beta": B}, range(1, 200))
    assert rep.passed and rep.n_checked == 50 * 199


def test_wrong_identity_is_caught():
    # a deliberately mismatched parameter set: case i with alpha1 + alpha2 fed inconsistently
    from gowerslab.bracket import Identity, const as C

    ident = Identity("bogus", C(Fraction(1, 3)) * n * floor(C(Fraction(1, 7)) * n), C(0))
    r = ident.residual(np.arange(1, 30))
    assert (r.frac().num != 0).any()


def test_float_mode_tracks_rational():
    p = {"alpha": 0.3141, "beta": 0.2718, "gamma": 0.1618}
    for case in ("3brack", "3brack_phase"):
        assert verify_bracket_lemma(case, p, range(1, 400), mode="float").passed


def test_trilinear_symmetrization():
    T = TrilinearForm(((Fraction(1, 2), Fraction(1, 3), Fraction(1, 5)),))
    Ts = symmetrize_trilinear(T)
    assert Ts.evaluate(2, 3, 4).item(()) == Ts.evaluate(2, 4, 3).item(())
    assert Ts.beta_tilde == (Fraction(1, 6),)
    hs = np.arange(1, 201)
    H, N = np.meshgrid(hs, hs, indexing="ij")
    d = Ts.evaluate(H, N, N) - T.evaluate(H, N, N)
    assert not (d.num != 0).any()
    zero = symmetrize_trilinear(TrilinearForm(((0, 0, 0),), ((0, 0),)))
    assert not (zero.evaluate(H, N, N).num != 0).any()


@settings(max_examples=15, deadline=None)
@given(st.lists(st.tuples(rationals, rationals, rationals), min_size=1, max_size=3),
       st.lists(st.tuples(rationals, rationals), max_size=2))
def test_trilinear_symmetric_in_last_two(cubic, square):
    T = TrilinearForm(tuple(cubic), tuple(square))
    Ts = symmetrize_trilinear(T)
    xs = np.arange(-6, 7)
    X, Y, Z = np.meshgrid(xs, xs, xs, indexing="ij")
    assert not ((Ts.evaluate(X, Y, Z) - Ts.evaluate(X, Z, Y)).num != 0).any()
    assert not ((Ts.evaluate(X, Y, Y) - T.evaluate(X, Y, Y)).num != 0).any()
