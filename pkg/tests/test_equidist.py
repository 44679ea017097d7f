import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from gowerslab.equidist import (EnumerationBudgetError, InconsistentSystemError, RationalMatrixSystem,
                                TorusOrbit, convergents, equidist_test, geometric_weyl_sum,
                                integer_relation, rational_approx, relation_residual, solve_bounded_rational,
                                system_residual, weyl_sum)


def test_weyl_examples():
    assert weyl_sum([0, 0, 0], 10) == pytest.approx(1.0)
    assert abs(weyl_sum([0, Fraction(1, 2)], 10)) < 1e-15
    direct = np.mean([np.exp(2j * np.pi * (m * m % 4) / 4) for m in range(1, 17)])
    assert abs(weyl_sum([0, 0, Fraction(1, 4)], 16) - direct) < 1e-12


@settings(max_examples=50, deadline=None)
@given(st.floats(0.001, 0.999), st.integers(1, 2000))
def test_weyl_geometric(alpha, N):
    assert abs(weyl_sum([0, alpha], N) - geometric_weyl_sum(alpha, N)) < 1e-12 * max(1, N ** 0.5) + 1e-12


def test_equidist_examples():
    golden = 0.6180339887
    assert equidist_test(TorusOrbit.linear([golden], 10 ** 4), 0.1, 10).equidistributed
    r = equidist_test(TorusOrbit.linear([Fraction(1, 3), Fraction(2, 3)], 300), 0.5, 2)
    assert not r.equidistributed and r.witness == (1, 1)
    assert equidist_test(TorusOrbit((), 10), 0.1, 3).equidistributed


@settings(max_examples=20, deadline=None)
@given(st.lists(st.fractions(0, 1, max_denominator=12), min_size=1, max_size=2), st.integers(1, 4))
def test_witness_reverified_by_direct_sum(alphas, M):
    N = 200
    r = equidist_test(TorusOrbit.linear(alphas, N), 0.3, M)
    if r.witness is not None:
        s = np.mean([np.exp(2j * np.pi * float(sum(m * a for m, a in zip(r.witness, alphas)) * k % 1))
                     for k in range(1, N + 1)])
        assert abs(s) >= 0.3 - 1e-12
        assert max(abs(x) for x in r.witness) <= M


def test_rational_approx_examples():
    assert rational_approx(Fraction(3, 7), 10) == (3, 7, 0.0)
    a, q, err = rational_approx(3 / 7 + 1e-9, 10)
    assert (a, q) == (3, 7) and err == pytest.approx(1e-9, rel=1e-6)
    assert rational_approx(0.5, 1) == (0, 1, 0.5)


def _dist(x):
    return abs(x - round(x))


@settings(max_examples=40, deadline=None)
@given(st.fractions(0, 1, max_denominator=10 ** 6), st.integers(1, 1000))
def test_best_approximation_property(alpha, Q):
    a, q, _ = rational_approx(alpha, Q)
    best = _dist(q * alpha)
    assert all(best <= _dist(qq * alpha) for qq in range(1, q + 1))


def test_convergents_of_golden_ratio():
    cs = convergents(Fraction(89, 144))
    assert cs[-1] == (89, 144)
    assert [c[1] for c in cs[:6]] == [1, 1, 2, 3, 5, 8]


def brute_relation(alphas, M, tol):
    hits = []
    for m in itertools.product(range(-M, M + 1), repeat=len(alphas)):
        if any(m) and relation_residual(alphas, m) <= tol:
            hits.append(m)
    return hits


def test_relation_examples():
    r = integer_relation([Fraction(1, 2), Fraction(1, 3)], 3, tol=1e-9)
    # the smallest relation by max-norm is 2 * (1/2) = 1; (2, 3) is another witness
    assert r == (2, 0)
    assert relation_residual([Fraction(1, 2), Fraction(1, 3)], (2, 3)) == 0
    assert integer_relation([0.1234567], 5, tol=1e-6) is None
    assert integer_relation([Fraction(1, 7), 0, Fraction(2, 9)], 2) == (0, 1, 0)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.fractions(0, 1, max_denominator=9), min_size=1, max_size=3), st.integers(1, 3))
def test_relation_matches_brute_force(alphas, M):
    hits = brute_relation(alphas, M, 0)
    r = integer_relation(alphas, M)
    if not hits:
        assert r is None
    else:
        assert r is not None and relation_residual(alphas, r) == 0
        assert max(map(abs, r)) == min(max(map(abs, h)) for h in hits)


def test_relation_budget():
    with pytest.raises(EnumerationBudgetError):
        integer_relation([0.1] * 6, 20, budget=10 ** 6)
    with pytest.raises(ValueError):
        integer_relation([0.1] * 7, 1)


def test_solver_examples():
    s = solve_bounded_rational(RationalMatrixSystem(((1, 0), (0, 1)), (Fraction(3, 4), -2)))
    assert s.x == (Fraction(3, 4), -2)
    assert solve_bounded_rational(RationalMatrixSystem(((1, 1),), (2,))).x == (2, 0)
    with pytest.raises(InconsistentSystemError) as exc:
        solve_bounded_rational(RationalMatrixSystem(((1,), (1,)), (1, 2)))
    assert (exc.value.rank_A, exc.value.rank_augmented) == (1, 2)


def test_complexity_bound_enforced():
    with pytest.raises(ValueError):
        RationalMatrixSystem(((Fraction(7, 3),),), (1,), M=5)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 2 ** 32 - 1))
def test_solver_residual_and_rank(m, n, seed):
    rng = np.random.default_rng(seed)
    A = [[Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 6))) for _ in range(n)] for _ in range(m)]
    b = [Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 6))) for _ in range(m)]
    sys_ = RationalMatrixSystem(A, b, M=5)
    # independent rank via sympy's Matrix (fraction-free elimination)
    rA = sympy.Matrix(A).rank()
    rAb = sympy.Matrix([row + [bi] for row, bi in zip(A, b)]).rank()
    if rA < rAb:
        with pytest.raises(InconsistentSystemError):
            solve_bounded_rational(sys_)
    else:
        sol = solve_bounded_rational(sys_)
        assert all(r == 0 for r in system_residual(sys_, sol.x))
        assert sol.rank == rA
