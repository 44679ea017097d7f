import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gowerslab.additive import (BudgetError, IntSet, PairSet, additive_energy, bilinear_oplus,
                                find_lev_progression, find_product_progression, iterate_bilinear,
                                iterated_sumset, required_iterations, round_to_grid)


def test_sumset_examples():
    assert iterated_sumset(IntSet(5, [1]), 2, 3).tolist() == [-1]
    assert iterated_sumset(IntSet(1, [1]), 1, 1).tolist() == [0]
    assert iterated_sumset(IntSet(2, [1, 2]), 1, 1).tolist() == [-1, 0, 1]


@settings(max_examples=20, deadline=None)
@given(st.sets(st.integers(1, 40), min_size=1, max_size=25))
def test_2A_minus_2A_brute_force(A):
    brute = sorted({a + b - c - d for a, b, c, d in itertools.product(A, repeat=4)})
    s = iterated_sumset(IntSet(40, A), 2, 2)
    assert s.tolist() == brute
    assert 0 in s and np.array_equal(np.sort(-s), s)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 4), st.integers(2, 5), st.integers(1, 3))
def test_congruence_invariance(c, q, k):
    A = IntSet(60, [x for x in range(1, 61) if x % q == c % q])
    s = iterated_sumset(A, k, k)
    assert np.all(s % q == 0)


def test_sumset_budget():
    with pytest.raises(BudgetError):
        iterated_sumset(IntSet(10 ** 6, [1, 10 ** 6]), 10, 10)


def test_lev_examples():
    assert find_lev_progression(IntSet(30, range(1, 31)), 1) == 1
    evens = IntSet(40, range(2, 41, 2))
    assert find_lev_progression(evens, 4) == 2


def test_lev_random_guarantee():
    rng = np.random.default_rng(7)
    for _ in range(10):
        alpha = rng.uniform(0.2, 0.6)
        A = IntSet(200, [x for x in range(1, 201) if rng.random() < alpha] or [1])
        if A.alpha < 0.2:
            continue
        d = find_lev_progression(A, math.ceil(2 / A.alpha))
        assert d is not None and d <= 1 / A.alpha


def test_bilinear_examples():
    out = bilinear_oplus(PairSet(3, frozenset({(1, 1)})))
    assert out.pairs == {(1, 0), (1, 2), (0, 1), (2, 1)}
    assert bilinear_oplus(PairSet(3, frozenset())).pairs == frozenset()


def brute_oplus(P):
    out = set()
    for (x1, y1), (x2, y2) in itertools.product(P, repeat=2):
        if x1 == x2:
            out |= {(x1, y1 + y2), (x1, y1 - y2)}
        if y1 == y2:
            out |= {(x1 + x2, y1), (x1 - x2, y1)}
    return out


@settings(max_examples=30, deadline=None)
@given(st.sets(st.tuples(st.integers(1, 8), st.integers(1, 8)), max_size=20),
       st.sets(st.tuples(st.integers(1, 8), st.integers(1, 8)), max_size=10))
def test_oplus_definition_and_monotone(A, extra):
    a = bilinear_oplus(PairSet(8, frozenset(A)))
    b = bilinear_oplus(PairSet(8, frozenset(A | extra)))
    assert a.pairs == brute_oplus(A)
    assert a.pairs <= b.pairs


def test_grid_iterate_matches_set_iterate():
    rng = np.random.default_rng(3)
    A = PairSet(6, frozenset((int(x), int(y)) for x, y in rng.integers(1, 7, (12, 2))))
    W = 30
    it = iterate_bilinear(A, 3, W)
    s = bilinear_oplus(bilinear_oplus(A))
    inside = {(x, y) for x, y in s.pairs if abs(x) <= W and abs(y) <= W}
    got = {(x - W, y - W) for x, y in zip(*np.nonzero(it.grid))}
    # clipping after each step can only lose points
    assert got <= inside
    assert {(x, y) for x, y in inside if abs(x) <= W // 4 and abs(y) <= W // 4} <= got


def test_product_progression_examples():
    full = PairSet(10, frozenset(itertools.product(range(1, 11), repeat=2)))
    assert find_product_progression(full) == (1, 1)
    ev = PairSet(10, frozenset(itertools.product(range(2, 11, 2), repeat=2)))
    assert find_product_progression(ev, k=required_iterations(ev.alpha), d_max=4) == (2, 2)


def test_product_progression_random_n40():
    rng = np.random.default_rng(11)
    A = PairSet(40, frozenset((x, y) for x in range(1, 41) for y in range(1, 41) if rng.random() < 0.35))
    found = find_product_progression(A)
    assert found is not None and max(found) <= 4 / A.alpha ** 2


def test_energy_examples():
    pt = [(0, 0)]
    assert additive_energy(pt, pt, pt, pt) == 1
    assert additive_energy([(0, 0)], [(0, 0)], [(5, 0)], [(5, 0)]) == 0
    n = 30
    graph = [(x, 3 * x % 7) for x in range(1, n + 1)]
    brute = sum(1 for a, b, c, d in itertools.product(range(1, n + 1), repeat=4) if a + b == c + d)
    assert additive_energy(graph, graph, graph, graph, modulus=7) == brute


@settings(max_examples=20, deadline=None)
@given(*(st.lists(st.tuples(st.integers(-5, 5), st.integers(0, 4)), max_size=8) for _ in range(4)))
def test_energy_brute_force(S1, S2, S3, S4):
    brute = sum(1 for a, b, c, d in itertools.product(S1, S2, S3, S4)
                if a[0] + b[0] == c[0] + d[0] and (a[1] + b[1]) % 5 == (c[1] + d[1]) % 5)
    assert additive_energy(S1, S2, S3, S4, modulus=5) == brute


def test_round_to_grid_examples():
    idx, ng = round_to_grid([0.0, 0.3, Fraction(1, 8)], 0.25)
    assert ng == 4 and idx.tolist() == [0, 1, 0]
    d, _ = round_to_grid({"a": 0.99, "b": 0.5}, 0.25)
    assert d == {"a": 0, "b": 2}
    with pytest.raises(ValueError):
        round_to_grid([0.1], 1.5)
