"""Sumsets and progressions: kA - lA, Lev progressions, bilinear sumsets and
product progressions, additive energy and grid rounding."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

SUMSET_BUDGET = 10 ** 7
BOX_BUDGET = 64 * 10 ** 6


class BudgetError(ValueError):
    """The requested set would exceed the configured size budget."""


@dataclass(frozen=True)
class IntSet:
    N: int
    elems: tuple

    def __post_init__(self):
        el = tuple(sorted(set(int(x) for x in self.elems)))
        if el and (el[0] < 1 or el[-1] > self.N):
            raise ValueError(f"elements must lie in [1, {self.N}]")
        object.__setattr__(self, "elems", el)

    @property
    def alpha(self) -> float:
        return len(self.elems) / self.N

    def __len__(self) -> int:
        return len(self.elems)


@dataclass(frozen=True)
class PairSet:
    """Pairs in [N]^2, or in [-box, box]^2 once ``box`` is set by a sumset step."""

    N: int
    pairs: frozenset
    box: int | None = None
    widened: tuple = ()

    def __post_init__(self):
        ps = frozenset((int(x), int(y)) for x, y in self.pairs)
        lo, hi = (1, self.N) if self.box is None else (-self.box, self.box)
        for x, y in ps:
            if not (lo <= x <= hi and lo <= y <= hi):
                raise ValueError(f"pair {(x, y)} lies outside [{lo}, {hi}]^2")
        object.__setattr__(self, "pairs", ps)

    @property
    def alpha(self) -> float:
        return len(self.pairs) / self.N ** 2

    def __len__(self) -> int:
        return len(self.pairs)


# -- one-dimensional sumsets --------------------------------------------------

def _bool_conv(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Support of the convolution of two 0/1 arrays (last axis), via FFT."""
    size = a.shape[-1] + b.shape[-1] - 1
    n = 1 << (size - 1).bit_length()
    out = np.fft.irfft(np.fft.rfft(a, n) * np.fft.rfft(b, n), n)[..., :size]
    return out > 0.5


def iterated_sumset(A: IntSet, k: int, l: int, budget: int = SUMSET_BUDGET) -> np.ndarray:
    """Sorted kA - lA = A + ... + A - A - ... - A."""
    if k < 0 or l < 0 or k + l == 0:
        raise ValueError("need k, l >= 0 and k + l >= 1")
    if not A.elems:
        return np.zeros(0, dtype=np.int64)
    lo, hi = A.elems[0], A.elems[-1]
    if (k + l) * (hi - lo) + 1 > budget:
        raise BudgetError(f"sumset span {(k + l) * (hi - lo) + 1} exceeds budget {budget}")
    base = np.zeros(hi - lo + 1)
    base[np.asarray(A.elems) - lo] = 1
    acc, offset = np.ones(1), 0
    for _ in range(k):
        acc = _bool_conv(acc, base).astype(float)
        offset += lo
    for _ in range(l):
        acc = _bool_conv(acc, base[::-1]).astype(float)
        offset -= hi
    return np.nonzero(acc > 0.5)[0].astype(np.int64) + offset


def find_lev_progression(A: IntSet, k: int, d_max: int | None = None) -> int | None:
    """Smallest d <= floor(1/alpha) with {0, d, ..., (N-1)d} inside kA - kA."""
    if not A.elems:
        return None
    if d_max is None:
        d_max = math.floor(1 / A.alpha)
    s = iterated_sumset(A, k, k)
    member = np.zeros(int(s.max()) + 1, dtype=bool)
    nonneg = s[s >= 0]
    member[nonneg] = True
    for d in range(1, d_max + 1):
        last = (A.N - 1) * d
        if last < len(member) and member[0:last + 1:d].all():
            return d
    return None


# -- bilinear sumsets ---------------------------------------------------------

def bilinear_oplus(A: PairSet, box: int | None = None) -> PairSet:
    """A (+) A: (x, y1 +- y2) for (x,y1),(x,y2) in A, and (x1 +- x2, y) for (x1,y),(x2,y) in A.

    Without ``box`` the ambient box is widened to contain every result; with
    ``box`` results outside [-box, box]^2 are dropped. Either way the box used
    is recorded in ``widened``.
    """
    rows, cols = {}, {}
    for x, y in A.pairs:
        rows.setdefault(x, []).append(y)
        cols.setdefault(y, []).append(x)
    out = set()
    for x, ys in rows.items():
        for y1 in ys:
            for y2 in ys:
                out.add((x, y1 + y2))
                out.add((x, y1 - y2))
    for y, xs in cols.items():
        for x1 in xs:
            for x2 in xs:
                out.add((x1 + x2, y))
                out.add((x1 - x2, y))
    need = max((max(abs(x), abs(y)) for x, y in out), default=0)
    if box is None:
        box = max(need, A.box or A.N)
    else:
        out = {(x, y) for x, y in out if abs(x) <= box and abs(y) <= box}
    return PairSet(A.N, frozenset(out), box, A.widened + (box,))


def _grid_oplus(G: np.ndarray) -> np.ndarray:
    """A (+) A on a boolean grid indexed by (x + W, y + W), clipped to the grid."""
    W = (G.shape[0] - 1) // 2
    g = G.astype(float)
    size = 4 * W + 1
    n = 1 << (size - 1).bit_length()
    out = np.zeros_like(G)
    for axis in (1, 0):
        F = np.fft.rfft(g, n, axis=axis)
        summ = np.fft.irfft(F * F, n, axis=axis)
        diff = np.fft.irfft(F * np.conj(F), n, axis=axis)
        # sum index i+j corresponds to value (i - W) + (j - W); keep values in [-W, W]
        s = np.take(summ, np.arange(W, 3 * W + 1), axis=axis) > 0.5
        # circular correlation: index m holds value m (m >= 0) or m - n (m < 0)
        idx = np.arange(-W, W + 1) % n
        dl = np.take(diff, idx, axis=axis) > 0.5
        out |= s | dl
    return out


@dataclass
class BilinearIterate:
    grid: np.ndarray = field(repr=False)
    W: int
    steps: int
    fixpoint_at: int | None

    def contains(self, x: int, y: int) -> bool:
        return abs(x) <= self.W and abs(y) <= self.W and bool(self.grid[x + self.W, y + self.W])


def iterate_bilinear(A: PairSet, k: int, W: int, budget: int = BOX_BUDGET) -> BilinearIterate:
    """k-fold iterate A_1 = A, A_{j+1} = A_j (+) A_j, computed inside [-W, W]^2.

    Each clipped step keeps a subset of the true iterate, so anything found
    in the result lies in the true k-fold iterate. Stops early at a fixpoint.
    """
    side = 2 * W + 1
    if side * side > budget:
        raise BudgetError(f"box of side {side} exceeds budget {budget}")
    G = np.zeros((side, side), dtype=bool)
    for x, y in A.pairs:
        if abs(x) <= W and abs(y) <= W:
            G[x + W, y + W] = True
    for step in range(1, k):
        nxt = _grid_oplus(G)
        if np.array_equal(nxt, G):
            return BilinearIterate(G, W, k, step)
        G = nxt
    return BilinearIterate(G, W, k, None)


def required_iterations(alpha: float) -> int:
    return math.ceil(128 / alpha ** 3)


@dataclass
class ProductSearch:
    found: tuple | None
    k: int
    d_max: int
    boxes: list = field(default_factory=list)  # (W, fixpoint step or None) per stage


def search_product_progression(A: PairSet, k: int | None = None, d_max: int | None = None) -> ProductSearch:
    """Look for {0, d, ..., (N-1)d} x {0, d', ..., (N-1)d'} in the k-fold iterate.

    Stage s allows d, d' <= D_s = min(2^s, d_max) and computes the iterate in
    [-W, W]^2 with W = max(N, (N-1) D_s); pairs are scanned lexicographically
    and the first stage with a hit returns it. Defaults: k = ceil(128/alpha^3),
    d_max = floor(4/alpha^2).
    """
    if k is None:
        k = required_iterations(A.alpha) if A.pairs else 1
    if d_max is None:
        d_max = math.floor(4 / A.alpha ** 2) if A.pairs else 1
    out = ProductSearch(None, k, d_max)
    if not A.pairs:
        return out
    D = 1
    while True:
        D = min(D, d_max)
        W = max(A.N, (A.N - 1) * D)
        it = iterate_bilinear(A, k, W)
        out.boxes.append((W, it.fixpoint_at))
        G = it.grid
        span = np.arange(A.N)
        for d in range(1, D + 1):
            sub = G[span * d + W]
            for dp in range(1, D + 1):
                if sub[:, span * dp + W].all():
                    out.found = (d, dp)
                    return out
        if D == d_max:
            return out
        D *= 2


def find_product_progression(A: PairSet, k: int | None = None, d_max: int | None = None):
    """(d, d') from :func:`search_product_progression`, or None."""
    return search_product_progression(A, k, d_max).found


# -- additive energy and grid rounding ---------------------------------------

def _sums(S1, S2, modulus):
    c = Counter()
    for x1, r1 in S1:
        for x2, r2 in S2:
            r = r1 + r2
            c[(x1 + x2, r % modulus if modulus else r)] += 1
    return c


def additive_energy(S1, S2, S3, S4, modulus: int | None = None) -> int:
    """#{(g1,g2,g3,g4) in S1 x S2 x S3 x S4 : g1 + g2 = g3 + g4}.

    Points are (integer, grid index) pairs; grid indices add modulo ``modulus``
    when it is given.
    """
    left = _sums(S1, S2, modulus)
    right = _sums(S3, S4, modulus)
    return sum(c * right[s] for s, c in left.items() if s in right)


def round_to_grid(values, eps):
    """Nearest multiple index r of 1/floor(1/eps) to each value mod 1, ties going down.

    Returns (indices, grid size); dict inputs give a dict of indices.
    """
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    ng = math.floor(1 / eps)
    if isinstance(values, dict):
        keys = list(values)
        idx, _ = round_to_grid([values[k] for k in keys], eps)
        return dict(zip(keys, (int(i) for i in idx))), ng
    out = []
    for v in values:
        t = (Fraction(v) if isinstance(v, (int, Fraction)) else v) * ng
        # ceil(t - 1/2) picks the lower neighbour on exact ties
        out.append(math.ceil(t - Fraction(1, 2) if isinstance(t, Fraction) else t - 0.5) % ng)
    return np.array(out, dtype=np.int64), ng
