"""Gowers uniformity norms on Z_M and [N], Gowers inner products, and
counting of correlated additive quadruples of derivative-correlating shifts."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from ._parallel import chunks, ordered_map, resolve_threads
from .seqfun import Cyclic, Interval, SeqFn, _pad, embed_interval

METHODS = ("direct", "recursion", "fft")
IMAG_TOL = 1e-10
# direct evaluation is O(M^(k+1)); refuse sizes that would not finish
DIRECT_CAP = {1: 1 << 20, 2: 4096, 3: 512, 4: 64}


@dataclass(frozen=True)
class GowersResult:
    norm_value: float
    k: int
    method: str
    domain: dict
    power: float  # the 2^k-th power of the norm, i.e. the defining average


@dataclass(frozen=True)
class ShiftSet:
    """A set of shifts H inside [N]."""

    H: tuple
    N: int

    def __post_init__(self):
        hs = tuple(sorted(set(int(h) for h in self.H)))
        if hs and (hs[0] < 1 or hs[-1] > self.N):
            raise ValueError(f"shifts must lie in [1, {self.N}]")
        object.__setattr__(self, "H", hs)

    @property
    def eta(self) -> float:
        return len(self.H) / self.N

    def __len__(self):
        return len(self.H)


class HypothesisError(ValueError):
    """The derivative-correlation hypothesis fails for some shift."""

    def __init__(self, h: int, corr: float, delta: float):
        super().__init__(f"|E_n Delta_h f(n) conj(chi_h(n))| = {corr:.6g} < delta = {delta:.6g} at h = {h}")
        self.h = h
        self.corr = corr


def _check_k(k: int) -> None:
    if not isinstance(k, (int, np.integer)) or not 1 <= k <= 4:
        raise ValueError(f"k must be in 1..4, got {k!r}")


# -- power computations (return ||f||^(2^k)) --------------------------------

def _shift_matrix(v: np.ndarray, hs: np.ndarray) -> np.ndarray:
    """Rows Delta_h v for each h in hs."""
    M = v.shape[0]
    idx = (np.arange(M)[None, :] + hs[:, None]) % M
    return v[idx] * np.conj(v)[None, :]


def _u1_power(v: np.ndarray) -> float:
    m = v.mean()
    return float(m.real * m.real + m.imag * m.imag)


def _u2_power_fft(v: np.ndarray) -> float:
    fh = np.fft.fft(v) / v.shape[0]
    a = np.abs(fh) ** 2
    return float(np.sum(a * a))


def _u2_power_fft_rows(rows: np.ndarray) -> np.ndarray:
    fh = np.fft.fft(rows, axis=1) / rows.shape[1]
    a = fh.real ** 2 + fh.imag ** 2
    return np.sum(a * a, axis=1)


def _nonzero_shifts(v: np.ndarray) -> np.ndarray:
    """Shifts h with Delta_h v not identically zero."""
    M = v.shape[0]
    supp = np.flatnonzero(v)
    if supp.size == 0:
        return np.zeros(0, dtype=np.int64)
    diffs = np.unique((supp[None, :] - supp[:, None]) % M)
    return diffs.astype(np.int64)


def _recursion_power(v: np.ndarray, k: int, threads: int = 1) -> float:
    """||v||^(2^k) via E_h ||Delta_h v||^(2^(k-1)); U^2 base is the FFT identity
    for k >= 3 and the U^1 average for k = 2."""
    M = v.shape[0]
    if k == 1:
        return _u1_power(v)
    hs = _nonzero_shifts(v)
    terms = np.zeros(M)
    if hs.size == 0:
        return 0.0
    if k == 2:
        rows = _shift_matrix(v, hs)
        means = rows.mean(axis=1)
        terms[hs] = means.real ** 2 + means.imag ** 2
    elif k == 3:
        def block(hb):
            return _u2_power_fft_rows(_shift_matrix(v, hb))
        parts = ordered_map(block, [np.asarray(c) for c in chunks(hs, threads)], threads)
        terms[hs] = np.concatenate(parts)
    else:
        def block(hb):
            return [_recursion_power(_shift_matrix(v, np.array([h]))[0], k - 1) for h in hb]
        parts = ordered_map(block, chunks(hs, threads), threads)
        terms[hs] = np.concatenate([np.asarray(p, dtype=float) for p in parts])
    return float(np.sum(terms) / M)


def _direct_average(v: np.ndarray, k: int, threads: int = 1) -> complex:
    """E_{x,h_1..h_k} Delta_{h_1}...Delta_{h_k} v(x), evaluated on the full grid."""
    M = v.shape[0]
    if M > DIRECT_CAP[k]:
        raise ValueError(f"direct evaluation for k={k} is capped at M <= {DIRECT_CAP[k]}")
    if k == 1:
        return complex(np.mean(_shift_matrix(v, np.arange(M))))
    outer = list(itertools.product(range(M), repeat=max(0, k - 2)))
    x = np.arange(M)
    idx2 = (x[None, :] + x[:, None]) % M  # [h, x] -> x + h

    def inner(d):
        # the last two derivatives over a full (h, h', x) grid
        d1 = d[idx2] * np.conj(d)[None, :]                  # (h, x)
        d2 = d1[:, idx2] * np.conj(d1)[:, None, :]          # (h, h', x)
        return np.sum(d2)

    def block(tuples):
        out = np.empty(len(tuples), dtype=np.complex128)
        for i, hs in enumerate(tuples):
            d = v
            for h in hs:
                d = np.roll(d, -h) * np.conj(d)
            out[i] = inner(d)
        return out

    parts = ordered_map(block, chunks(outer, threads), threads)
    total = np.sum(np.concatenate(parts))
    return complex(total / M ** (k + 1))


def _fft_power(v: np.ndarray, k: int) -> float:
    if k != 2:
        raise ValueError("the fft method is only available for k = 2")
    return _u2_power_fft(v)


def _power(v: np.ndarray, k: int, method: str, threads: int) -> float:
    if method == "recursion":
        return _recursion_power(v, k, threads)
    if method == "fft":
        return _fft_power(v, k)
    if method == "direct":
        avg = _direct_average(v, k, threads)
        if abs(avg.imag) > IMAG_TOL:
            raise ArithmeticError(f"Gowers average has imaginary part {avg.imag:.3g}")
        if avg.real < -IMAG_TOL:
            raise ArithmeticError(f"Gowers average is negative: {avg.real:.3g}")
        return avg.real
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


def _root(power: float, k: int) -> float:
    return max(power, 0.0) ** (1.0 / 2 ** k)


# -- public API -------------------------------------------------------------

def gowers_norm_group(f: SeqFn, k: int, method: str = "recursion",
                      threads: int | None = None) -> GowersResult:
    """||f||_{U^k(Z_M)}."""
    _check_k(k)
    if not isinstance(f.domain, Cyclic):
        raise TypeError("gowers_norm_group expects a function on Z_M")
    threads = resolve_threads(threads)
    p = _power(f.values, k, method, threads)
    return GowersResult(_root(p, k), k, method, f.domain.describe(), p)


def gowers_norm_interval(f: SeqFn, k: int, M_tilde: int | None = None,
                         method: str = "recursion", threads: int | None = None) -> GowersResult:
    """||f||_{U^k[N]} = ||f~||_{U^k(Z_M)} / ||1_[N]||_{U^k(Z_M)}.

    With ``M_tilde`` given (must be >= 2^k N) the embedding uses that modulus.
    Without it the computation runs in Z_{2N}: iterated derivatives of a
    function supported on [1, N] stay supported there, so for every M >= 2N
    both averages count exactly the same genuine integer cubes and the ratio
    is the same as for any admissible M_tilde.
    """
    _check_k(k)
    if not isinstance(f.domain, Interval):
        raise TypeError("gowers_norm_interval expects a function on [N]")
    threads = resolve_threads(threads)
    N = f.domain.N
    if M_tilde is None:
        ft = _pad(f, 2 * N)
    else:
        ft = embed_interval(f, k, M_tilde)
    one = np.zeros(ft.size, dtype=np.complex128)
    one[1:N + 1] = 1.0
    p = _power(ft.values, k, method, threads)
    p1 = _power(one, k, method, threads)
    ratio = p / p1
    desc = dict(f.domain.describe(), M_tilde=ft.size)
    return GowersResult(_root(ratio, k), k, method, desc, ratio)


def _omega_bits(k: int):
    return [tuple((i >> j) & 1 for j in range(k)) for i in range(2 ** k)]


def gowers_inner_product(fs: Sequence[SeqFn], k: int, threads: int | None = None) -> complex:
    """<(f_omega)> = E_{x,h} prod_omega C^{|omega|} f_omega(x + omega.h).

    ``fs[i]`` is f_omega for omega with bits omega_j = (i >> j) & 1.
    """
    _check_k(k)
    if len(fs) != 2 ** k:
        raise ValueError(f"need 2^k = {2 ** k} functions, got {len(fs)}")
    dom = fs[0].domain
    if not isinstance(dom, Cyclic) or any(g.domain != dom for g in fs):
        raise ValueError("all functions must live on the same Z_M")
    M = dom.M
    if M ** (k + 1) > 1 << 27:
        raise ValueError("inner product grid too large for direct evaluation")
    threads = resolve_threads(threads)
    vals = [g.values if sum(w) % 2 == 0 else np.conj(g.values) for g, w in zip(fs, _omega_bits(k))]
    omegas = _omega_bits(k)
    x = np.arange(M)
    n_inner = min(k, 2)
    grids = np.meshgrid(*([x] * n_inner), x, indexing="ij")
    inner_h, xs = grids[:-1], grids[-1]
    outer = list(itertools.product(range(M), repeat=k - n_inner))

    def block(tuples):
        out = np.empty(len(tuples), dtype=np.complex128)
        for i, hout in enumerate(tuples):
            prod = np.ones(xs.shape, dtype=np.complex128)
            for w, v in zip(omegas, vals):
                pos = xs + sum(w[j] * hout[j] for j in range(k - n_inner))
                for j in range(n_inner):
                    if w[k - n_inner + j]:
                        pos = pos + inner_h[j]
                prod *= v[pos % M]
            out[i] = np.sum(prod)
        return out

    parts = ordered_map(block, chunks(outer, threads), threads)
    return complex(np.sum(np.concatenate(parts)) / M ** (k + 1))


# -- correlated quadruples ---------------------------------------------------

@dataclass(frozen=True)
class QuadrupleCount:
    count: int
    threshold: float
    bound: float
    eta: float
    delta: float
    c: float
    n_prime: int
    additive_quadruples: int
    passing: tuple = field(default=(), repr=False)


def derivative_correlations(f: SeqFn, H: ShiftSet, chi: Mapping[int, object], N: int) -> dict:
    """|E_{n in [N]} Delta_h f(n) conj(chi_h(n))| for each h in H.

    f may extend beyond [N]; values past its end are taken to be zero.
    """
    L = f.size
    fv = np.zeros(L + N + 1, dtype=np.complex128)
    fv[1:L + 1] = f.values
    n = np.arange(1, N + 1)
    out = {}
    for h in H.H:
        ch = _chi_values(chi[h], N)
        d = fv[n + h] * np.conj(fv[n])
        out[h] = float(abs(np.mean(d * np.conj(ch))))
    return out


def _chi_values(c, N: int) -> np.ndarray:
    v = c.values if isinstance(c, SeqFn) else np.asarray(c, dtype=np.complex128)
    if v.shape[0] < N:
        raise ValueError(f"chi_h must be defined on [1, {N}]")
    v = v[:N]
    if np.max(np.abs(v), initial=0.0) > 1 + 1e-12:
        raise ValueError("chi_h must be 1-bounded")
    return v


def count_correlated_quadruples(f: SeqFn, H: ShiftSet, chi: Mapping[int, object], delta: float,
                                c: float = 0.01, N: int | None = None, n_prime: int | None = None,
                                collect: bool = False, threads: int | None = None) -> QuadrupleCount:
    """Count additive quadruples h1 + h2 = h3 + h4 in H^4 whose twisted correlation
    |E_{n in Z_N'} chi_h1(n) chi_h2(n+s) conj(chi_h3(n) chi_h4(n+s))|, s = h1 - h4,
    is at least c * eta^4 * delta^2, with every chi_h zero outside [1, N].
    """
    N = H.N if N is None else N
    if N != H.N:
        raise ValueError("ShiftSet ambient length must equal N")
    n_prime = 2 * N + 1 if n_prime is None else n_prime
    if n_prime < N + 1:
        raise ValueError("n_prime must exceed N")
    threads = resolve_threads(threads)
    eta = H.eta
    if len(H):
        corrs = derivative_correlations(f, H, chi, N)
        for h in H.H:
            if corrs[h] < delta:
                raise HypothesisError(h, corrs[h], delta)
    threshold = c * eta ** 4 * delta ** 2
    bound = eta ** 8 * delta ** 4 * N ** 3 / 2
    hs = np.array(H.H, dtype=np.int64)
    m = len(hs)
    if m == 0:
        return QuadrupleCount(0, threshold, bound, eta, delta, c, n_prime, 0)

    X = np.zeros((m, n_prime), dtype=np.complex128)
    for i, h in enumerate(hs):
        X[i, 1:N + 1] = _chi_values(chi[int(h)], N)
    pos = {int(h): i for i, h in enumerate(hs)}
    n = np.arange(1, N + 1)
    base = X[:, 1:N + 1]

    def block(i1s):
        cnt = 0
        total = 0
        found = []
        for i1 in i1s:
            h1 = int(hs[i1])
            a = X[i1, 1:N + 1]
            for i4 in range(m):
                h4 = int(hs[i4])
                s = h1 - h4
                h3 = h1 + hs - h4
                ok = np.array([int(v) in pos for v in h3])
                if not ok.any():
                    continue
                i2 = np.flatnonzero(ok)
                i3 = np.array([pos[int(v)] for v in h3[ok]])
                shifted = X[:, (n + s) % n_prime]
                b = shifted[i2] * np.conj(shifted[i4])[None, :]
                corr = np.abs(np.sum(a[None, :] * np.conj(base[i3]) * b, axis=1)) / n_prime
                good = corr >= threshold
                total += len(i2)
                cnt += int(np.count_nonzero(good))
                if collect:
                    found.extend((h1, int(hs[j2]), int(hs[j3]), h4)
                                 for j2, j3 in zip(i2[good], i3[good]))
        return cnt, total, found

    parts = ordered_map(block, chunks(range(m), threads), threads)
    count = sum(p[0] for p in parts)
    total = sum(p[1] for p in parts)
    passing = tuple(q for p in parts for q in p[2])
    return QuadrupleCount(count, threshold, bound, eta, delta, c, n_prime, total, passing)
