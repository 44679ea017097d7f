"""Bohr sets B(S, rho, N) = {n in [rho N] : ||n theta|| <= rho for theta in S}:
exact construction, regular radii, cutoff decompositions and shrinking to
make a locally linear phase small."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ._parallel import ordered_map
from .exact import to_rational
from .seqfun import Interval, SeqFn

N_CANDIDATES = 64
C_REG_DEFAULT = 100.0
LINEARITY_TOL = 1e-9


def as_exact(x) -> Fraction:
    """Exact value of a parameter; floats are read as their shortest decimal form."""
    if isinstance(x, (float, np.floating)):
        return Fraction(repr(float(x)))
    return to_rational(x)


def _dist_num(n: np.ndarray, theta: Fraction) -> tuple[np.ndarray, int]:
    """||n theta|| as (integer numerator array, denominator)."""
    p, q = theta.numerator % theta.denominator, theta.denominator
    if q * max(int(n.max(initial=0)), 1) < 2 ** 62 and p < 2 ** 62 // max(int(n.max(initial=1)), 1):
        r = (n * p) % q
    else:
        r = np.array([(int(x) * p) % q for x in n], dtype=object)
    return np.minimum(r, q - r), q


def _within(n: np.ndarray, theta: Fraction, rho: Fraction) -> np.ndarray:
    num, q = _dist_num(n, theta)
    # num / q <= a / b  <=>  num * b <= a * q
    a, b = rho.numerator, rho.denominator
    if num.dtype != object and b < 2 ** 62 // max(q, 1) and a * q < 2 ** 62:
        return num * b <= a * q
    return np.array([int(x) * b <= a * q for x in num], dtype=bool)


@dataclass(frozen=True)
class BohrSet:
    S: tuple
    rho: float
    N: int
    members: np.ndarray = field(repr=False)

    @property
    def d(self) -> int:
        return len(self.S)

    def __len__(self) -> int:
        return len(self.members)

    def indicator(self) -> np.ndarray:
        """1_B on [N] as a 0/1 integer array indexed by n - 1."""
        out = np.zeros(self.N, dtype=np.int64)
        out[self.members - 1] = 1
        return out


def build_bohr(S, rho, N: int) -> BohrSet:
    """Exact Bohr set; float parameters are taken at their decimal value."""
    r = as_exact(rho)
    if not 0 < r < 1:
        raise ValueError("rho must lie in (0, 1)")
    top = min(N, math.floor(r * N))
    n = np.arange(1, top + 1, dtype=np.int64)
    keep = np.ones(len(n), dtype=bool)
    for th in S:
        keep &= _within(n, as_exact(th), r)
    return BohrSet(tuple(S), rho, N, n[keep])


def bohr_radii(S, N: int, lo: int = 1) -> np.ndarray:
    """r(n) = max(n / N, max_j ||n theta_j||) for n = lo..N, so that n is in B(rho) iff r(n) <= rho."""
    n = np.arange(lo, N + 1, dtype=np.int64)
    r = n / N
    for th in S:
        num, q = _dist_num(n, as_exact(th))
        r = np.maximum(r, np.asarray(num, dtype=float) / q)
    return r


class BohrSizer:
    """|B(S, rho, N)| for many radii from one sorted radius table."""

    def __init__(self, S, N: int):
        self.radii = np.sort(bohr_radii(S, N))

    def __call__(self, rho: float) -> int:
        return int(np.searchsorted(self.radii, rho, side="right"))


def default_kappa_grid(d: int) -> list[float]:
    d = max(d, 1)
    base = [1 / d, 1 / (2 * d), 1 / (4 * d), 1 / (8 * d)]
    return sorted([-k for k in base] + base)


@dataclass
class RegularCandidate:
    rho: float
    size: int
    worst: float  # max over kappa of ||B((1+k) rho)| / |B(rho)| - 1| / (d |k|)
    passed: bool


@dataclass
class RegularReport:
    rho: float | None
    passed: bool
    worst: float
    candidates: list = field(default_factory=list)

    @property
    def rejected(self) -> list:
        return [c.rho for c in self.candidates if not c.passed]


def regularity_ratio(sizer: BohrSizer, rho: float, d: int, grid) -> tuple[int, float]:
    size = sizer(rho)
    if size == 0:
        return 0, math.inf
    dd = max(d, 1)
    worst = 0.0
    for k in grid:
        if k == 0 or abs(k) > 1 / dd + 1e-15:
            continue
        worst = max(worst, abs(sizer((1 + k) * rho) / size - 1) / (dd * abs(k)))
    return size, worst


def find_regular(S, rho0: float, N: int, C_reg: float = C_REG_DEFAULT, grid=None,
                 n_candidates: int = N_CANDIDATES, threads: int | None = None) -> RegularReport:
    """Smallest of ``n_candidates`` log-spaced radii in [rho0, 2 rho0] passing the regularity test."""
    if not 0 < rho0 < 0.5:
        raise ValueError("rho0 must lie in (0, 1/2)")
    d = len(S)
    grid = default_kappa_grid(d) if grid is None else list(grid)
    sizer = BohrSizer(S, N)
    rhos = np.geomspace(rho0, 2 * rho0, n_candidates)

    def judge(rho):
        size, worst = regularity_ratio(sizer, float(rho), d, grid)
        return RegularCandidate(float(rho), size, worst, size > 0 and worst <= C_reg)

    cands = ordered_map(judge, rhos, threads)
    for c in cands:
        if c.passed:
            return RegularReport(c.rho, True, c.worst, cands)
    best = min(cands, key=lambda c: c.worst)
    return RegularReport(best.rho, False, best.worst, cands)


# -- cutoff decomposition ----------------------------------------------------

def symmetric_bohr(S, rho, N: int) -> np.ndarray:
    """Sorted {m in Z : |m| <= rho N, ||m theta|| <= rho}; always contains 0."""
    pos = build_bohr(S, rho, N).members if as_exact(rho) * N >= 1 else np.zeros(0, dtype=np.int64)
    return np.concatenate([-pos[::-1], [0], pos]).astype(np.int64)


def _int_convolve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Full linear convolution of two 0/1 arrays, rounded back to exact integers."""
    size = len(a) + len(b) - 1
    n = 1 << (size - 1).bit_length()
    out = np.fft.irfft(np.fft.rfft(a, n) * np.fft.rfft(b, n), n)[:size]
    return np.rint(out).astype(np.int64)


@dataclass
class CutoffDecomposition:
    psi1: SeqFn
    psi2: SeqFn
    l1_fourier_mass: float
    rho_prime: float
    psi2_mass: float
    b_prime_size: int
    # psi1 = counts / b_prime_size and psi2 = (b_prime_size 1_B - counts) / b_prime_size
    counts: np.ndarray = field(repr=False)
    passed: bool = True


def smoothed_indicator_counts(B: BohrSet, shifts: np.ndarray) -> np.ndarray:
    """#{m in shifts : n + m in B} for n in [N]."""
    ind = B.indicator()
    lo, hi = int(shifts.min()), int(shifts.max())
    kernel = np.zeros(hi - lo + 1, dtype=np.int64)
    kernel[shifts - lo] = 1
    # sum_m 1_B(n + m) = (1_B * reversed kernel) evaluated at the right offset
    conv = _int_convolve(ind, kernel[::-1])
    # conv[j] = sum_i ind[i] kernel[hi - lo - (j - i)], so n - 1 = i - m gives j = n - 1 + hi
    return conv[hi: hi + B.N]


def cutoff_decomposition(B: BohrSet, eps: float, max_halvings: int = 40) -> CutoffDecomposition:
    """1_B = psi1 + psi2 with psi1 = (1/|B'|) 1_B * 1_B' and B' = B(S, rho') symmetric.

    rho' starts at rho / 2 and is halved until sum |psi2| <= eps N.
    """
    ind = B.indicator()
    rho_p = as_exact(B.rho) / 2
    last = None
    for _ in range(max_halvings):
        shifts = symmetric_bohr(B.S, rho_p, B.N)
        counts = smoothed_indicator_counts(B, shifts)
        size = len(shifts)
        psi2_num = size * ind - counts
        mass = float(np.abs(psi2_num).sum()) / size
        last = (rho_p, shifts, counts, size, psi2_num, mass)
        if mass <= eps * B.N:
            break
        rho_p /= 2
    rho_p, shifts, counts, size, psi2_num, mass = last
    psi1 = counts / size
    psi2 = psi2_num / size
    fourier = np.fft.fft(psi1) / B.N
    dom = Interval(B.N)
    return CutoffDecomposition(
        psi1=SeqFn(dom, psi1),
        psi2=SeqFn(dom, psi2),
        l1_fourier_mass=float(np.abs(fourier).sum()),
        rho_prime=float(rho_p),
        psi2_mass=mass,
        b_prime_size=size,
        counts=counts,
        passed=mass <= eps * B.N,
    )


# -- locally linear phases ----------------------------------------------------

class LocalLinearityError(ValueError):
    def __init__(self, x: int, y: int, defect: float):
        super().__init__(f"phi(x+y) != phi(x) + phi(y) at x={x}, y={y} (defect {defect:.3g})")
        self.pair = (x, y)
        self.defect = defect


def _mod1_dist(x: np.ndarray) -> np.ndarray:
    f = np.mod(x, 1.0)
    return np.minimum(f, 1 - f)


def check_local_linearity(B: BohrSet, phi, samples: int = 2000, seed: int = 0) -> None:
    """Sample pairs x, y in B with x + y in B and test additivity of phi mod 1."""
    mem = B.members
    if len(mem) == 0:
        return
    member = np.zeros(B.N + 1, dtype=bool)
    member[mem] = True
    rng = np.random.default_rng(seed)
    x = rng.choice(mem, samples)
    y = rng.choice(mem, samples)
    s = x + y
    ok = s <= B.N
    ok[ok] &= member[s[ok]]
    x, y, s = x[ok], y[ok], s[ok]
    if len(x) == 0:
        return
    defect = _mod1_dist(np.asarray(phi(s), float) - np.asarray(phi(x), float) - np.asarray(phi(y), float))
    bad = np.nonzero(defect > LINEARITY_TOL)[0]
    if len(bad):
        i = bad[0]
        raise LocalLinearityError(int(x[i]), int(y[i]), float(defect[i]))


@dataclass
class ShrinkResult:
    rho_prime: float | None
    correlation: float
    scanned: list = field(default_factory=list)  # (rho', regular?, max ||phi||)


def locally_linear_shrink(B: BohrSet, phi, eta: float, eps: float, C_reg: float = C_REG_DEFAULT,
                          max_depth: int = 30) -> ShrinkResult:
    """Largest scanned regular rho' <= rho with ||phi|| <= eps on B(S, rho').

    Scans rho itself, then a regular radius in [rho 2^-(j+1), rho 2^-j] for
    j = 0, 1, ...; returns ``rho_prime=None`` if the scan runs out.
    """
    check_local_linearity(B, phi)
    mem = B.members
    corr = float(abs(np.exp(2j * np.pi * np.asarray(phi(mem), float)).mean())) if len(mem) else 0.0
    if corr < eta:
        raise ValueError(f"|E e(phi)| = {corr:.4g} is below eta = {eta}")
    scanned = []
    worst = float(_mod1_dist(np.asarray(phi(mem), float)).max()) if len(mem) else 0.0
    scanned.append((float(B.rho), True, worst))
    if worst <= eps:
        return ShrinkResult(float(B.rho), corr, scanned)
    rho = float(as_exact(B.rho))
    for j in range(max_depth):
        lo = rho * 2.0 ** -(j + 1)
        if lo >= 0.5:
            continue
        rep = find_regular(B.S, lo, B.N, C_reg)
        sub = build_bohr(B.S, rep.rho, B.N).members
        if len(sub) == 0:
            scanned.append((rep.rho, rep.passed, math.nan))
            break
        worst = float(_mod1_dist(np.asarray(phi(sub), float)).max())
        scanned.append((rep.rho, rep.passed, worst))
        if rep.passed and worst <= eps:
            return ShrinkResult(rep.rho, corr, scanned)
    return ShrinkResult(None, corr, scanned)


def enumerate_bohr_reference(S, rho, N: int) -> list[int]:
    """Independent membership loop in exact arithmetic, for cross-checking."""
    r = as_exact(rho)
    out = []
    for n in range(1, N + 1):
        if n > r * N:
            break
        good = True
        for th in S:
            x = (as_exact(th) * n) % 1
            if min(x, 1 - x) > r:
                good = False
                break
        if good:
            out.append(n)
    return out
