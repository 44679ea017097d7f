"""Prime tables, the 5-term AP singular constant gamma and exact counts of
5-term arithmetic progressions of primes."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import gmpy2
import numpy as np

from ._parallel import chunks, ordered_map, resolve_threads

SIEVE_LIMIT = 10 ** 8
COUNT_LIMIT = 10 ** 6
PRECISION_BITS = 128
EXACT_GAMMA_LIMIT = 2000
# -log(p^3 (p-4) / (p-1)^4) <= 7 / p^2 once p^2 - 24 p - 1 >= 0
SIMPLE_TAIL_FROM = 29
DEFAULT_GAMMA_P = 10 ** 6


@dataclass(frozen=True)
class PrimeTable:
    N: int
    is_prime: np.ndarray = field(repr=False)
    primes: np.ndarray = field(repr=False)

    def __contains__(self, n: int) -> bool:
        return 0 <= n <= self.N and bool(self.is_prime[n])

    def __len__(self) -> int:
        return len(self.primes)


def sieve(N: int) -> PrimeTable:
    """Sieve of Eratosthenes on 0..N."""
    if N > SIEVE_LIMIT:
        raise MemoryError(f"sieve limit is {SIEVE_LIMIT}")
    flags = np.ones(max(N + 1, 2), dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(N) + 1):
        if flags[p]:
            flags[p * p::p] = False
    flags = flags[: N + 1]
    flags.setflags(write=False)
    primes = np.nonzero(flags)[0].astype(np.int64)
    primes.setflags(write=False)
    return PrimeTable(N, flags, primes)


# -- the singular constant ----------------------------------------------------

def gamma_factor(p: int) -> Fraction:
    return Fraction(p ** 3 * (p - 4), (p - 1) ** 4)


def _log_factor_bound(p: int) -> Fraction:
    """Upper bound x / (1 - x) for -log(1 - x), 1 - x = p^3 (p-4) / (p-1)^4."""
    return Fraction(6 * p * p - 4 * p + 1, p ** 3 * (p - 4))


@dataclass(frozen=True)
class GammaEstimate:
    P: int
    value: object  # gmpy2.mpfr at PRECISION_BITS
    tail_bound: float
    exact: Fraction | None = None

    def __float__(self) -> float:
        return float(self.value)

    def digits(self, n: int = 30) -> str:
        return format(self.value, f".{n}f")


def _tail_sum_bound(P: int) -> float:
    """Upper bound for sum_{p > P} -log(factor_p)."""
    total = Fraction(0)
    q = P + 1
    while q < SIMPLE_TAIL_FROM:
        if q >= 5 and all(q % r for r in range(2, math.isqrt(q) + 1)):
            total += _log_factor_bound(q)
        q += 1
    m = max(q, SIMPLE_TAIL_FROM)
    m += (m + 1) % 2  # first odd integer >= m; primes beyond are odd
    # sum over odd n >= m of 7 / n^2 <= 7 (1/m^2 + 1/(2m))
    return float(total) + 7 * (1 / m ** 2 + 1 / (2 * m))


def hl_gamma(P: int) -> GammaEstimate:
    """27/16 * prod_{5 <= p <= P} p^3 (p-4) / (p-1)^4 at 128-bit precision.

    The product is also returned exactly when P is small.
    """
    if P < 5:
        raise ValueError("P must be at least 5")
    primes = sieve(P).primes
    primes = primes[primes >= 5]
    exact = None
    with gmpy2.context(precision=PRECISION_BITS):
        val = gmpy2.mpfr(27) / 16
        for p in primes.tolist():
            val = val * (p ** 3 * (p - 4)) / (p - 1) ** 4
        if P <= EXACT_GAMMA_LIMIT:
            exact = Fraction(27, 16)
            for p in primes.tolist():
                exact *= gamma_factor(p)
            val = gmpy2.mpfr(exact.numerator) / exact.denominator
        tail = float(val) * _tail_sum_bound(P)
    return GammaEstimate(P, val, tail, exact)


# -- counting 5-term progressions ---------------------------------------------

def _count_block(table: PrimeTable, N: int, p1s) -> int:
    flags, primes = table.is_prime, table.primes
    total = 0
    for p1 in p1s:
        hi = p1 + (N - p1) // 4
        lo_i = np.searchsorted(primes, p1, side="right")
        hi_i = np.searchsorted(primes, hi, side="right")
        if hi_i <= lo_i:
            continue
        d = primes[lo_i:hi_i] - p1
        ok = flags[p1 + 2 * d] & flags[p1 + 3 * d] & flags[p1 + 4 * d]
        total += int(ok.sum())
    return total


def count_prime_5aps(N: int, threads: int | None = None, table: PrimeTable | None = None) -> int:
    """#{(p, d) : d >= 1, p, p+d, ..., p+4d all prime, p + 4d <= N}."""
    if N > COUNT_LIMIT:
        raise ValueError(f"count limit is N <= {COUNT_LIMIT}")
    if N < 5:
        return 0
    table = table if table is not None and table.N >= N else sieve(N)
    p1s = [int(p) for p in table.primes if p + 4 <= N]
    threads = resolve_threads(threads)
    blocks = chunks(p1s, 8 * threads)
    return sum(ordered_map(lambda b: _count_block(table, N, b), blocks, threads))


def count_prime_5aps_bruteforce(N: int) -> int:
    """Reference count: every prime p and every step d, primality by trial division."""
    def is_prime(n):
        return n >= 2 and all(n % r for r in range(2, math.isqrt(n) + 1))

    count = 0
    for p in range(2, N + 1):
        if not is_prime(p):
            continue
        for d in range(1, (N - p) // 4 + 1):
            if all(is_prime(p + j * d) for j in range(1, 5)):
                count += 1
    return count


@dataclass
class AsymptoticComparison:
    N: int
    count: int
    prediction: float
    ratio: float
    gamma: float
    gamma_P: int


def compare_asymptotic(N: int, gamma_P: int = DEFAULT_GAMMA_P, threads: int | None = None,
                       gamma: GammaEstimate | None = None) -> AsymptoticComparison:
    """Exact count against gamma N^2 / log^5 N (natural logarithm)."""
    if N < 1000:
        raise ValueError("N must be at least 1000")
    g = gamma if gamma is not None else hl_gamma(gamma_P)
    count = count_prime_5aps(N, threads)
    pred = float(g) * N * N / math.log(N) ** 5
    return AsymptoticComparison(N, count, pred, count / pred, float(g), g.P)
