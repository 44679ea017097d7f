"""Equidistribution diagnostics for polynomial orbits on tori, rational
approximation, bounded integer relations and bounded rational linear solves."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from ._parallel import ordered_map, resolve_threads
from .exact import poly_phase_mod1, to_rational

MAX_RELATION_DIM = 6
MAX_RELATION_M = 20
RELATION_BUDGET = 50_000_000
_CHUNK = 1 << 18


class EnumerationBudgetError(ValueError):
    """The requested exhaustive search is larger than the configured budget."""


class InconsistentSystemError(ValueError):
    """Ax = b has no solution; carries the rank witness."""

    def __init__(self, rank_A: int, rank_augmented: int):
        super().__init__(f"inconsistent system: rank(A) = {rank_A} < rank([A|b]) = {rank_augmented}")
        self.rank_A = rank_A
        self.rank_augmented = rank_augmented


# -- Weyl sums ---------------------------------------------------------------

def weyl_sum(coeffs, N: int) -> complex:
    """E_{n in [N]} e(a_0 + a_1 n + ... + a_d n^d), phases reduced exactly."""
    if len(coeffs) > 4:
        raise ValueError("degree at most 3")
    if N < 1:
        raise ValueError("N must be positive")
    ph = poly_phase_mod1(coeffs, np.arange(1, N + 1))
    return complex(np.mean(np.exp(2j * np.pi * ph)))


def geometric_weyl_sum(alpha: float, N: int) -> complex:
    """Closed form of E_{n in [N]} e(alpha n)."""
    z = np.exp(2j * np.pi * alpha)
    if abs(z - 1) < 1e-15:
        return 1.0 + 0j
    return complex(z * (1 - z ** N) / (1 - z) / N)


# -- torus orbits ------------------------------------------------------------

@dataclass(frozen=True)
class TorusOrbit:
    """n -> (p_1(n), ..., p_d(n)) mod 1 for n in [N]; each p_j is a coefficient list a_0..a_deg."""

    polys: tuple
    N: int

    @classmethod
    def linear(cls, alphas, N: int) -> "TorusOrbit":
        return cls(tuple((0, a) for a in alphas), N)

    @property
    def d(self) -> int:
        return len(self.polys)

    def points(self) -> np.ndarray:
        ns = np.arange(1, self.N + 1)
        if not self.polys:
            return np.zeros((self.N, 0))
        return np.stack([poly_phase_mod1(p, ns) for p in self.polys], axis=1)


@dataclass
class EquidistResult:
    equidistributed: bool
    witness: tuple | None = None
    magnitude: float = 0.0
    max_magnitude: float = 0.0


def _canonical(vecs: np.ndarray) -> np.ndarray:
    """Mask of vectors whose first nonzero entry is positive."""
    nz = vecs != 0
    first = np.argmax(nz, axis=1)
    lead = vecs[np.arange(len(vecs)), first]
    return nz.any(axis=1) & (lead > 0)


def _box(r: int, d: int) -> np.ndarray:
    """All integer vectors in [-r, r]^d, lexicographic order."""
    if d == 0:
        return np.zeros((1, 0), dtype=np.int64)
    side = np.arange(-r, r + 1)
    grids = np.meshgrid(*([side] * d), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1).astype(np.int64)


def _lex_first(vecs: np.ndarray) -> np.ndarray:
    order = np.lexsort(vecs.T[::-1])
    return vecs[order[0]]


def equidist_test(orbit: TorusOrbit, eps: float, M_freq: int, threads: int | None = None) -> EquidistResult:
    """Scan frequencies 0 < |m|_inf <= M_freq for a large exponential sum.

    m and -m give sums of equal modulus, so only vectors whose first nonzero
    entry is positive are reported. The witness is the smallest such m by
    max-norm, then lexicographically.
    """
    if orbit.d == 0:
        return EquidistResult(True)
    pts = orbit.points()
    ms = _box(M_freq, orbit.d)
    ms = ms[_canonical(ms)]
    threads = resolve_threads(threads)

    def mags(block):
        return np.abs(np.exp(2j * np.pi * (pts @ block.T)).mean(axis=0))

    blocks = [ms[i:i + 256] for i in range(0, len(ms), 256)]
    vals = np.concatenate(ordered_map(mags, blocks, threads))
    hit = vals >= eps
    top = float(vals.max()) if len(vals) else 0.0
    if not hit.any():
        return EquidistResult(True, max_magnitude=top)
    cand = ms[hit]
    norms = np.abs(cand).max(axis=1)
    keep = norms == norms.min()
    w = _lex_first(cand[keep])
    idx = np.where((ms == w).all(axis=1))[0][0]
    return EquidistResult(False, tuple(int(x) for x in w), float(vals[idx]), top)


# -- rational approximation --------------------------------------------------

def convergents(alpha) -> list[tuple[int, int]]:
    """Continued-fraction convergents (p, q) of the exact value of alpha."""
    x = to_rational(alpha)
    out = []
    p0, q0, p1, q1 = 0, 1, 1, 0
    while True:
        a = math.floor(x)
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        out.append((p1, q1))
        rest = x - a
        if rest == 0:
            return out
        x = 1 / rest


def rational_approx(alpha, Q: int, N: int | None = None) -> tuple[int, int, float]:
    """Last convergent a/q of alpha with q <= Q, and the error |alpha - a/q|.

    ``N`` is accepted for interface symmetry with the Weyl bound and unused.
    """
    if Q < 1:
        raise ValueError("Q must be at least 1")
    best = (math.floor(to_rational(alpha)), 1)
    for p, q in convergents(alpha):
        if q > Q:
            break
        best = (p, q)
    a, q = best
    return a, q, float(abs(to_rational(alpha) - Fraction(a, q)))


def dist_to_int(x: float) -> float:
    f = x - math.floor(x)
    return min(f, 1 - f)


# -- integer relations -------------------------------------------------------

def integer_relation(alphas, M: int, tol: float = 0.0, budget: int = RELATION_BUDGET,
                     threads: int | None = None):
    """Smallest nonzero m in [-M, M]^d with ||m . alpha||_{R/Z} <= tol, or None.

    Rational inputs (Fractions or "p/q" strings) are tested exactly; any float
    switches to floating-point residuals. The search is exhaustive, so None
    certifies that no such relation exists in the box.
    """
    d = len(alphas)
    if d == 0 or d > MAX_RELATION_DIM:
        raise ValueError(f"need 1 <= d <= {MAX_RELATION_DIM}")
    if not 1 <= M <= MAX_RELATION_M:
        raise ValueError(f"need 1 <= M <= {MAX_RELATION_M}")
    if (2 * M + 1) ** d > budget:
        raise EnumerationBudgetError(f"{(2 * M + 1) ** d} candidates exceed budget {budget}")
    exact = not any(isinstance(a, (float, np.floating)) for a in alphas)
    if exact:
        qs = [to_rational(a) for a in alphas]
        L = math.lcm(*(q.denominator for q in qs))
        nums = np.array([q.numerator * (L // q.denominator) for q in qs], dtype=object)
        if all(abs(int(x)) * M * d < 2 ** 62 for x in nums) and L < 2 ** 62:
            nums = nums.astype(np.int64)
        threshold = math.floor(to_rational(tol) * L)
    else:
        vals = np.array([float(a) for a in alphas])

    def residual(block):
        if exact:
            s = block @ nums if nums.dtype != object else block.astype(object) @ nums
            r = np.mod(s, L)
            return np.asarray(np.minimum(r, L - r) <= threshold, dtype=bool)
        s = block @ vals
        f = s - np.floor(s)
        return np.minimum(f, 1 - f) <= tol

    for r in range(1, M + 1):
        box = _box(r, d)
        shell = box[(np.abs(box).max(axis=1) == r) & _canonical(box)]
        blocks = [shell[i:i + _CHUNK] for i in range(0, len(shell), _CHUNK)]
        ok = np.concatenate(ordered_map(residual, blocks, threads)) if blocks else np.zeros(0, bool)
        if ok.any():
            return tuple(int(x) for x in _lex_first(shell[ok]))
    return None


def relation_residual(alphas, m) -> float:
    s = sum(to_rational(a) * int(k) for a, k in zip(alphas, m))
    return dist_to_int(float(s - math.floor(s)))


# -- bounded solutions of rational systems ------------------------------------

def _complexity(q: Fraction) -> int:
    return max(abs(q.numerator), q.denominator)


@dataclass(frozen=True)
class RationalMatrixSystem:
    A: tuple
    b: tuple
    M: int | None = None

    def __post_init__(self):
        A = tuple(tuple(to_rational(x) for x in row) for row in self.A)
        b = tuple(to_rational(x) for x in self.b)
        if not A or any(len(row) != len(A[0]) for row in A):
            raise ValueError("A must be a non-empty rectangular matrix")
        if len(b) != len(A):
            raise ValueError("b must have one entry per row of A")
        if self.M is not None:
            worst = max(_complexity(x) for row in A for x in row)
            if worst > self.M or any(abs(x) > self.M for x in b):
                raise ValueError(f"entries exceed the complexity bound M={self.M}")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.A), len(self.A[0])


@dataclass(frozen=True)
class BoundedSolution:
    x: tuple
    bound: Fraction
    rank: int


def _dm(rows, ncols) -> DomainMatrix:
    return DomainMatrix([[QQ(x.numerator, x.denominator) for x in row] for row in rows], (len(rows), ncols), QQ)


def _frac(v) -> Fraction:
    return Fraction(int(v.numerator), int(v.denominator))


def solve_bounded_rational(sys: RationalMatrixSystem) -> BoundedSolution:
    """Solve Ax = b exactly by completing the pivot rows to an invertible matrix.

    Row-reduce [A | b]; keep the nonzero reduced rows, add the unit vectors of
    the free columns with right-hand side 0, and invert the resulting square
    matrix. Raises :class:`InconsistentSystemError` if b is not in the column
    space of A.
    """
    m, n = sys.shape
    aug = _dm([list(row) + [bi] for row, bi in zip(sys.A, sys.b)], n + 1)
    R, pivots = aug.rref()
    if n in pivots:
        raise InconsistentSystemError(len(pivots) - 1, len(pivots))
    rows = R.to_list()
    r = len(pivots)
    square = [[_frac(v) for v in rows[i][:n]] for i in range(r)]
    rhs = [_frac(rows[i][n]) for i in range(r)]
    for j in range(n):
        if j not in pivots:
            unit = [Fraction(0)] * n
            unit[j] = Fraction(1)
            square.append(unit)
            rhs.append(Fraction(0))
    inv = _dm(square, n).inv().to_list()
    x = tuple(sum((_frac(inv[i][j]) * rhs[j] for j in range(n)), Fraction(0)) for i in range(n))
    return BoundedSolution(x, max(abs(v) for v in x), r)


def system_residual(sys: RationalMatrixSystem, x) -> tuple:
    return tuple(sum((a * xi for a, xi in zip(row, x)), Fraction(0)) - bi for row, bi in zip(sys.A, sys.b))

