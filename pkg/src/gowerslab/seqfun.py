"""1-bounded sequences on [N] and Z_M, phase generators and multiplicative derivatives."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from typing import Callable, Sequence, Union

import numpy as np

from .exact import poly_phase_mod1

BOUND_SLACK = 1e-12


class BoundednessError(ValueError):
    """Raised when a sequence is not 1-bounded."""


@dataclass(frozen=True)
class Interval:
    N: int

    def __post_init__(self):
        if self.N < 1:
            raise ValueError(f"interval length must be positive, got {self.N}")

    @property
    def size(self) -> int:
        return self.N

    def points(self) -> np.ndarray:
        return np.arange(1, self.N + 1)

    def describe(self) -> dict:
        return {"type": "interval", "N": self.N}


@dataclass(frozen=True)
class Cyclic:
    M: int

    def __post_init__(self):
        if self.M < 2:
            raise ValueError(f"cyclic group order must be at least 2, got {self.M}")

    @property
    def size(self) -> int:
        return self.M

    def points(self) -> np.ndarray:
        return np.arange(self.M)

    def describe(self) -> dict:
        return {"type": "cyclic", "M": self.M}


Domain = Union[Interval, Cyclic]


def e(x) -> np.ndarray:
    """e(x) = exp(2 pi i x) for x in cycles; x is reduced mod 1 first."""
    x = np.asarray(x, dtype=float)
    return np.exp(2j * np.pi * np.mod(x, 1.0))


@dataclass(frozen=True)
class SeqFn:
    """A complex 1-bounded function on an interval [N] or a cyclic group Z_M.

    ``values[i]`` is the value at the i-th domain point: n = i + 1 on an
    interval, x = i on a cyclic group.
    """

    domain: Domain
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        vals = np.array(self.values, dtype=np.complex128)
        if vals.ndim != 1 or vals.shape[0] != self.domain.size:
            raise ValueError(f"expected {self.domain.size} values, got shape {vals.shape}")
        if not np.all(np.isfinite(vals)):
            raise ValueError("values must be finite")
        worst = float(np.max(np.abs(vals))) if vals.size else 0.0
        if worst > 1 + BOUND_SLACK:
            raise BoundednessError(f"sequence is not 1-bounded (max |f| = {worst!r})")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def size(self) -> int:
        return self.domain.size

    def restrict(self, N: int) -> "SeqFn":
        """First N values as a function on [N]."""
        return SeqFn(Interval(N), self.values[:N])

    def __mul__(self, other: "SeqFn") -> "SeqFn":
        if other.domain != self.domain:
            raise ValueError("domains differ")
        return SeqFn(self.domain, self.values * other.values)

    def conj(self) -> "SeqFn":
        return SeqFn(self.domain, np.conj(self.values))


def constant(domain: Domain, value: complex = 1.0) -> SeqFn:
    return SeqFn(domain, np.full(domain.size, value, dtype=np.complex128))


def random_bounded(domain: Domain, rng: np.random.Generator) -> SeqFn:
    """Random function with |f| <= 1: uniform modulus and phase."""
    r = rng.random(domain.size)
    phase = rng.random(domain.size)
    return SeqFn(domain, r * np.exp(2j * np.pi * phase))


# -- phase generators -------------------------------------------------------

@dataclass(frozen=True)
class PurePoly:
    """e(alpha_0 + alpha_1 n + ... + alpha_d n^d), coefficients in cycles."""

    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) > 4:
            raise ValueError("pure polynomial phases have degree at most 3")

    def phases(self, ns) -> np.ndarray:
        return poly_phase_mod1(self.coeffs, ns)


@dataclass(frozen=True)
class BracketPhase:
    """e(expr(n)) for a bracket expression in the variable ``n``."""

    expr: object

    def phases(self, ns) -> np.ndarray:
        from .bracket import eval_mod1_array

        return eval_mod1_array(self.expr, ns)


@dataclass(frozen=True)
class NilChar:
    """e(phase_fn(n)) where phase_fn reads a coordinate of a reduced nilsequence orbit."""

    phase_fn: Callable[[Sequence[int]], np.ndarray]
    label: str = "nilchar"

    def phases(self, ns) -> np.ndarray:
        return np.asarray(self.phase_fn(ns), dtype=float)


@dataclass(frozen=True)
class FileData:
    path: str


PhaseSpec = Union[PurePoly, BracketPhase, NilChar, FileData]


def from_phase(spec: PhaseSpec, domain: Domain) -> SeqFn:
    """Materialise a phase generator on a domain."""
    if isinstance(spec, FileData):
        f = read_csv(spec.path, kind=type(domain).__name__.lower())
        if f.domain != domain:
            raise ValueError(f"file domain {f.domain} does not match requested {domain}")
        return f
    return SeqFn(domain, e(spec.phases(domain.points())))


# -- operations ---------------------------------------------------------------

def embed_interval(f: SeqFn, k: int, M_tilde: int | None = None) -> SeqFn:
    """Zero-pad f on [N] into Z_M with M >= 2^k N; n in 1..N keeps its value."""
    if not isinstance(f.domain, Interval):
        raise TypeError("embed_interval expects a function on an interval")
    N = f.domain.N
    need = (2 ** k) * N
    if M_tilde is None:
        M_tilde = need
    if M_tilde < need:
        raise ValueError(f"M_tilde={M_tilde} is smaller than 2^k N = {need}")
    return _pad(f, M_tilde)


def _pad(f: SeqFn, M: int) -> SeqFn:
    vals = np.zeros(M, dtype=np.complex128)
    vals[1:f.size + 1] = f.values
    return SeqFn(Cyclic(M), vals)


def mult_derivative(f: SeqFn, h: int) -> SeqFn:
    """Delta_h f(x) = f(x+h) * conj(f(x)) on Z_M, with h taken mod M."""
    if not isinstance(f.domain, Cyclic):
        raise TypeError("mult_derivative expects a function on a cyclic group")
    v = f.values
    return SeqFn(f.domain, np.roll(v, -(h % f.size)) * np.conj(v))


# -- FileData CSV -------------------------------------------------------------

def write_csv(f: SeqFn, path) -> None:
    base = 1 if isinstance(f.domain, Interval) else 0
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["index", "re", "im"])
        for i, z in enumerate(f.values):
            w.writerow([i + base, repr(float(z.real)), repr(float(z.imag))])


def read_csv(path, kind: str = "interval") -> SeqFn:
    """Read ``index,re,im`` rows; indices are 1-based for intervals, 0-based for cyclic."""
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    if not rows or set(rows[0]) != {"index", "re", "im"}:
        raise ValueError(f"{path}: expected header index,re,im")
    idx = np.array([int(r["index"]) for r in rows])
    vals = np.array([complex(float(r["re"]), float(r["im"])) for r in rows])
    base = 1 if kind == "interval" else 0
    order = np.argsort(idx)
    idx, vals = idx[order], vals[order]
    if not np.array_equal(idx, np.arange(base, base + len(rows))):
        raise ValueError(f"{path}: indices must run contiguously from {base}")
    domain = Interval(len(rows)) if kind == "interval" else Cyclic(len(rows))
    return SeqFn(domain, vals)
