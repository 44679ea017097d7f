"""Exact rational helpers: parsing, mod-1 arithmetic and a vectorised rational array."""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Integral, Rational

import numpy as np

_LIMIT = 1 << 62


def to_rational(x) -> Fraction:
    """Convert ints, Fractions, floats and ``"p/q"`` strings to an exact Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, (Integral, Rational)):
        return Fraction(int(x.numerator), int(x.denominator))
    if isinstance(x, (float, np.floating)):
        if not math.isfinite(float(x)):
            raise ValueError(f"parameter must be finite, got {x!r}")
        return Fraction(float(x))
    return Fraction(x)


def parse_number(x, rational: bool):
    """Parse a JSON-ish scalar into a Fraction (rational mode) or a float."""
    if rational:
        return to_rational(x)
    if isinstance(x, str):
        return float(Fraction(x.strip()))
    return float(x)


def fmt_rational(x) -> str:
    q = to_rational(x)
    return f"{q.numerator}/{q.denominator}"


def floor(x):
    return math.floor(x)


def frac(x):
    """Fractional part in [0, 1); exact for Fractions."""
    return x - math.floor(x)


def dist_to_int(x) -> float:
    """||x||_{R/Z}, the distance to the nearest integer."""
    f = frac(x)
    return float(min(f, 1 - f))


def centered_mod1(x):
    """Representative of x mod 1 in [-1/2, 1/2)."""
    f = frac(x)
    return f - 1 if f >= Fraction(1, 2) else f


def poly_phase_mod1(coeffs, ns) -> np.ndarray:
    """sum_i coeffs[i] * n^i mod 1 for every n in ``ns``, evaluated exactly.

    Float coefficients are converted to their exact dyadic value first, so
    large powers of n do not lose the fractional part.
    """
    ns = [int(n) for n in np.atleast_1d(ns)]
    qs = [to_rational(c) for c in coeffs]
    if not qs:
        return np.zeros(len(ns))
    L = 1
    for q in qs:
        L = math.lcm(L, q.denominator)
    scaled = [q.numerator * (L // q.denominator) for q in qs]
    out = np.empty(len(ns))
    for idx, n in enumerate(ns):
        acc = 0
        p = 1
        for s in scaled:
            acc += s * p
            p *= n
        out[idx] = (acc % L) / L
    return out


def _maxabs(a) -> int:
    if a.size == 0:
        return 0
    return max(abs(int(a.max())), abs(int(a.min())))


def _as_object(a):
    return a.astype(object)


_obj_gcd = np.frompyfunc(math.gcd, 2, 1)
_obj_lcm = np.frompyfunc(math.lcm, 2, 1)


class RatVec:
    """Array of exact rationals ``num / den`` with elementwise denominators.

    Values live in int64 while they provably fit and silently migrate to
    Python-int object arrays otherwise, so results are always exact.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        num = np.asarray(num)
        den = np.asarray(den)
        num, den = np.broadcast_arrays(num, den)
        if num.dtype == object or den.dtype == object:
            num, den = num.astype(object), den.astype(object)
        else:
            num, den = num.astype(np.int64), den.astype(np.int64)
        self.num = num
        self.den = den

    @classmethod
    def integers(cls, ns) -> "RatVec":
        ns = np.asarray(ns, dtype=np.int64)
        return cls(ns, np.ones_like(ns))

    @classmethod
    def constant(cls, value, shape=()) -> "RatVec":
        """Constant (or per-row array of constants) broadcast to ``shape``."""
        if isinstance(value, np.ndarray) and value.dtype == object:
            qs = [to_rational(v) for v in value.ravel()]
            num = np.array([q.numerator for q in qs], dtype=object).reshape(value.shape)
            den = np.array([q.denominator for q in qs], dtype=object).reshape(value.shape)
            if all(abs(v) < _LIMIT for v in list(num.ravel()) + list(den.ravel())):
                num, den = num.astype(np.int64), den.astype(np.int64)
        else:
            q = to_rational(value)
            if abs(q.numerator) < _LIMIT and q.denominator < _LIMIT:
                num, den = np.int64(q.numerator), np.int64(q.denominator)
            else:
                num, den = np.array(q.numerator, dtype=object), np.array(q.denominator, dtype=object)
        num = np.broadcast_to(num, np.broadcast_shapes(np.shape(num), shape))
        return cls(num, np.broadcast_to(den, num.shape))

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(x) -> "RatVec":
        if isinstance(x, RatVec):
            return x
        return RatVec.constant(x)

    @staticmethod
    def _promote(*arrs):
        return tuple(_as_object(a) for a in arrs)

    def _reduced(self) -> "RatVec":
        num, den = self.num, self.den
        if num.dtype == object:
            g = _obj_gcd(num, den)
            g = np.where(g == 0, 1, g)
            return RatVec(num // g, den // g)
        g = np.gcd(num, den)
        g = np.where(g == 0, 1, g)
        return RatVec(num // g, den // g)

    def __add__(self, other):
        o = RatVec._coerce(other)
        a_num, a_den, b_num, b_den = self.num, self.den, o.num, o.den
        obj = any(x.dtype == object for x in (a_num, a_den, b_num, b_den))
        if not obj:
            bound = _maxabs(a_num) * _maxabs(b_den) + _maxabs(b_num) * _maxabs(a_den)
            obj = bound >= _LIMIT or _maxabs(a_den) * _maxabs(b_den) >= _LIMIT
        if obj:
            a_num, a_den, b_num, b_den = self._promote(a_num, a_den, b_num, b_den)
            L = _obj_lcm(a_den, b_den)
        else:
            L = np.lcm(a_den, b_den)
        return RatVec(a_num * (L // a_den) + b_num * (L // b_den), L)._reduced()

    __radd__ = __add__

    def __neg__(self):
        return RatVec(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RatVec._coerce(other))

    def __rsub__(self, other):
        return RatVec._coerce(other) + (-self)

    def __mul__(self, other):
        o = RatVec._coerce(other)
        a_num, a_den, b_num, b_den = self.num, self.den, o.num, o.den
        obj = any(x.dtype == object for x in (a_num, a_den, b_num, b_den))
        if not obj:
            obj = (_maxabs(a_num) * _maxabs(b_num) >= _LIMIT
                   or _maxabs(a_den) * _maxabs(b_den) >= _LIMIT)
        if obj:
            a_num, a_den, b_num, b_den = self._promote(a_num, a_den, b_num, b_den)
        return RatVec(a_num * b_num, a_den * b_den)._reduced()

    __rmul__ = __mul__

    def floor(self) -> "RatVec":
        q = self.num // self.den
        return RatVec(q, np.ones_like(self.den))

    def frac(self) -> "RatVec":
        return RatVec(self.num % self.den, self.den)._reduced()

    mod1 = frac

    def is_integral(self) -> np.ndarray:
        return np.asarray(self.num % self.den == 0, dtype=bool)

    def to_float(self) -> np.ndarray:
        if self.num.dtype == object:
            return np.array([float(Fraction(int(a), int(b))) for a, b in
                             zip(self.num.ravel(), self.den.ravel())]).reshape(self.num.shape)
        return self.num / self.den

    def item(self, idx) -> Fraction:
        return Fraction(int(self.num[idx]), int(self.den[idx]))

    @property
    def shape(self):
        return self.num.shape

    def __repr__(self):
        return f"RatVec(shape={self.shape}, dtype={self.num.dtype})"
