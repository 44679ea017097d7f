"""Free 3-step nilpotent group on three generators in Mal'cev coordinates.

Coordinates follow the basis order 1, 2, 3, 21, 211, 31, 311, 32, 322, 212,
312, 213, 313, 323; the multiplication law lives in ``_free3_law`` and is
regenerated by ``tools/gen_free3_law.py``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb

from ..exact import to_rational
from . import _free3_law as law

BASIS = law.BASIS
DIM = len(BASIS)
FLOAT_N_CAP = 1000


def _coerce(values):
    vals = list(values)
    if any(isinstance(v, float) for v in vals):
        return tuple(float(v) for v in vals)
    # the law divides by 2, so integers must become Fractions first
    return tuple(to_rational(v) for v in vals)


def index(name: str) -> int:
    return BASIS.index(name)


@dataclass(frozen=True)
class Malcev3:
    t: tuple

    def __post_init__(self):
        if len(self.t) != DIM:
            raise ValueError(f"free 3-step group has dimension {DIM}, got {len(self.t)}")
        object.__setattr__(self, "t", _coerce(self.t))

    @classmethod
    def identity(cls) -> "Malcev3":
        return cls((0,) * DIM)

    @classmethod
    def generator(cls, name: str, power=1) -> "Malcev3":
        t = [0] * DIM
        t[index(name)] = power
        return cls(tuple(t))

    @classmethod
    def from_coords(cls, **coords) -> "Malcev3":
        """Build from keyword coordinates such as ``t1=..., t312=...``."""
        t = [0] * DIM
        for key, v in coords.items():
            t[index(key.removeprefix("t"))] = v
        return cls(tuple(t))

    def __getitem__(self, name: str):
        return self.t[index(name)]

    def __mul__(self, other: "Malcev3") -> "Malcev3":
        return mul3(self, other)

    def is_integral(self) -> bool:
        return all(to_rational(v).denominator == 1 for v in self.t)


def mul3(a: Malcev3, b: Malcev3) -> Malcev3:
    return Malcev3(law.mul(a.t, b.t))


def inverse3(a: Malcev3) -> Malcev3:
    return Malcev3(law.inv(a.t))


def commutator3(a: Malcev3, b: Malcev3) -> Malcev3:
    """a^-1 b^-1 a b."""
    return inverse3(a) * inverse3(b) * a * b


def power3(g: Malcev3, n: int) -> Malcev3:
    """g^n by square-and-multiply; negative n goes through the inverse."""
    if n < 0:
        return power3(inverse3(g), -n)
    out, base = Malcev3.identity(), g
    while n:
        if n & 1:
            out = out * base
        base = base * base
        n >>= 1
    return out


def orbit3(g: Malcev3, n_max: int) -> list[Malcev3]:
    """[g^1, ..., g^n_max] by repeated right multiplication."""
    out, cur = [], Malcev3.identity()
    for _ in range(n_max):
        cur = cur * g
        out.append(cur)
    return out


@dataclass(frozen=True)
class Reduced3:
    coords: Malcev3
    gamma: Malcev3


def reduce3(g: Malcev3) -> Reduced3:
    """Right-multiply by integer powers of the basis elements, in basis order.

    Multiplying by e_b^m shifts coordinate b by m and touches only later
    coordinates, so each coordinate is settled into [0, 1) in turn.
    """
    t = g.t
    gam = Malcev3.identity().t
    for j, right in enumerate(law.RIGHT_MUL):
        m = -math.floor(t[j])
        if m:
            t = _coerce(right(t, m))
            gam = _coerce(right(gam, m))
    return Reduced3(Malcev3(t), Malcev3(gam))


def coordinate_312(t: Malcev3):
    """The reduced 312 coordinate read directly from unreduced coordinates."""
    f1, f2 = math.floor(t["1"]), math.floor(t["2"])
    v = t["312"] - t["32"] * f1 - t["31"] * f2 + t["3"] * f1 * f2
    return v - math.floor(v)


def power3_closed_coords(g: Malcev3, n: int) -> dict:
    """Coordinates 1, 2, 3, 21, 31, 32, 312 of g^n (n >= 0) in closed form."""
    t1, t2, t3 = g["1"], g["2"], g["3"]
    c2, c3 = comb(n, 2), comb(n, 3)
    return {
        "1": n * t1,
        "2": n * t2,
        "3": n * t3,
        "21": n * g["21"] + c2 * t2 * t1,
        "31": n * g["31"] + c2 * t3 * t1,
        "32": n * g["32"] + c2 * t3 * t2,
        "312": (n * g["312"] + c2 * (g["32"] * t1 + g["31"] * t2 + t3 * t1 * t2)
                + 2 * c3 * t1 * t2 * t3),
    }


def _params(alpha, beta, gamma):
    vals = (alpha, beta, gamma)
    if any(isinstance(v, float) for v in vals):
        return tuple(float(v) for v in vals)
    return tuple(to_rational(v) for v in vals)


def F312_orbit(alpha, beta, gamma, n: int):
    """Phase of the 312 coordinate of g^n Gamma, g = e_1^alpha e_2^beta e_3^gamma, via the group."""
    if isinstance(alpha, float) and abs(n) > FLOAT_N_CAP:
        raise ValueError(f"float mode is capped at n <= {FLOAT_N_CAP}")
    a, b, c = _params(alpha, beta, gamma)
    g = Malcev3.from_coords(t1=a, t2=b, t3=c)
    return reduce3(power3(g, n)).coords["312"]


def F312_orbit_many(alpha, beta, gamma, n_max: int) -> list:
    """F312_orbit for n = 1..n_max, sharing the orbit computation."""
    a, b, c = _params(alpha, beta, gamma)
    g = Malcev3.from_coords(t1=a, t2=b, t3=c)
    return [reduce3(x).coords["312"] for x in orbit3(g, n_max)]


def F312_closed(alpha, beta, gamma, n: int):
    """Bracket closed form of the 312 orbit phase, reduced mod 1."""
    a, b, c = _params(alpha, beta, gamma)
    c2 = comb(n, 2)
    fa, fb = math.floor(a * n), math.floor(b * n)
    v = (a * b * c * (2 * comb(n, 3) + c2) - c2 * b * c * fa - c2 * a * c * fb + n * c * fa * fb)
    return v - math.floor(v)


def bracket_cubic_phase(alpha, beta, gamma, n: int):
    """Reduced 312 coordinate of e_1^{alpha n} e_2^{beta n} e_3^{gamma n}.

    That element has coordinates (alpha n, beta n, gamma n, 0, ...), so the
    reading equals gamma n floor(alpha n) floor(beta n) mod 1.
    """
    a, b, c = _params(alpha, beta, gamma)
    g = Malcev3.generator("1", a * n) * Malcev3.generator("2", b * n) * Malcev3.generator("3", c * n)
    return reduce3(g).coords["312"]
