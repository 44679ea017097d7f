"""Free 2-step nilpotent group on k generators in Mal'cev coordinates.

An element is (t_1, ..., t_k, t_[2,1], t_[3,1], t_[3,2], ..., t_[k,k-1]) with
product (t * u)_i = t_i + u_i and (t * u)_[i',i] = t_[i',i] + u_[i',i] + t_i' u_i.
The lattice consists of the points with integer coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..exact import to_rational


def pairs(k: int) -> list[tuple[int, int]]:
    """Top-order index pairs (i', i), i' > i, in coordinate order."""
    return [(ip, i) for ip in range(2, k + 1) for i in range(1, ip)]


def _coerce(values):
    vals = list(values)
    if any(isinstance(v, float) for v in vals):
        return tuple(float(v) for v in vals)
    return tuple(to_rational(v) for v in vals)


@dataclass(frozen=True)
class Malcev2:
    k: int
    t: tuple

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("need at least one generator")
        dim = self.k + self.k * (self.k - 1) // 2
        if len(self.t) != dim:
            raise ValueError(f"free 2-step group on {self.k} generators has dimension {dim}, got {len(self.t)}")
        object.__setattr__(self, "t", _coerce(self.t))

    @classmethod
    def identity(cls, k: int) -> "Malcev2":
        return cls(k, (0,) * (k + k * (k - 1) // 2))

    @classmethod
    def generator(cls, k: int, i: int, power=1) -> "Malcev2":
        """e_i^power."""
        t = [0] * (k + k * (k - 1) // 2)
        t[i - 1] = power
        return cls(k, tuple(t))

    @property
    def horizontal(self) -> tuple:
        return self.t[: self.k]

    def top(self, ip: int, i: int):
        """Coordinate t_[i',i]."""
        return self.t[self.k + pairs(self.k).index((ip, i))]

    def __mul__(self, other: "Malcev2") -> "Malcev2":
        return mul2(self, other)

    def is_integral(self) -> bool:
        return all(to_rational(v).denominator == 1 for v in self.t)


def mul2(a: Malcev2, b: Malcev2) -> Malcev2:
    if a.k != b.k:
        raise ValueError(f"dimension mismatch: k={a.k} vs k={b.k}")
    k = a.k
    t, u = a.t, b.t
    hor = [t[i] + u[i] for i in range(k)]
    top = [t[k + j] + u[k + j] + t[ip - 1] * u[i - 1] for j, (ip, i) in enumerate(pairs(k))]
    return Malcev2(k, tuple(hor + top))


def inverse2(a: Malcev2) -> Malcev2:
    k, t = a.k, a.t
    hor = [-t[i] for i in range(k)]
    top = [-t[k + j] + t[ip - 1] * t[i - 1] for j, (ip, i) in enumerate(pairs(k))]
    return Malcev2(k, tuple(hor + top))


def commutator2(a: Malcev2, b: Malcev2) -> Malcev2:
    """a^-1 b^-1 a b."""
    return inverse2(a) * inverse2(b) * a * b


@dataclass(frozen=True)
class Reduced2:
    coords: Malcev2
    gamma: Malcev2


def reduce2(g: Malcev2) -> Reduced2:
    """Move g into the fundamental domain [0,1)^dim by a lattice element on the right."""
    k, t = g.k, g.t
    fl = [math.floor(t[i]) for i in range(k)]
    hor = [t[i] - fl[i] for i in range(k)]
    top, gam_top = [], []
    for j, (ip, i) in enumerate(pairs(k)):
        v = t[k + j] - t[ip - 1] * fl[i - 1]
        f = math.floor(v)
        top.append(v - f)
        gam_top.append(-f)
    return Reduced2(Malcev2(k, tuple(hor + top)), Malcev2(k, tuple([-x for x in fl] + gam_top)))


# -- polynomial sequences -----------------------------------------------------

@dataclass(frozen=True)
class PolySeq2:
    """g(n) = (xi_1 n, ..., xi_k n, q_[i',i](n)) with q = a n^2 + b n + c.

    ``quad`` maps (i', i) to (a, b, c); missing pairs are zero.
    """

    xi: tuple
    quad: dict

    def __post_init__(self):
        object.__setattr__(self, "xi", _coerce(self.xi))
        for (ip, i) in self.quad:
            if not 1 <= i < ip <= len(self.xi):
                raise ValueError(f"bad coordinate pair {(ip, i)}")
        object.__setattr__(self, "quad", {key: _coerce(v) for key, v in self.quad.items()})

    @property
    def k(self) -> int:
        return len(self.xi)

    def q(self, ip: int, i: int):
        return self.quad.get((ip, i), (0, 0, 0))

    def at(self, n: int) -> Malcev2:
        hor = [x * n for x in self.xi]
        top = []
        for ip, i in pairs(self.k):
            a, b, c = self.q(ip, i)
            top.append(a * n * n + b * n + c)
        return Malcev2(self.k, tuple(hor + top))

    def derivative(self, h: int):
        """The sequence n -> g(n+h) g(n)^-1 as a callable."""
        return lambda n: self.at(n + h) * inverse2(self.at(n))


def iterated_derivative(seq, hs):
    """Compose n -> g(n+h) g(n)^-1 over the shifts in ``hs``.

    ``seq`` is a PolySeq2 or any callable mapping n to a group element.
    """
    f = seq.at if isinstance(seq, PolySeq2) else seq
    for h in hs:
        f = (lambda g, h: (lambda n: g(n + h) * inverse2(g(n))))(f, h)
    return f


def nilchar2(ps: PolySeq2, i: int, ip: int, n: int):
    """Coordinate [i', i] of the reduced point g(n) Gamma, in cycles."""
    if not i < ip:
        raise ValueError("need i < i'")
    return reduce2(ps.at(n)).coords.top(ip, i)


def nilchar2_closed_form(ps: PolySeq2, i: int, ip: int, n: int):
    """Bracket closed form of :func:`nilchar2`, reduced mod 1.

    xi_i n floor(xi_i' n) + (a - xi_i xi_i') n^2 + b n + c + {xi_i' n}{xi_i n}.
    The product of fractional parts is the lower-order term left over when the
    bracket is flipped to put the floor on xi_i' n.
    """
    xi_i, xi_ip = ps.xi[i - 1], ps.xi[ip - 1]
    a, b, c = ps.q(ip, i)
    x, y = xi_i * n, xi_ip * n
    v = (x * math.floor(y) + (a - xi_i * xi_ip) * n * n + b * n + c
         + (y - math.floor(y)) * (x - math.floor(x)))
    return v - math.floor(v)


def heisenberg_orbit_phase(alpha, n: int):
    """Coordinate [2,1] of the reduced point g^n Gamma for g = (2 alpha, 1, 0)."""
    g = Malcev2(2, (2 * to_rational(alpha) if not isinstance(alpha, float) else 2 * alpha, 1, 0))
    return reduce2(power2(g, n)).coords.t[2]


def power2(g: Malcev2, n: int) -> Malcev2:
    if n < 0:
        return power2(inverse2(g), -n)
    out, base = Malcev2.identity(g.k), g
    while n:
        if n & 1:
            out = out * base
        base = base * base
        n >>= 1
    return out

