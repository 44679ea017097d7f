"""Bracket-polynomial expressions, the floor/fractional-part identities they
obey, and the trilinear bracket form with its symmetrisation."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exact import RatVec, to_rational

MODES = ("rational", "float")
FLOAT_TOL = 1e-10


# -- expression tree ----------------------------------------------------------

class BracketExpr:
    """Node of an expression tree in the integer variable ``n``.

    Build expressions with ``n``, ``const``, ``floor``, ``frac`` and the usual
    arithmetic operators; evaluate with :meth:`evaluate`.
    """

    def evaluate(self, ns, mode: str = "rational"):
        """Value at every n in ``ns``: a :class:`RatVec` (rational) or float array."""
        if mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if mode == "rational":
            return self._rat(RatVec.integers(ns))
        return self._flt(np.asarray(ns, dtype=float))

    def __add__(self, other):
        return Add((self, _wrap(other)))

    def __radd__(self, other):
        return Add((_wrap(other), self))

    def __sub__(self, other):
        return Add((self, Mul(Const(-1), _wrap(other))))

    def __rsub__(self, other):
        return Add((_wrap(other), Mul(Const(-1), self)))

    def __mul__(self, other):
        return Mul(self, _wrap(other))

    def __rmul__(self, other):
        return Mul(_wrap(other), self)

    def __neg__(self):
        return Mul(Const(-1), self)


def _wrap(x) -> BracketExpr:
    return x if isinstance(x, BracketExpr) else Const(x)


@dataclass(frozen=True, eq=False)
class Const(BracketExpr):
    value: object

    def _rat(self, n):
        v = self.value
        if isinstance(v, np.ndarray):
            return RatVec.constant(v.astype(object))
        return RatVec.constant(v)

    def _flt(self, n):
        v = self.value
        if isinstance(v, np.ndarray):
            return np.array([float(to_rational(x)) for x in v.ravel()]).reshape(v.shape)
        return float(v) if not isinstance(v, str) else float(Fraction(v))

    def __str__(self):
        v = self.value
        return "c" if isinstance(v, np.ndarray) else str(v)


@dataclass(frozen=True, eq=False)
class Var(BracketExpr):
    name: str = "n"

    def _rat(self, n):
        return n

    def _flt(self, n):
        return n

    def __str__(self):
        return self.name


@dataclass(frozen=True, eq=False)
class Add(BracketExpr):
    terms: tuple

    def _rat(self, n):
        acc = self.terms[0]._rat(n)
        for t in self.terms[1:]:
            acc = acc + t._rat(n)
        return acc

    def _flt(self, n):
        acc = self.terms[0]._flt(n)
        for t in self.terms[1:]:
            acc = acc + t._flt(n)
        return acc

    def __str__(self):
        return "(" + " + ".join(str(t) for t in self.terms) + ")"


@dataclass(frozen=True, eq=False)
class Mul(BracketExpr):
    a: BracketExpr
    b: BracketExpr

    def _rat(self, n):
        return self.a._rat(n) * self.b._rat(n)

    def _flt(self, n):
        return self.a._flt(n) * self.b._flt(n)

    def __str__(self):
        return f"{self.a}*{self.b}"


@dataclass(frozen=True, eq=False)
class Floor(BracketExpr):
    a: BracketExpr

    def _rat(self, n):
        return self.a._rat(n).floor()

    def _flt(self, n):
        return np.floor(self.a._flt(n))

    def __str__(self):
        return f"floor({self.a})"


@dataclass(frozen=True, eq=False)
class Frac(BracketExpr):
    a: BracketExpr

    def _rat(self, n):
        return self.a._rat(n).frac()

    def _flt(self, n):
        x = self.a._flt(n)
        return x - np.floor(x)

    def __str__(self):
        return f"{{{self.a}}}"


n = Var()


def const(x) -> Const:
    return Const(x)


def floor(x) -> Floor:
    return Floor(_wrap(x))


def frac(x) -> Frac:
    return Frac(_wrap(x))


def eval_mod1(expr: BracketExpr, n_value: int, mode: str = "rational"):
    """Value of ``expr`` at a single integer n, reduced to [0, 1)."""
    v = expr.evaluate([n_value], mode)
    if mode == "rational":
        return v.frac().item(0)
    x = float(v[0])
    return x - math.floor(x)


def eval_mod1_array(expr: BracketExpr, ns, mode: str = "rational") -> np.ndarray:
    v = expr.evaluate(ns, mode)
    if mode == "rational":
        return v.frac().to_float()
    return np.mod(v, 1.0)


# -- the fundamental identity -------------------------------------------------

def key_identity_residual(X, Y):
    """X floor(Y) - (XY - {X}{Y} - floor(X) Y + floor(X) floor(Y)).

    Exact for Fractions, rounding-level for floats; arrays are accepted.
    """
    if isinstance(X, np.ndarray) or isinstance(Y, np.ndarray):
        X = np.asarray(X, dtype=float)
        Y = np.asarray(Y, dtype=float)
        fX, fY = np.floor(X), np.floor(Y)
        return X * fY - (X * Y - (X - fX) * (Y - fY) - fX * Y + fX * fY)
    fX, fY = math.floor(X), math.floor(Y)
    return X * fY - (X * Y - (X - fX) * (Y - fY) - fX * Y + fX * fY)


def check_key_identity(X, Y) -> float:
    return abs(key_identity_residual(X, Y))


# -- identities with explicit lower-order corrections -------------------------

@dataclass(frozen=True)
class Identity:
    """lhs = rhs + sum(coef * term), either exactly or modulo 1."""

    name: str
    lhs: BracketExpr
    rhs: BracketExpr
    corrections: tuple = ()  # (integer multiplicity, BracketExpr)
    modulo_one: bool = True

    def residual(self, ns, mode: str = "rational"):
        r = self.lhs.evaluate(ns, mode) - self.rhs.evaluate(ns, mode)
        for coef, term in self.corrections:
            r = r - term.evaluate(ns, mode) * coef
        return r


def half_mod1(g):
    """The representative g' in [0, 1/2) of the two solutions of 2 g' = g mod 1."""
    if isinstance(g, np.ndarray):
        return np.array([half_mod1(x) for x in g.ravel()], dtype=object).reshape(g.shape)
    g = to_rational(g) if not isinstance(g, float) else g
    return (g - math.floor(g)) / 2


def _floor_const(g):
    if isinstance(g, np.ndarray):
        return np.array([math.floor(x) for x in g.ravel()], dtype=object).reshape(g.shape)
    return math.floor(g)


def _prod_const(*xs):
    out = xs[0]
    for x in xs[1:]:
        out = out * x
    return out


def _sum_const(a, b):
    return a + b


def build_identity(case: str, p: dict) -> Identity:
    """Construct one of the bracket identities with its correction factors.

    Cases: ``i``, ``ii``, ``iii``, ``iv`` (quadratic bracket identities),
    ``key`` (the fundamental identity at X = alpha n, Y = beta n),
    ``3brack`` (the triple fractional-part product, exact over R),
    ``3brack_phase`` (the six-term expansion of e(floor(an) floor(bn) c n)),
    ``another`` (e(floor(an) b n^2) split into a cubic and two brackets).
    """
    C = Const
    if case == "i":
        a1, a2, b = C(p["alpha1"]), C(p["alpha2"]), C(p["beta"])
        fb = floor(b * n)
        return Identity("i", C(_sum_const(p["alpha1"], p["alpha2"])) * n * fb, a1 * n * fb + a2 * n * fb)
    if case == "ii":
        a, b1, b2 = C(p["alpha"]), C(p["beta1"]), C(p["beta2"])
        b12 = C(_sum_const(p["beta1"], p["beta2"]))
        corr = ((1, frac(a * n) * frac(b1 * n)),
                (1, frac(a * n) * frac(b2 * n)),
                (-1, frac(a * n) * frac(b12 * n)))
        return Identity("ii", a * n * floor(b12 * n), a * n * floor(b1 * n) + a * n * floor(b2 * n), corr)
    if case == "iii":
        a, b = C(p["alpha"]), C(p["beta"])
        ab = C(_prod_const(p["alpha"], p["beta"]))
        corr = ((1, ab * n * n), (-1, frac(a * n) * frac(b * n)))
        return Identity("iii", a * n * floor(b * n), -(b * n * floor(a * n)), corr)
    if case == "iv":
        g_raw = p["gamma"]
        gp_raw = half_mod1(g_raw)
        g, gp = C(g_raw), C(gp_raw)
        two_gp = C(gp_raw * 2)
        quad = C(g_raw * _floor_const(g_raw) + gp_raw * gp_raw * 2)
        corr = ((1, quad * n * n),
                (-2, frac(gp * n) * frac(gp * n)),
                (2, frac(g * n) * frac(gp * n)),
                (-1, frac(g * n) * frac(two_gp * n)))
        return Identity("iv", g * n * floor(g * n), C(0), corr)
    if case == "key":
        a, b = C(p["alpha"]), C(p["beta"])
        X, Y = a * n, b * n
        rhs = X * Y - frac(X) * frac(Y) - floor(X) * Y + floor(X) * floor(Y)
        return Identity("key", X * floor(Y), rhs, modulo_one=False)
    if case == "3brack":
        a, b, c = C(p["alpha"]), C(p["beta"]), C(p["gamma"])
        lhs = frac(a * n) * frac(b * n) * frac(c * n)
        rhs = (a * n - floor(a * n)) * (b * n - floor(b * n)) * (c * n - floor(c * n))
        return Identity("3brack", lhs, rhs, modulo_one=False)
    if case == "3brack_phase":
        a, b, c = C(p["alpha"]), C(p["beta"]), C(p["gamma"])
        A, B, G = floor(a * n), floor(b * n), floor(c * n)
        ab = C(_prod_const(p["alpha"], p["beta"]))
        ac = C(_prod_const(p["alpha"], p["gamma"]))
        bc = C(_prod_const(p["beta"], p["gamma"]))
        abc = C(_prod_const(p["alpha"], p["beta"], p["gamma"]))
        rhs = (frac(a * n) * frac(b * n) * frac(c * n)
               - A * (b * n) * G - (a * n) * B * G
               + ab * n * n * G + ac * n * n * B + bc * n * n * A)
        # the cubic phase e(-alpha beta gamma n^3) completes the expansion
        return Identity("3brack_phase", A * B * (c * n), rhs, ((-1, abc * n * n * n),))
    if case == "another":
        a, b = C(p["alpha"]), C(p["beta"])
        ab = C(_prod_const(p["alpha"], p["beta"]))
        rhs = ab * n * n * n - (a * n) * floor(b * n * n) - frac(a * n) * frac(b * n * n)
        return Identity("another", floor(a * n) * (b * n * n), rhs)
    raise ValueError(f"unknown bracket case {case!r}")


CASES = ("key", "i", "ii", "iii", "iv", "3brack", "3brack_phase", "another")


@dataclass
class BracketReport:
    case: str
    passed: bool
    n_checked: int
    worst_residual: float
    first_failure: dict | None = None
    params: dict = field(default_factory=dict)
    corrections: list = field(default_factory=list)


def _residual_size(r, mode: str, modulo_one: bool) -> np.ndarray:
    if mode == "rational":
        if modulo_one:
            r = r.frac()
            v = r.to_float()
            return np.minimum(v, 1.0 - v)
        return np.abs(r.to_float())
    if modulo_one:
        v = np.mod(r, 1.0)
        return np.minimum(v, 1.0 - v)
    return np.abs(r)


def verify_bracket_lemma(case: str, params: dict, sample_n, mode: str = "rational",
                         tol: float = FLOAT_TOL) -> BracketReport:
    """Check an identity at every n in ``sample_n``.

    Parameter values may be scalars or equal-length object arrays (one
    parameter set per entry); arrays are checked all at once.
    """
    ns = np.asarray(list(sample_n), dtype=np.int64)
    batched = any(isinstance(v, np.ndarray) for v in params.values())
    if batched:
        params = {k: (np.asarray(v, dtype=object).reshape(-1, 1) if isinstance(v, np.ndarray) else v)
                  for k, v in params.items()}
    if mode == "rational":
        params = {k: (v if isinstance(v, np.ndarray) else to_rational(v)) for k, v in params.items()}
        if batched:
            params = {k: (np.vectorize(to_rational, otypes=[object])(v) if isinstance(v, np.ndarray) else v)
                      for k, v in params.items()}
    else:
        params = {k: (v.astype(float) if isinstance(v, np.ndarray) else float(to_rational(v)))
                  for k, v in params.items()}
    ident = build_identity(case, params)
    r = ident.residual(ns, mode)
    size = _residual_size(r, mode, ident.modulo_one)
    size = np.broadcast_to(size, np.broadcast_shapes(size.shape, ns.shape))
    if mode == "rational":
        if ident.modulo_one:
            bad = r.frac().num != 0
        else:
            bad = r.num != 0
        bad = np.broadcast_to(np.asarray(bad, dtype=bool), size.shape)
    else:
        # floats carry about 1 ulp of the largest term per operation
        scale = np.maximum(np.abs(ident.lhs.evaluate(ns, mode)), np.abs(ident.rhs.evaluate(ns, mode)))
        bad = size > tol + 64 * np.finfo(float).eps * np.broadcast_to(scale, size.shape)
    first = None
    if bad.any():
        loc = np.unravel_index(int(np.argmax(bad)), bad.shape)
        n_at = int(ns[loc[-1]])
        lhs = ident.lhs.evaluate(ns, mode)
        rhs = ident.rhs.evaluate(ns, mode)
        if mode == "rational":
            lv = lhs.frac() if ident.modulo_one else lhs
            rv = rhs.frac() if ident.modulo_one else rhs
            lhs_v = np.broadcast_to(lv.to_float(), size.shape)[loc]
            rhs_v = np.broadcast_to(rv.to_float(), size.shape)[loc]
        else:
            lhs_v = np.broadcast_to(lhs, size.shape)[loc]
            rhs_v = np.broadcast_to(rhs, size.shape)[loc]
        first = {"n": n_at, "row": int(loc[0]) if len(loc) > 1 else 0,
                 "lhs": float(lhs_v), "rhs": float(rhs_v), "residual": float(size[loc])}
    report_params = {} if batched else {k: str(v) for k, v in params.items()}
    return BracketReport(
        case=case,
        passed=not bool(bad.any()),
        n_checked=int(size.size),
        worst_residual=float(size.max()) if size.size else 0.0,
        first_failure=first,
        params=report_params,
        corrections=[(c, str(t)) for c, t in ident.corrections],
    )


# -- trilinear bracket form ---------------------------------------------------

@dataclass(frozen=True)
class TrilinearForm:
    """T(x,y,z) = sum_j {a_j x} b_j y {c_j z} + sum_j a'_j {b'_j x} y z.

    ``cubic_terms`` holds (a_j, b_j, c_j) with b_j standing for beta_j / 3;
    ``square_terms`` holds (a'_j, b'_j) with a'_j standing for alpha'_j / 3.
    After symmetrisation ``beta_tilde`` holds b_j / 2 and the first sum is
    replaced by its average over swapping y and z.
    """

    cubic_terms: tuple = ()
    square_terms: tuple = ()
    symmetrized: bool = False
    beta_tilde: tuple = ()

    def evaluate(self, x, y, z, mode: str = "rational"):
        x, y, z = (np.asarray(v, dtype=np.int64) for v in (x, y, z))
        if mode == "rational":
            X, Y, Z = RatVec.integers(x), RatVec.integers(y), RatVec.integers(z)
            fr = lambda v: v.frac()  # noqa: E731
            cst = lambda v: RatVec.constant(to_rational(v))  # noqa: E731
            total = RatVec.constant(0, np.broadcast_shapes(x.shape, y.shape, z.shape))
        else:
            X, Y, Z = (v.astype(float) for v in (x, y, z))
            fr = lambda v: v - np.floor(v)  # noqa: E731
            cst = lambda v: float(to_rational(v))  # noqa: E731
            total = np.zeros(np.broadcast_shapes(x.shape, y.shape, z.shape))
        for j, (a, b, c) in enumerate(self.cubic_terms):
            if self.symmetrized:
                bt = cst(self.beta_tilde[j])
                ax = fr(X * cst(a))
                total = total + ax * bt * Y * fr(Z * cst(c)) + ax * bt * Z * fr(Y * cst(c))
            else:
                total = total + fr(X * cst(a)) * cst(b) * Y * fr(Z * cst(c))
        for a2, b2 in self.square_terms:
            total = total + cst(a2) * fr(X * cst(b2)) * Y * Z
        return total


def symmetrize_trilinear(T: TrilinearForm) -> TrilinearForm:
    """Symmetrise T in its last two variables.

    The halved coefficient is b_j / 2 taken exactly, so T~(h, n, n) equals
    T(h, n, n) as a real number; for b_j in [0, 1) it is the representative of
    2 b~ = b_j (mod 1) lying in [0, 1/2).
    """
    if T.symmetrized:
        return T
    tildes = tuple(to_rational(b) / 2 if not isinstance(b, float) else b / 2 for _, b, _ in T.cubic_terms)
    return TrilinearForm(T.cubic_terms, T.square_terms, True, tildes)
