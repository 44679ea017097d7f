"""Command-line front end: ``gowerslab <command> <action> [options]``.

Every command prints one JSON document (or a CSV stream) on stdout and
returns 0 on success, 1 when a verification fails and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from dataclasses import dataclass, is_dataclass
from fractions import Fraction

import numpy as np

from . import __version__
from ._parallel import resolve_threads

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    """Bad command-line input; reported with exit code 2."""


@dataclass(frozen=True)
class RunConfig:
    precision: str = "float"
    threads: int = 1
    seed: int = 0
    output: str = "json"
    max_elements: int = 10 ** 7


# -- serialisation ----------------------------------------------------------

def to_jsonable(x):
    """Rationals become "p/q", complex numbers [re, im], arrays lists."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        v = float(x)
        return v if math.isfinite(v) else repr(v)
    if isinstance(x, (complex, np.complexfloating)):
        return [float(x.real), float(x.imag)]
    if isinstance(x, np.ndarray):
        return [to_jsonable(v) for v in x.tolist()] if x.dtype != object else [to_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [to_jsonable(v) for v in items]
    if is_dataclass(x):
        return {k: to_jsonable(getattr(x, k)) for k in x.__dataclass_fields__ if k not in _HIDDEN}
    if type(x).__name__ == "mpfr":
        return format(x, ".30f")
    return str(x)


_HIDDEN = {"counts", "passing", "candidates"}


def _dumps(doc) -> str:
    return json.dumps(to_jsonable(doc), sort_keys=True, indent=2)


def _write_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([to_jsonable(v) if not isinstance(v, (int, float, str)) else v for v in r])
    return buf.getvalue()


# -- parameter helpers -------------------------------------------------------

def _load_params(text: str | None) -> dict:
    if not text:
        return {}
    if text.startswith("@"):
        with open(text[1:]) as fh:
            text = fh.read()
    try:
        out = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--params is not valid JSON: {exc}") from None
    if not isinstance(out, dict):
        raise UsageError("--params must be a JSON object")
    return out


def _need(p: dict, key: str):
    if key not in p:
        raise UsageError(f"missing parameter {key!r}")
    return p[key]


def _number(x, rational: bool):
    from .exact import parse_number

    return parse_number(x, rational)


def _rand_rational(rng: np.random.Generator, den_max: int = 1000) -> Fraction:
    q = int(rng.integers(1, den_max + 1))
    return Fraction(int(rng.integers(-3 * q, 3 * q + 1)), q)


# -- gowers -------------------------------------------------------------------

def _phase_function(spec: dict, domain, cfg: RunConfig):
    from .seqfun import FileData, PurePoly, SeqFn, e, from_phase, random_bounded

    kind = spec.get("type", "poly")
    if kind == "poly":
        coeffs = tuple(_number(c, True) if isinstance(c, str) else c for c in _need(spec, "coeffs"))
        return from_phase(PurePoly(coeffs), domain)
    if kind == "random":
        return random_bounded(domain, np.random.default_rng(cfg.seed))
    if kind == "file":
        return from_phase(FileData(_need(spec, "path")), domain)
    if kind == "f312":
        from .nilgroup import F312_closed

        a, b, c = (_number(_need(spec, k), cfg.precision == "rational") for k in ("alpha", "beta", "gamma"))
        ph = np.array([float(F312_closed(a, b, c, int(n))) for n in domain.points()])
        return SeqFn(domain, e(ph))
    raise UsageError(f"unknown phase type {kind!r}")


def cmd_gowers(args, cfg: RunConfig):
    from .gowers import gowers_norm_group, gowers_norm_interval
    from .seqfun import Cyclic, Interval, read_csv

    p = _load_params(args.params)
    if args.action == "norm":
        if args.input:
            f = read_csv(args.input, kind=args.domain)
        else:
            if args.N is None:
                raise UsageError("--N is required with --phase")
            dom = Interval(args.N) if args.domain == "interval" else Cyclic(args.N)
            spec = json.loads(args.phase) if args.phase else p
            f = _phase_function(spec, dom, cfg)
        if args.domain == "interval":
            r = gowers_norm_interval(f, args.k, M_tilde=args.m_tilde, method=args.method, threads=cfg.threads)
        else:
            r = gowers_norm_group(f, args.k, method=args.method, threads=cfg.threads)
        if args.figure:
            from .plots import plot_phase_portrait

            plot_phase_portrait(f.values, args.figure)
        return {"norm": r.norm_value, "k": r.k, "method": r.method, "domain": r.domain, "power": r.power}, True
    # quadruples
    from .verify import _pipeline_family
    from .gowers import ShiftSet, count_correlated_quadruples, derivative_correlations

    N = int(_need(p, "N"))
    f, chi = _pipeline_family(N, p.get("family", "quadratic"), p, cfg.seed)
    H = ShiftSet(p.get("H", range(1, N + 1)), N)
    delta = p.get("delta")
    if delta is None:
        delta = min(1.0, min(derivative_correlations(f, H, chi, N).values(), default=1.0))
    qc = count_correlated_quadruples(f, H, chi, float(delta), c=float(p.get("c", 0.01)), threads=cfg.threads)
    res = {"count": qc.count, "bound": qc.bound, "eta": qc.eta, "delta": qc.delta, "c": qc.c,
           "threshold": qc.threshold, "additive_quadruples": qc.additive_quadruples}
    return res, qc.count >= qc.bound


# -- bracket ------------------------------------------------------------------

_BRACKET_KEYS = {
    "key": ("alpha", "beta"), "i": ("alpha1", "alpha2", "beta"), "ii": ("alpha", "beta1", "beta2"),
    "iii": ("alpha", "beta"), "iv": ("gamma",), "3brack": ("alpha", "beta", "gamma"),
    "3brack_phase": ("alpha", "beta", "gamma"), "another": ("alpha", "beta"),
}


def cmd_bracket(args, cfg: RunConfig):
    from .bracket import TrilinearForm, symmetrize_trilinear, verify_bracket_lemma

    p = _load_params(args.params)
    rng = np.random.default_rng(cfg.seed)
    if args.case == "trilinear":
        cubic = p.get("cubic_terms") or [[_rand_rational(rng) for _ in range(3)] for _ in range(2)]
        square = p.get("square_terms") or [[_rand_rational(rng) for _ in range(2)]]
        T = TrilinearForm(tuple(tuple(_number(v, True) for v in t) for t in cubic),
                          tuple(tuple(_number(v, True) for v in t) for t in square))
        Ts = symmetrize_trilinear(T)
        g = min(args.n_max, 60)
        xs = np.arange(-g, g + 1)
        X, Y, Z = np.meshgrid(xs, xs, xs[:: max(1, len(xs) // 8)], indexing="ij")
        sym = (Ts.evaluate(X, Y, Z) - Ts.evaluate(X, Z, Y)).num != 0
        H, Nn = np.meshgrid(xs, xs, indexing="ij")
        diag = (Ts.evaluate(H, Nn, Nn) - T.evaluate(H, Nn, Nn)).num != 0
        ok = not sym.any() and not diag.any()
        return {"case": "trilinear", "passed": ok, "symmetry_failures": int(sym.sum()),
                "diagonal_failures": int(diag.sum()), "grid": [-g, g],
                "beta_tilde": list(Ts.beta_tilde), "cubic_terms": T.cubic_terms,
                "square_terms": T.square_terms}, ok
    keys = _BRACKET_KEYS[args.case]
    params = {}
    for k in keys:
        params[k] = p[k] if k in p else _rand_rational(rng)
    mode = cfg.precision
    if mode == "float":
        params = {k: float(_number(v, True)) for k, v in params.items()}
    rep = verify_bracket_lemma(args.case, params, range(1, args.n_max + 1), mode=mode)
    res = {"case": rep.case, "passed": rep.passed, "n_checked": rep.n_checked,
           "worst_residual": rep.worst_residual, "first_failure": rep.first_failure,
           "params": {k: (v if isinstance(v, float) else _number(v, True)) for k, v in params.items()},
           "corrections": rep.corrections, "mode": mode}
    return res, rep.passed


# -- nil ----------------------------------------------------------------------

def _parse_pair(s: str):
    parts = s.strip("[]() ").split(",")
    if len(parts) != 2:
        raise UsageError(f"coordinate {s!r} should look like '2,1'")
    return int(parts[0]), int(parts[1])


def cmd_nil(args, cfg: RunConfig):
    from . import nilgroup as ng

    p = _load_params(args.params)
    rational = cfg.precision == "rational"
    if args.action == "eval":
        seq = json.loads(args.seq) if args.seq else _need(p, "seq")
        n_max = args.n_max
        rows = []
        if args.group.startswith("free2"):
            try:
                k = int(args.group.split(":")[1])
            except (IndexError, ValueError):
                raise UsageError("--group free2 needs a rank, e.g. free2:3") from None
            xi = [_number(v, rational) for v in _need(seq, "xi")]
            if len(xi) != k:
                raise UsageError(f"expected {k} horizontal frequencies")
            quad = {_parse_pair(key): tuple(_number(v, rational) for v in val)
                    for key, val in seq.get("quad", {}).items()}
            ps = ng.PolySeq2(tuple(xi), quad)
            ip, i = _parse_pair(args.coord or "2,1")
            rows = [(n, ng.nilchar2(ps, i, ip, n)) for n in range(1, n_max + 1)]
        elif args.group == "free3":
            coord = args.coord or "312"
            coords = {key: _number(v, rational) for key, v in seq.items()}
            g = ng.Malcev3.from_coords(**coords)
            rows = [(n, ng.reduce3(x).coords[coord]) for n, x in enumerate(ng.orbit3(g, n_max), start=1)]
        else:
            raise UsageError(f"unknown group {args.group!r}")
        if args.figure:
            from .plots import plot_series

            plot_series([r[0] for r in rows], [float(r[1]) for r in rows], args.figure, ylabel="phase")
        if cfg.output == "json" and args.output_explicit:
            return {"group": args.group, "coord": args.coord, "values": rows}, True
        return ("csv", ["n", "phase"], rows), True
    # power-check
    g = p.get("g")
    if g is None:
        rng = np.random.default_rng(cfg.seed)
        g = {f"t{name}": _rand_rational(rng, 50) for name in ng.BASIS}
    coords = {key: _number(v, True) for key, v in g.items()}
    elem = ng.Malcev3.from_coords(**coords)
    n_max = int(p.get("n_max", args.n_max))
    worst = Fraction(0)
    failures = 0
    for n, x in enumerate(ng.orbit3(elem, n_max), start=1):
        closed = ng.power3_closed_coords(elem, n)
        for name, v in closed.items():
            d = abs(Fraction(x[name]) - Fraction(v))
            worst = max(worst, d)
            failures += d != 0
    ok = failures == 0
    return {"passed": ok, "n_max": n_max, "max_residual": worst, "failures": failures, "g": coords}, ok


# -- equidist -----------------------------------------------------------------

def cmd_equidist(args, cfg: RunConfig):
    from . import equidist as eq

    p = _load_params(args.params)
    rational = cfg.precision == "rational"
    if args.action == "weyl":
        coeffs = [_number(c, True) if isinstance(c, str) else c for c in _need(p, "coeffs")]
        val = eq.weyl_sum(coeffs, int(_need(p, "N")))
        return {"value": val, "abs": abs(val)}, True
    if args.action == "test":
        N = int(_need(p, "N"))
        if "polys" in p:
            orbit = eq.TorusOrbit(tuple(tuple(_number(c, True) if isinstance(c, str) else c for c in poly)
                                        for poly in p["polys"]), N)
        else:
            orbit = eq.TorusOrbit.linear([_number(a, True) if isinstance(a, str) else a
                                          for a in _need(p, "alphas")], N)
        res = eq.equidist_test(orbit, float(_need(p, "eps")), int(_need(p, "M_freq")), cfg.threads)
        if args.figure:
            from .plots import plot_points

            plot_points(orbit.points(), args.figure)
        return res, True
    if args.action == "relation":
        alphas = [_number(a, rational) if isinstance(a, str) else a for a in _need(p, "alphas")]
        tol = p.get("tol", 0)
        m = eq.integer_relation(alphas, int(_need(p, "M")), tol=_number(tol, True) if isinstance(tol, str) else tol,
                                threads=cfg.threads)
        return {"relation": m, "residual": eq.relation_residual(alphas, m) if m else None}, True
    if args.action == "ratapprox":
        alpha = _need(p, "alpha")
        alpha = _number(alpha, True) if isinstance(alpha, str) else alpha
        a, q, err = eq.rational_approx(alpha, int(_need(p, "Q")))
        return {"a": a, "q": q, "error": err}, True
    # solve
    sys_ = eq.RationalMatrixSystem(_need(p, "A"), _need(p, "b"), p.get("M"))
    try:
        sol = eq.solve_bounded_rational(sys_)
    except eq.InconsistentSystemError as exc:
        return {"consistent": False, "rank_A": exc.rank_A, "rank_augmented": exc.rank_augmented}, True
    return {"consistent": True, "x": sol.x, "bound": sol.bound, "rank": sol.rank,
            "residual": eq.system_residual(sys_, sol.x)}, True


# -- bohr ---------------------------------------------------------------------

def _bohr_S(p: dict) -> list:
    return [_number(t, True) if isinstance(t, str) else t for t in _need(p, "S")]


def cmd_bohr(args, cfg: RunConfig):
    from . import bohr

    p = _load_params(args.params)
    S, N = _bohr_S(p), int(_need(p, "N"))
    if args.action == "build":
        B = bohr.build_bohr(S, _need(p, "rho"), N)
        if cfg.output == "csv":
            return ("csv", ["n"], [(int(m),) for m in B.members]), True
        return {"size": len(B), "members": B.members, "N": N}, True
    if args.action == "regular":
        rep = bohr.find_regular(S, float(_need(p, "rho0")), N, C_reg=float(p.get("C_reg", 100)),
                                threads=cfg.threads)
        if args.figure:
            from .plots import plot_series

            plot_series([c.rho for c in rep.candidates], [c.worst for c in rep.candidates], args.figure,
                        xlabel="rho", ylabel="regularity ratio", logy=True)
        return {"rho": rep.rho, "passed": rep.passed, "worst": rep.worst,
                "rejected": rep.rejected}, rep.passed
    B = bohr.build_bohr(S, _need(p, "rho"), N)
    dec = bohr.cutoff_decomposition(B, float(p.get("eps", 0.1)))
    if args.figure:
        from .plots import plot_series

        plot_series(np.arange(1, N + 1), dec.psi1.values.real, args.figure, ylabel="psi1")
    return {"rho_prime": dec.rho_prime, "psi2_mass": dec.psi2_mass, "l1_fourier_mass": dec.l1_fourier_mass,
            "b_prime_size": dec.b_prime_size, "passed": dec.passed, "size": len(B)}, dec.passed


# -- sumset -------------------------------------------------------------------

def _read_points(path: str):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise UsageError(f"{path} is empty")
    body = rows[1:] if not rows[0][0].lstrip("-").isdigit() else rows
    return [tuple(int(v) for v in r) for r in body if r]


def cmd_sumset(args, cfg: RunConfig):
    from . import additive as ad

    p = _load_params(args.params)
    pts = _read_points(args.input) if args.input else None
    if args.action == "lev":
        elems = [r[0] for r in pts] if pts else _need(p, "A")
        A = ad.IntSet(int(_need(p, "N")), elems)
        k = int(p.get("k", math.ceil(2 / A.alpha))) if A.elems else 1
        d = ad.find_lev_progression(A, k, p.get("d_max"))
        return {"d": d, "k": k, "alpha": A.alpha, "found": d is not None}, True
    if args.action == "bilinear":
        pairs = pts if pts else [tuple(x) for x in _need(p, "A")]
        A = ad.PairSet(int(_need(p, "N")), frozenset(pairs))
        res = ad.search_product_progression(A, p.get("k"), p.get("d_max"))
        if args.figure and res.boxes:
            from .plots import plot_grid

            W = res.boxes[-1][0]
            it = ad.iterate_bilinear(A, res.k, W)
            plot_grid(it.grid, args.figure, extent=(-W, W, -W, W))
        return {"found": res.found, "k": res.k, "d_max": res.d_max, "boxes": res.boxes, "alpha": A.alpha}, True
    sets = [[tuple(x) for x in _need(p, key)] for key in ("S1", "S2", "S3", "S4")]
    E = ad.additive_energy(*sets, modulus=p.get("modulus"))
    return {"energy": E}, True


# -- primes -------------------------------------------------------------------

def cmd_primes(args, cfg: RunConfig):
    from . import primes as pr

    if args.action == "gamma":
        g = pr.hl_gamma(args.pmax)
        return {"P": g.P, "value": g.digits(30), "value_float": float(g), "tail_bound": g.tail_bound,
                "exact": g.exact}, True
    if args.n is None:
        raise UsageError("--n is required")
    if args.action == "count-ap":
        return {"N": args.n, "count": pr.count_prime_5aps(args.n, cfg.threads)}, True
    res = pr.compare_asymptotic(args.n, gamma_P=args.pmax, threads=cfg.threads)
    return res, 0.3 <= res.ratio <= 3.0


# -- verify -------------------------------------------------------------------

def cmd_verify(args, cfg: RunConfig):
    from . import verify as vf

    p = _load_params(args.params)
    if args.action == "necessity":
        # family keys may sit under "spec" or at the top level
        family = p.get("spec") or {k: v for k, v in p.items() if k not in ("s", "N_grid")}
        rep = vf.check_necessity(int(p.get("s", 2)), family, p.get("N_grid", (64, 128, 256)),
                                 seed=cfg.seed, threads=cfg.threads)
        if args.figure:
            from .plots import plot_series

            Ns = sorted(int(n) for n in rep.measured["norms"])
            plot_series(Ns, [rep.measured["norms"][str(n)] for n in Ns], args.figure, xlabel="N",
                        ylabel="Gowers norm")
    elif args.action == "l1":
        rep = vf.check_l1_approx(str(p.get("case", "iii")), p, float(p.get("eps", 0.05)), seed=cfg.seed,
                                 threads=cfg.threads)
    else:
        rep = vf.run_gowers_pipeline(int(p.get("N", 64)), p.get("family", "quadratic"), p.get("delta"),
                                     params={k: v for k, v in p.items()
                                             if k not in ("N", "family", "delta", "c", "samples")},
                                     c=float(p.get("c", 0.01)), samples=int(p.get("samples", 8)),
                                     seed=cfg.seed, threads=cfg.threads)
        if args.figure and rep.measured["samples"]:
            from .plots import plot_series

            corr = [x["correlation"] for x in rep.measured["samples"]]
            plot_series(list(range(1, len(corr) + 1)), corr, args.figure, xlabel="sampled quadruple",
                        ylabel="best quadratic correlation")
    return rep.to_dict(), rep.passed


# -- parser ---------------------------------------------------------------------

def _common(sp):
    sp.add_argument("--params", help="JSON object, or @file.json")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--threads", type=int, default=None)
    sp.add_argument("--output", choices=("json", "csv"), default=None)
    sp.add_argument("--precision", choices=("float", "rational"), default=None)
    sp.add_argument("--figure", help="write a figure to this path")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gowerslab", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gowers", help="Gowers norms and correlated quadruples")
    g.add_argument("action", choices=("norm", "quadruples"))
    g.add_argument("--domain", choices=("interval", "cyclic"), default="interval")
    g.add_argument("--k", type=int, choices=(1, 2, 3, 4), default=2)
    g.add_argument("--N", type=int)
    g.add_argument("--phase", help='JSON phase spec, e.g. {"type": "poly", "coeffs": [0, 0, 0.3]}')
    g.add_argument("--input", help="CSV file with columns index,re,im")
    g.add_argument("--method", choices=("direct", "recursion", "fft"), default="recursion")
    g.add_argument("--m-tilde", type=int, dest="m_tilde")
    _common(g)

    b = sub.add_parser("bracket", help="bracket polynomial identities")
    b.add_argument("action", choices=("verify",))
    b.add_argument("--case", required=True, choices=tuple(_BRACKET_KEYS) + ("trilinear",))
    b.add_argument("--n-max", type=int, default=1000, dest="n_max")
    _common(b)

    n = sub.add_parser("nil", help="free nilpotent group orbits")
    n.add_argument("action", choices=("eval", "power-check"))
    n.add_argument("--group", default="free3", help="free2:<k> or free3")
    n.add_argument("--seq", help="JSON sequence spec")
    n.add_argument("--coord", help="coordinate name, e.g. 2,1 or 312")
    n.add_argument("--n-max", type=int, default=100, dest="n_max")
    _common(n)

    e = sub.add_parser("equidist", help="equidistribution and rational structure")
    e.add_argument("action", choices=("weyl", "test", "relation", "ratapprox", "solve"))
    _common(e)

    bo = sub.add_parser("bohr", help="Bohr sets")
    bo.add_argument("action", choices=("build", "regular", "decompose"))
    _common(bo)

    s = sub.add_parser("sumset", help="sumsets and progressions")
    s.add_argument("action", choices=("lev", "bilinear", "energy"))
    s.add_argument("--input", help="CSV of integers (x) or pairs (x,y)")
    _common(s)

    pr = sub.add_parser("primes", help="5-term prime progressions")
    pr.add_argument("action", choices=("gamma", "count-ap", "compare"))
    pr.add_argument("--pmax", type=int, default=10 ** 6)
    pr.add_argument("--n", type=int)
    _common(pr)

    v = sub.add_parser("verify", help="cross-module verification reports")
    v.add_argument("action", choices=("necessity", "l1", "pipeline"))
    _common(v)
    return ap


COMMANDS = {"gowers": cmd_gowers, "bracket": cmd_bracket, "nil": cmd_nil, "equidist": cmd_equidist,
            "bohr": cmd_bohr, "sumset": cmd_sumset, "primes": cmd_primes, "verify": cmd_verify}


def _emit_csv(result, cmd: str) -> str:
    if isinstance(result, tuple) and result and result[0] == "csv":
        return _write_csv(result[1], result[2])
    flat = to_jsonable(result)
    if not isinstance(flat, dict):
        flat = {"value": flat}
    rows = [(k, json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v) for k, v in sorted(flat.items())]
    return _write_csv(["key", "value"], rows)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    args.output_explicit = args.output is not None
    try:
        default_precision = "rational" if args.command == "bracket" else "float"
        cfg = RunConfig(precision=args.precision or default_precision, threads=resolve_threads(args.threads),
                        seed=args.seed, output=args.output or "json")
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    t0, wall0 = time.perf_counter(), time.time() - 1
    try:
        result, ok = COMMANDS[args.command](args, cfg)
    except (UsageError, ValueError, TypeError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    runtime_ms = (time.perf_counter() - t0) * 1000
    is_csv = isinstance(result, tuple) and result and result[0] == "csv"
    if cfg.output == "csv" or (is_csv and not args.output_explicit):
        sys.stdout.write(_emit_csv(result, args.command))
    else:
        params = {k: v for k, v in vars(args).items()
                  if k not in ("command", "threads", "output", "output_explicit", "figure") and v is not None}
        if isinstance(params.get("params"), str):
            params["params"] = _load_params(params["params"])
        doc = {"command": f"{args.command} {args.action}", "params": params, "result": result,
               "meta": {"version": __version__, "seed": cfg.seed, "precision": cfg.precision,
                        "runtime_ms": round(runtime_ms, 3)}}
        if args.figure and os.path.exists(args.figure) and os.path.getmtime(args.figure) >= wall0:
            doc["meta"]["figure"] = args.figure
        sys.stdout.write(_dumps(doc) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
