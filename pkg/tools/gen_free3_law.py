"""Derive the Mal'cev multiplication law of the free 3-step nilpotent group on
three generators and emit it as Python source.

The group is realised inside the degree-3 truncated tensor algebra over three
letters x1, x2, x3: e_i = exp(x_i), e_ij = [e_i, e_j] (group commutator
a^-1 b^-1 a b), e_ijk = [e_ij, e_k], and e_b^t = exp(t log e_b).  A product of
two normal-form elements is collected back into normal form by peeling one
filtration layer at a time.

Usage:
    python tools/gen_free3_law.py > src/gowerslab/nilgroup/_free3_law.py
"""

import sys

import sympy as sp

BASIS = ["1", "2", "3", "21", "211", "31", "311", "32", "322", "212", "312", "213", "313", "323"]
DEG = {b: len(b) for b in BASIS}
MAXDEG = 3


# -- truncated tensor algebra: dict word(tuple) -> sympy expr -----------------

def t_mul(a, b):
    out = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            w = wa + wb
            if len(w) > MAXDEG:
                continue
            out[w] = out.get(w, 0) + ca * cb
    return {w: sp.expand(c) for w, c in out.items() if sp.expand(c) != 0}


def t_add(a, b, s=1):
    out = dict(a)
    for w, c in b.items():
        out[w] = sp.expand(out.get(w, 0) + s * c)
    return {w: c for w, c in out.items() if c != 0}


def t_scale(a, s):
    return {w: sp.expand(s * c) for w, c in a.items()}


ONE = {(): sp.Integer(1)}


def t_exp(x):
    # x has no constant term, so the series stops at x^3
    out = dict(ONE)
    p = dict(ONE)
    for n in range(1, MAXDEG + 1):
        p = t_mul(p, x)
        out = t_add(out, t_scale(p, sp.Rational(1, sp.factorial(n))))
    return out


def t_log(g):
    y = t_add(g, ONE, -1)
    out = {}
    p = dict(ONE)
    for n in range(1, MAXDEG + 1):
        p = t_mul(p, y)
        out = t_add(out, t_scale(p, sp.Rational((-1) ** (n + 1), n)))
    return out


def t_inv(g):
    return t_exp(t_scale(t_log(g), -1))


def group_comm(a, b):
    return t_mul(t_mul(t_inv(a), t_inv(b)), t_mul(a, b))


def letter(i):
    return {(i,): sp.Integer(1)}


def basis_logs():
    e = {str(i): t_exp(letter(i)) for i in (1, 2, 3)}
    for b in ("21", "31", "32"):
        e[b] = group_comm(e[b[0]], e[b[1]])
    for b in ("211", "212", "213", "311", "312", "313", "322", "323"):
        e[b] = group_comm(e[b[:2]], e[b[2]])
    return {b: t_log(e[b]) for b in BASIS}


LOGS = basis_logs()


def element(coords):
    g = dict(ONE)
    for b, c in zip(BASIS, coords):
        g = t_mul(g, t_exp(t_scale(LOGS[b], c)))
    return g


def collect(g):
    """Normal-form coordinates of a grouplike element."""
    coords = {}
    for b in ("1", "2", "3"):
        coords[b] = g.get((int(b),), 0)
    head = element([coords.get(b, 0) if DEG[b] == 1 else 0 for b in BASIS])
    q = t_mul(t_inv(head), g)
    lq = t_log(q)
    for b in ("21", "31", "32"):
        coords[b] = lq.get((int(b[0]), int(b[1])), 0)
    mid = element([coords[b] if DEG[b] == 2 else 0 for b in BASIS])
    r = t_mul(t_inv(mid), q)
    lr = t_log(r)
    assert all(len(w) == 3 for w in lr), "residual must be central"
    top = [b for b in BASIS if DEG[b] == 3]
    xs = sp.symbols("c0:%d" % len(top))
    comb = {}
    for x, b in zip(xs, top):
        comb = t_add(comb, t_scale(LOGS[b], x))
    words = set(comb) | set(lr)
    eqs = [sp.expand(comb.get(w, 0) - lr.get(w, 0)) for w in words]
    sol = sp.solve(eqs, xs, dict=True)
    assert len(sol) == 1
    for x, b in zip(xs, top):
        coords[b] = sp.expand(sol[0][x])
    return [sp.expand(coords[b]) for b in BASIS]


def emit(name, args, exprs, sym_map, doc):
    lines = ["def %s(%s):" % (name, ", ".join(args)), '    """%s"""' % doc]
    body = []
    for idx, e in enumerate(exprs):
        s = sp.sstr(e.xreplace(sym_map), order="lex")
        body.append("        %s," % s)
    lines.append("    return (")
    lines.extend(body)
    lines.append("    )")
    return "\n".join(lines)


def main(out=sys.stdout):
    t = sp.symbols("t0:14")
    u = sp.symbols("u0:14")
    m = sp.Symbol("m")
    tn = [sp.Symbol("t[%d]" % i) for i in range(14)]
    un = [sp.Symbol("u[%d]" % i) for i in range(14)]
    sym_map = {**dict(zip(t, tn)), **dict(zip(u, un))}

    prod = collect(t_mul(element(t), element(u)))
    inv = collect(t_inv(element(t)))

    chunks = [
        '"""Free 3-step nilpotent group on three generators: frozen multiplication law.',
        "",
        "GENERATED by tools/gen_free3_law.py -- do not edit by hand.",
        '"""',
        "",
        "BASIS = %r" % (tuple(BASIS),),
        "",
        "",
        emit("mul", ["t", "u"], prod, sym_map, "Coordinates of t * u."),
        "",
        "",
        emit("inv", ["t"], inv, sym_map, "Coordinates of t^-1."),
        "",
        "",
    ]
    # right multiplication by e_b^m, one specialisation per basis element
    names = []
    for j, b in enumerate(BASIS):
        uj = [0] * 14
        uj[j] = m
        exprs = collect(t_mul(element(t), element(uj)))
        fname = "_rmul_%s" % b
        names.append(fname)
        chunks.append(emit(fname, ["t", "m"], exprs, sym_map, "t * e_%s^m." % b))
        chunks.append("")
        chunks.append("")
    chunks.append("RIGHT_MUL = (%s)" % ", ".join(names))
    out.write("\n".join(chunks) + "\n")


if __name__ == "__main__":
    main()
