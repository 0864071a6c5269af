#!/usr/bin/env python3
"""Build catalog.json from the transcription tables below.

Run from this directory: python3 gen_catalog.py > catalog.json
"""

import json
import re
import sys
from fractions import Fraction


# ---------------------------------------------------------------- perms

def cyc(n, s):
    img = list(range(1, n + 1))
    for c in re.findall(r"\(([^)]*)\)", s):
        pts = [int(t) for t in c.replace(",", " ").split()]
        for a, b in zip(pts, pts[1:] + pts[:1]):
            img[a - 1] = b
    return img


def regular(gens, mul, ident):
    """Right regular representation x -> x*g on the closure of gens."""
    elts = [ident]
    seen = {ident: 0}
    i = 0
    while i < len(elts):
        for g in gens:
            y = mul(elts[i], g)
            if y not in seen:
                seen[y] = len(elts)
                elts.append(y)
        i += 1

    def perm(g):
        return [seen[mul(x, g)] + 1 for x in elts]

    return len(elts), perm


# Gaussian integers as (re, im); 2x2 matrices as tuples of four entries
def gmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def gadd(a, b):
    return (a[0] + b[0], a[1] + b[1])


def mmul(x, y):
    a, b, c, d = x
    e, f, g, h = y
    return (gadd(gmul(a, e), gmul(b, g)), gadd(gmul(a, f), gmul(b, h)),
            gadd(gmul(c, e), gmul(d, g)), gadd(gmul(c, f), gmul(d, h)))


def mconj(x):
    return tuple((u[0], -u[1]) for u in x)


ONE, ZERO, I_, MINUS = (1, 0), (0, 0), (0, 1), (-1, 0)
ID2 = (ONE, ZERO, ZERO, ONE)


def diag(a, b):
    return (a, ZERO, ZERO, b)


# ---------------------------------------------------------------- models

def q8_model():
    # quaternion group; delta = j has order 4 and delta^2 = -1
    i = diag(I_, (0, -1))
    j = (ZERO, ONE, MINUS, ZERO)
    n, perm = regular([i, j], mmul, ID2)
    return {
        "points": n,
        "generators": [perm(i), perm(j)],
        "labels": {"-1": perm(mmul(i, i)), "delta": perm(j), "-delta": perm(mmul(mmul(i, i), j))},
        "note": "quaternion model: the torus is inverted by delta, delta^2 = -1",
        "assertions": [{"centralizer_of": ["delta"], "order": 4, "element_orders": {"1": 1, "2": 1, "4": 2}}],
    }


def t2c2_model():
    # t*d^e with t in (Z/4)^2, d t d^-1 = t^-1, d^2 = (2,0)
    def mul(x, y):
        p1, q1, e1 = x
        p2, q2, e2 = y
        if e1:
            p2, q2 = -p2, -q2
        p, q, e = p1 + p2, q1 + q2, e1 + e2
        if e == 2:
            p, e = p + 2, 0
        return (p % 4, q % 4, e)

    gens = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    n, perm = regular(gens, mul, (0, 0, 0))
    return {
        "points": n,
        "generators": [perm(g) for g in gens],
        "labels": {
            "-1": perm((2, 0, 0)),
            "c": perm((2, 2, 0)),
            "-c": perm((0, 2, 0)),
            "delta": perm((0, 0, 1)),
        },
        "note": "order-4 torsion of a rank-2 torus extended by delta",
        "assertions": [{"centralizer_of": ["delta"], "order": 8,
                        "element_orders": {"1": 1, "2": 3, "4": 4}}],
    }


def t3s3_model():
    # (Z/3)^3 sum-zero translations extended by S3 permuting coordinates
    def act(s, t):
        out = [0, 0, 0]
        for i in range(3):
            out[s[i]] = t[i]
        return tuple(out)

    def mul(x, y):
        t1, s1 = x
        t2, s2 = y
        u = act(s1, t2)
        return (tuple((a + b) % 3 for a, b in zip(t1, u)), tuple(s1[s2[i]] for i in range(3)))

    e = (0, 0, 0)
    ids = (0, 1, 2)
    g3 = (e, (1, 2, 0))
    g2 = (e, (1, 0, 2))
    z = ((1, 1, 1), ids)
    tr = ((1, 2, 0), ids)
    n, perm = regular([g2, g3, z, tr], mul, (e, ids))
    return {
        "points": n,
        "generators": [perm(g2), perm(g3), perm(z), perm(tr)],
        "labels": {"g2": perm(g2), "g3": perm(g3), "z": perm(z)},
        "note": "order-3 torsion of the rank-2 torus extended by S3",
        "assertions": [{"centralizer_of": ["g3"], "order": 9, "element_orders": {"1": 1, "3": 8}},
                       {"centralizer_of": ["g3", "z"], "order": 9, "element_orders": {"1": 1, "3": 8}}],
    }


def gl2c2_model():
    # monomial matrices over mu4 extended by delta acting as inverse transpose
    def mul(x, y):
        m1, e1 = x
        m2, e2 = y
        if e1:
            m2 = mconj(m2)
        m = mmul(m1, m2)
        e = e1 + e2
        if e == 2:
            m = mmul(m, diag(MINUS, MINUS))
            e = 0
        return (m, e)

    s = (diag(ONE, MINUS), 0)
    gens = [(diag(I_, ONE), 0), ((ZERO, ONE, ONE, ZERO), 0), (ID2, 1)]
    n, perm = regular(gens, mul, (ID2, 0))
    d = (ID2, 1)
    return {
        "points": n,
        "generators": [perm(g) for g in gens],
        "labels": {"s": perm(s), "delta": perm(d), "conj_i": perm((diag(ONE, I_), 0))},
        "note": "finite-order points of the normalizer of a torus of GL2 extended by delta",
        "assertions": [{"centralizer_of": ["s", "delta"], "order": 8,
                        "element_orders": {"1": 1, "2": 3, "4": 4}}],
    }


def o2_model():
    return {
        "points": 4,
        "generators": [cyc(4, "(1 2 3 4)"), cyc(4, "(2 4)")],
        "labels": {"rho": cyc(4, "(1 2 3 4)"), "-1": cyc(4, "(1 3)(2 4)"),
                   "delta": cyc(4, "(2 4)"), "-delta": cyc(4, "(1 3)")},
        "note": "order-4 rotations and reflections of O2",
        "assertions": [{"centralizer_of": ["delta"], "order": 4, "element_orders": {"1": 1, "2": 3}}],
    }


def s4oct_model():
    return {
        "points": 4,
        "generators": [cyc(4, "(1 2)"), cyc(4, "(1 2 3 4)")],
        "labels": {"s": cyc(4, "(1 2)(3 4)"), "h": cyc(4, "(1 3)(2 4)")},
        "note": "octahedral group of order-2 elements in PGL2",
        "assertions": [{"centralizer_of": ["s", "h"], "order": 4, "element_orders": {"1": 1, "2": 3}}],
    }


def agl23_model():
    pts = [(x, y) for x in range(3) for y in range(3)]
    idx = {p: i + 1 for i, p in enumerate(pts)}

    def aff(f):
        return [idx[f(p)] for p in pts]

    t1 = aff(lambda p: ((p[0] + 1) % 3, p[1]))
    t2 = aff(lambda p: (p[0], (p[1] + 1) % 3))
    # affine plane over F3: the Heisenberg quotient of PGL3
    shear = aff(lambda p: ((p[0] + p[1]) % 3, p[1]))
    swap = aff(lambda p: (p[1], p[0]))
    neg = aff(lambda p: ((-p[0]) % 3, p[1]))
    return {
        "points": 9,
        "generators": [t1, t2, shear, swap, neg],
        "labels": {"s": t1, "g3": t2},
        "note": "normalizer of the order-9 Heisenberg subgroup of PGL3 (Hessian group) with the outer involution",
        "assertions": [{"centralizer_of": ["s", "g3"], "order": 9,
                        "element_orders": {"1": 1, "3": 8}}],
    }


# ---------------------------------------------------------------- groups

S3_LABELS = {"g2": "(1 2)", "g3": "(1 2 3)"}
S4_LABELS = {"g2": "(1 2)", "g2'": "(1 2)(3 4)", "g3": "(1 2 3)", "g4": "(1 2 3 4)"}
S5_LABELS = dict(S4_LABELS, g5="(1 2 3 4 5)", g6="(1 2)(3 4 5)")

D8_IN_S = {"g2": "(1 2)", "g4": "(1 3 2 4)", "gamma": "(1 3)(2 4)"}
D8_FP = {"eps'": {"g2": "-1", "g4": "-1"}, "eps''": {"g2": "1", "g4": "-1"},
         "eps": {"g2": "-1", "g4": "1"}, "r": {"1": "2"}}


def cents(n, rows):
    out = []
    for x, labels, fps in rows:
        out.append({"x": x, "y_labels": {k: cyc(n, v) for k, v in labels.items()},
                    "char_fingerprints": fps})
    return out


def family_groups():
    c2 = {"points": 2, "generators": [cyc(2, "(1 2)")], "class_labels": {"g2": cyc(2, "(1 2)")},
          "centralizers": cents(2, [("1", {}, {"eps": {"g2": "-1"}}),
                                    ("g2", {}, {"eps": {"g2": "-1"}})])}
    s3 = {"points": 3, "generators": [cyc(3, "(1 2)"), cyc(3, "(1 2 3)")],
          "class_labels": {k: cyc(3, v) for k, v in S3_LABELS.items()},
          "centralizers": cents(3, [
              ("1", {}, {"eps": {"1": "1", "g2": "-1"}, "r": {"1": "2"}}),
              ("g2", {}, {"eps": {"g2": "-1"}}),
              ("g3", {}, {"theta": {"g3": "z3"}, "theta2": {"g3": "z3^2"}}),
          ])}
    s4 = {"points": 4, "generators": [cyc(4, "(1 2)"), cyc(4, "(1 2 3 4)")],
          "class_labels": {k: cyc(4, v) for k, v in S4_LABELS.items()},
          "centralizers": cents(4, [
              ("1", {}, {"lambda1": {"1": "3", "g2": "1"}, "lambda2": {"1": "3", "g2": "-1"},
                         "lambda3": {"1": "1", "g2": "-1"}, "sigma": {"1": "2"}}),
              ("g2", {"tau": "(3 4)"}, {"eps'": {"g2": "-1", "tau": "1"},
                                        "eps''": {"g2": "1", "tau": "-1"},
                                        "eps": {"g2": "-1", "tau": "-1"}}),
              ("g2'", D8_IN_S, D8_FP),
              ("g3", {}, {"theta": {"g3": "z3"}, "theta2": {"g3": "z3^2"}}),
              ("g4", {"g2'": "(1 3)(2 4)"}, {"i": {"g4": "z4"}, "-1": {"g4": "-1"},
                                             "-i": {"g4": "-z4"}}),
          ])}
    s5 = {"points": 5, "generators": [cyc(5, "(1 2)"), cyc(5, "(1 2 3 4 5)")],
          "class_labels": {k: cyc(5, v) for k, v in S5_LABELS.items()},
          "centralizers": cents(5, [
              ("1", {}, {"lambda1": {"1": "4", "g2": "2"}, "nu": {"1": "5", "g2": "1"},
                         "lambda2": {"1": "6"}, "nu'": {"1": "5", "g2": "-1"},
                         "lambda3": {"1": "4", "g2": "-2"}, "lambda4": {"1": "1", "g2": "-1"}}),
              ("g2", {"tau": "(3 4)", "g3": "(3 4 5)", "g2'": "(1 2)(3 4)", "g6": "(1 2)(3 4 5)"},
               {"r": {"1": "2", "g2": "2"}, "eps": {"1": "1", "g2": "1", "tau": "-1"},
                "-1": {"1": "1", "g2": "-1", "tau": "1"}, "-r": {"1": "2", "g2": "-2"},
                "-eps": {"1": "1", "g2": "-1", "tau": "-1"}}),
              ("g2'", D8_IN_S, D8_FP),
              ("g3", {"g2": "(4 5)", "g6": "(1 2 3)(4 5)"},
               {"theta": {"g3": "z3", "g2": "1"}, "theta2": {"g3": "z3^2", "g2": "1"},
                "-1": {"g3": "1", "g2": "-1"}, "eps": {"g3": "1", "g2": "-1"},
                "-theta": {"g3": "z3", "g2": "-1"}, "-theta2": {"g3": "z3^2", "g2": "-1"}}),
              ("g4", {"g2'": "(1 3)(2 4)"}, {"i": {"g4": "z4"}, "-1": {"g4": "-1"},
                                             "-i": {"g4": "-z4"}}),
              ("g5", {}, {f"zeta{k}" if k > 1 else "zeta": {"g5": f"z5^{k}"} for k in range(1, 5)}),
              ("g6", {"g2": "(1 2)", "g3": "(3 4 5)"},
               {"theta": {"g3": "z3", "g2": "1"}, "theta2": {"g3": "z3^2", "g2": "1"},
                "-1": {"g3": "1", "g2": "-1"},
                "-theta": {"g3": "z3", "g2": "-1"}, "-theta2": {"g3": "z3^2", "g2": "-1"}}),
          ])}
    return {"1": {"points": 1, "generators": [], "class_labels": {}, "centralizers": []},
            "C2": c2, "S3": s3, "S4": s4, "S5": s5}


def finite_groups():
    c2xc2 = lambda a, b: {  # noqa: E731
        "points": 4, "generators": [cyc(4, "(1 2)"), cyc(4, "(3 4)")],
        "labels": {a: cyc(4, "(1 2)"), b: cyc(4, "(3 4)")},
        "char_fingerprints": {"eps1": {a: "-1", b: "1"}, "eps2": {a: "1", b: "-1"},
                              "eps": {a: "-1", b: "-1"}},
    }
    o2 = c2xc2("-1", "delta")
    o2["labels"]["-delta"] = cyc(4, "(1 2)(3 4)")
    return {
        "C2xC2_O2": o2,
        "C2xC2_GL2": c2xc2("s", "delta"),
        "C4_Q8": {"points": 4, "generators": [cyc(4, "(1 2 3 4)")],
                  "labels": {"delta": cyc(4, "(1 2 3 4)"), "-1": cyc(4, "(1 3)(2 4)"),
                             "-delta": cyc(4, "(1 4 3 2)")},
                  "char_fingerprints": {"i": {"delta": "z4"}, "-1": {"delta": "-1"},
                                        "-i": {"delta": "-z4"}}},
        "C2xC4_T2": {"points": 6, "generators": [cyc(6, "(1 2)"), cyc(6, "(3 4 5 6)")],
                     "labels": {"c": cyc(6, "(1 2)"), "delta": cyc(6, "(3 4 5 6)"),
                                "-1": cyc(6, "(3 5)(4 6)"), "-c": cyc(6, "(1 2)(3 5)(4 6)"),
                                "-delta": cyc(6, "(3 6 5 4)")},
                     "char_fingerprints": {"i": {"delta": "z4", "c": "1"}, "-1": {"delta": "-1", "c": "1"},
                                           "-i": {"delta": "-z4", "c": "1"}}},
        "C3xC3_T3": {"points": 6, "generators": [cyc(6, "(1 2 3)"), cyc(6, "(4 5 6)")],
                     "labels": {"g3": cyc(6, "(1 2 3)"), "z": cyc(6, "(4 5 6)")},
                     "char_fingerprints": {"theta": {"g3": "z3", "z": "1"},
                                           "theta2": {"g3": "z3^2", "z": "1"}}},
        "O2model": o2_model(),
        "Q8model": q8_model(),
        "T2C2model": t2c2_model(),
        "T3S3model": t3s3_model(),
        "GL2C2model": gl2c2_model(),
        "S4oct": s4oct_model(),
        "AGL23": agl23_model(),
    }


# ---------------------------------------------------------------- families

FAMILIES = {}


def fam(names, group, twisted=False):
    for n in names.split():
        FAMILIES[n] = {"group": group, "delta_twisted": twisted, "b_F": int(n.split("_")[1])}


fam("2_1", "S3")
fam("4_13", "C2")
fam("12_4", "S4")
fam("30_15 56_30 120_25 405_15 420_13", "C2")
fam("80_7 315_16", "S3")
fam("512_11", "C2", True)
fam("112_63 210_52 700_42 2240_28 4200_24 2800_25 2268_30 5600_21", "C2")
fam("5600_15 4200_12 2240_10 2800_13", "C2")
fam("1400_37 1400_32", "S3")
fam("4480_16", "S5")
fam("4096_26 4096_11", "C2", True)


# ---------------------------------------------------------------- DSL

MACROS = {
    "v2": "(1,1)+(g2,1)",
    "v3": "(1,1)+(g2,1)+(g3,1)",
    "u5": "2*(1,1)+(1,lambda1)+2*(g3,1)+(g3,eps)+2*(g2',1)+(g5,1)+2*(g2,1)+(g6,1)+(g2,r)+2*(g4,1)",
    "v5'": "2*(1,1)-(1,lambda2)+(1,nu)+(1,nu')+(g5,1)+2*(g6,1)+(g3,1)-(g3,eps)+2*(g2',1)+2*(g2,1)",
    "v5''": "(1,1)+(1,nu)+(g5,1)+(g4,1)+(g4,-1)+2*(g6,1)+(g3,1)-(g3,eps)+2*(g2',1)"
            "+(g2',eps')+(g2',eps'')+(g2',r)+2*(g2,1)",
    "v5": "(1,1)+(1,nu)+(g5,1)+(g4,1)-(g4,-1)+2*(g6,1)+(g3,1)-(g3,eps)+2*(g2',1)"
          "+(g2',eps')+(g2',eps'')-(g2',r)+2*(g2,1)",
    "u5'": "3*(1,1)+(1,lambda1)+2*(1,nu)+2*(g5,1)+(g4,1)+4*(g6,1)+3*(g3,1)-(g3,eps)+3*(g2',1)"
           "+(g2',eps')+(g2',eps'')+4*(g2,1)+(g2,eps)+(g2,r)",
}


class Coef:
    """Rational times an optional root of unity z_n^k."""

    def __init__(self, q=Fraction(1), root=None):
        self.q = Fraction(q)
        self.root = root

    def __mul__(self, o):
        if self.root and o.root:
            raise ValueError("two roots in one coefficient")
        return Coef(self.q * o.q, self.root or o.root)

    def __str__(self):
        if self.root is None:
            return str(self.q)
        if self.q == 1:
            return self.root
        if self.q == -1:
            return "-" + self.root
        return f"{self.q}*{self.root}"


def parse_coef(s):
    if s.startswith("["):
        return Coef(1, s[1:-1])
    return Coef(Fraction(s))


def split_top(expr):
    """Split on top-level + and -, returning (sign, body) chunks."""
    out, depth, sign, cur = [], 0, 1, ""
    for ch in expr.replace(" ", ""):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if depth == 0 and ch in "+-" and cur and not cur.endswith(","):
            out.append((sign, cur))
            sign, cur = (1 if ch == "+" else -1), ""
            continue
        if depth == 0 and ch in "+-" and not cur:
            sign = sign * (1 if ch == "+" else -1)
            continue
        cur += ch
    if cur:
        out.append((sign, cur))
    return out


COEF_RE = re.compile(r"^(\d+(?:/\d+)?|\[[^\]]*\])\*(.*)$")


def leading_coef(sign, body):
    c = Coef(sign)
    m = COEF_RE.match(body)
    while m:
        c = c * parse_coef(m.group(1))
        body = m.group(2)
        m = COEF_RE.match(body)
    return c, body


def strip_parens(body):
    if body.startswith("(") and body.endswith(")"):
        return body[1:-1]
    return body


def parse_inner(fam_name, inner, basis):
    """Combination of (a,b) pairs, with macros expanded and nesting allowed."""
    terms = []
    for sign, body in split_top(inner):
        c, body = leading_coef(sign, body)
        if body in MACROS:
            sub = parse_inner(fam_name, MACROS[body], "xrho")
        elif body.startswith("(") and "," in body and not body[1:].startswith("("):
            a, b = strip_parens(body).split(",", 1)
            sub = [{"family": fam_name, "basis": basis, "x": a,
                    ("rho" if basis == "xrho" else "y"): b, "coeff": "1"}]
        else:
            sub = parse_inner(fam_name, strip_parens(body), basis)
        for t in sub:
            t = dict(t)
            t["coeff"] = str(c * parse_coef_str(t["coeff"]))
            terms.append(t)
    return terms


def parse_coef_str(s):
    m = re.match(r"^(-?)(?:(\d+(?:/\d+)?)\*)?(z\d+(?:\^\d+)?)$", s)
    if m:
        q = Fraction(m.group(2) or 1) * (-1 if m.group(1) else 1)
        return Coef(q, m.group(3))
    return Coef(Fraction(s))


def parse_expr(expr):
    terms, singles, named = [], [], []
    for sign, body in split_top(expr):
        c, body = leading_coef(sign, body)
        m = re.match(r"^([SXYR])\(([^;]+);(.*)\)$", body)
        if m:
            kind, f, inner = m.groups()
            if f not in FAMILIES:
                raise ValueError(f"unknown family {f} in {expr}")
            if kind == "S":
                x, y = inner.split(",", 1)
                sub = [{"family": f, "basis": "xy", "x": x, "y": y, "coeff": "1"}]
            elif kind == "R":
                x, r = inner.split(",", 1)
                sub = [{"family": f, "basis": "xrho", "x": x, "rho": r, "coeff": "1"}]
            else:
                sub = parse_inner(f, inner, "xrho" if kind == "X" else "xy")
            for t in sub:
                t = dict(t)
                t["coeff"] = str(c * parse_coef_str(t["coeff"]))
                terms.append(t)
        elif body.startswith("@"):
            named.append({"name": body[1:], "coeff": str(c)})
        else:
            if c.root is not None:
                raise ValueError("singleton with a root coefficient")
            singles.append({"name": body, "mult": str(c.q)})
    return terms, singles, named


# ---------------------------------------------------------------- records

GROUPS = {}
NAMED = []


def group(name):
    GROUPS[name] = {"name": name, "unipotents": [], "restrictions": [], "subparahoric": []}
    return GROUPS[name]


def named(scope, name, expr, complete=True, note=None):
    t, s, n = parse_expr(expr)
    assert not n
    rec = {"name": name, "scope": scope, "completeness": "complete" if complete else "partial",
           "terms": t, "singletons": s}
    if note:
        rec["note"] = note
    NAMED.append(rec)


def claim(fam_name, name, inner, maps_to=None, note=None):
    """A named combination in the (x, rho) basis with its Fourier claim."""
    t = parse_inner(fam_name, inner, "xrho")
    rec = {"name": name, "scope": fam_name, "completeness": "complete",
           "terms": t, "singletons": [],
           "claim": {"kind": "maps_to", "target": maps_to} if maps_to else {"kind": "self_dual"}}
    if note:
        rec["note"] = note
    NAMED.append(rec)


def pairs_of(gamma):
    return {
        "1": [("1", "1")],
        "C2": [("1", "1"), ("1", "g2"), ("g2", "1"), ("g2", "g2")],
        "S3": [("1", "1"), ("1", "g2"), ("1", "g3"), ("g2", "1"), ("g2", "g2"),
               ("g3", "1"), ("g3", "g3"), ("g3", "g3^-1")],
        "S4": [("1", h) for h in ["1", "g2", "g2'", "g3", "g4"]]
        + [("g2", h) for h in ["1", "g2", "tau", "g2'"]]
        + [("g2'", h) for h in ["1", "g2", "g2'", "g4", "gamma"]]
        + [("g3", h) for h in ["1", "g3", "g3^-1"]]
        + [("g4", h) for h in ["1", "g4", "g2'", "g4^-1"]],
        "S5": [("1", h) for h in ["1", "g2", "g2'", "g3", "g4", "g5", "g6"]]
        + [("g2", h) for h in ["1", "g2", "tau", "g3", "g2'", "g6"]]
        + [("g2'", h) for h in ["1", "g2", "g2'", "g4", "gamma"]]
        + [("g3", h) for h in ["1", "g2", "g3", "g3^-1", "g6", "g6^-1"]]
        + [("g4", h) for h in ["1", "g4", "g2'", "g4^-1"]]
        + [("g5", "1")] + [("g5", f"g5^{j}") for j in range(1, 5)]
        + [("g6", "1")] + [("g6", f"g6^{j}") for j in range(1, 6)],
    }[gamma]


def uni_finite(g, label, gamma, family, pair_count, leading=None, center_a=None):
    """Distinguished class: C(u) finite, A_u = Gamma of the family or 1."""
    fam_gamma = FAMILIES[family]["group"] if family in FAMILIES else "1"
    ps = []
    for s, h in pairs_of(gamma):
        p = {"s": s, "h": h, "split": True, "torus": {"dim": 0}, "source": "computed"}
        if family in FAMILIES:
            p["leading"] = {"family": family, "x": s, "y": h}
        else:
            p["leading"] = {"singleton": family}
        ps.append(p)
    g["unipotents"].append({
        "label": label, "centralizer": {"finite": gamma}, "component_group": gamma,
        "quotient": "A_u", "pair_count": pair_count, "count_rule": "computed",
        "family": family, "family_gamma": fam_gamma,
        "delta_twisted": FAMILIES.get(family, {}).get("delta_twisted", False),
        "pairs": ps,
    })


INV1 = [[["-1"]]]
INV2 = [[["-1", "0"], ["0", "-1"]]]
S3_PLANE = [[["-1", "1"], ["0", "1"]], [["0", "-1"], ["1", "-1"]]]


def uni_model(g, label, model, component, quotient, torus_dim, pair_count, count_rule,
              family, pairs, center=None, note=None):
    fg = FAMILIES[family]["group"] if family in FAMILIES else "1"
    rec = {"label": label,
           "centralizer": {"model": model, "torus_dim": torus_dim, "note": note or ""},
           "component_group": component, "quotient": quotient, "pair_count": pair_count,
           "count_rule": count_rule, "family": family, "family_gamma": fg,
           "delta_twisted": FAMILIES.get(family, {}).get("delta_twisted", False),
           "pairs": pairs}
    if center:
        rec["center"] = center
    g["unipotents"].append(rec)


def pair(s, h, a_su, h_in_a, dim, mats=None, split=True, lead=None, single=None):
    p = {"s": s, "h": h, "a_su": a_su, "h_in_a": h_in_a, "split": split,
         "torus": {"dim": dim, "matrices": mats or []}, "source": "paper"}
    if lead:
        p["leading"] = {"family": lead[0], "x": lead[1], "y": lead[2]}
    elif single:
        p["leading"] = {"singleton": single}
    return p


def restr(g, u, s, h, expr, note=None, unlisted=False):
    t, sg, n = parse_expr(expr)
    rec = {"unipotent": u, "s": s, "h": h, "terms": t, "singletons": sg, "named": n}
    if note:
        rec["note"] = note
    if unlisted:
        rec["unlisted_singletons"] = True
    g["restrictions"].append(rec)


def sub(x, expr):
    return expr.replace("{s}", x[0]).replace("{h}", x[1])


# ------------------------------------------------------------ G2, F4

g = group("G2")
uni_finite(g, "G2", "1", "1_6", 1)
uni_finite(g, "G2(a1)", "S3", "2_1", 8)
restr(g, "G2", "1", "1", "1_6")
for p in pairs_of("S3"):
    restr(g, "G2(a1)", *p, sub(p, "S(2_1;{s},{h})+1_6"))
for par, rows in [
    ("A2", {("1", "1"): "3*eps+r", ("1", "g2"): "eps+r", ("g2", "1"): "eps+r",
            ("1", "g3"): "r", ("g3", "1"): "r", ("g3", "g3"): "r", ("g3", "g3^-1"): "r"}),
    ("A1+~A1", {("1", "1"): "eps_x_eps+3*eps_x_1+1_x_eps",
                ("1", "g2"): "eps_x_eps+eps_x_1+1_x_eps", ("g2", "1"): "eps_x_eps+eps_x_1+1_x_eps",
                ("1", "g3"): "eps_x_eps+1_x_eps", ("g3", "1"): "eps_x_eps+1_x_eps",
                ("g3", "g3"): "eps_x_eps+1_x_eps", ("g3", "g3^-1"): "eps_x_eps+1_x_eps"}),
]:
    for (s, h), e in rows.items():
        _, sg, _ = parse_expr(e)
        g["subparahoric"].append({"unipotent": "G2(a1)", "parahoric": par, "s": s, "h": h,
                                  "singletons": sg})

g = group("F4")
uni_finite(g, "F4", "1", "1_24", 1)
uni_finite(g, "F4(a1)", "C2", "4_13", 4)
uni_finite(g, "F4(a2)", "C2", "9_10", 4)
uni_finite(g, "F4(a3)", "S4", "12_4", 21)
uni_model(g, "B3", "S4oct", "1", "A_u", 1, 1, "listed", "8_9''",
          [pair("s", "h", "C2", "g2", 1, INV1, single="8_9''")],
          note="C(u) has identity component PGL2")
restr(g, "F4", "1", "1", "1_24")
for p in pairs_of("C2"):
    restr(g, "F4(a1)", *p, sub(p, "S(4_13;{s},{h})+1_24"))
    restr(g, "F4(a2)", *p, sub(p, "9_10+S(4_13;{s},{h})+1_24"))
restr(g, "B3", "s", "h", "8_9''+S(4_13;1,1)-9_10+1_24")
T = "+8_9''+9_10+1_24"
F4A3 = {
    ("1", "1"): "3*S(4_13;1,1)+4*8_9'",
    ("1", "g2"): "3*S(4_13;1,1)+2*8_9'",
    ("g2", "1"): "3*S(4_13;1,1)+2*8_9'",
    ("1", "g2'"): "S(4_13;1,1)+2*S(4_13;1,g2)",
    ("g2'", "1"): "S(4_13;1,1)+2*S(4_13;g2,1)",
    ("1", "g3"): "8_9'", ("g3", "1"): "8_9'", ("g3", "g3"): "8_9'", ("g3", "g3^-1"): "8_9'",
    ("1", "g4"): "S(4_13;1,g2)", ("g4", "1"): "S(4_13;g2,1)",
    ("g2", "g2"): "S(4_13;1,1)+2*8_9'",
    ("g2", "g2'"): "X(4_13;(1,1)+(g2,1))",
    ("g2'", "g2"): "X(4_13;(1,1)+(g2,1))",
    ("g2", "tau"): "S(4_13;1,1)",
    ("g2'", "g2'"): "S(4_13;1,1)+2*S(4_13;g2,g2)",
    ("g2'", "g4"): "S(4_13;1,g2)", ("g4", "g2'"): "S(4_13;g2,1)",
    ("g2'", "gamma"): "S(4_13;1,g2)+S(4_13;g2,1)+S(4_13;g2,g2)",
    ("g4", "g4"): "S(4_13;g2,g2)", ("g4", "g4^-1"): "S(4_13;g2,g2)",
}
for p in pairs_of("S4"):
    restr(g, "F4(a3)", *p, sub(p, "S(12_4;{s},{h})+") + F4A3[p] + T)

# ------------------------------------------------------------ E6

g = group("E6")
uni_finite(g, "E6", "1", "1_36", 1)
uni_finite(g, "E6(a1)", "1", "6_25", 1)
uni_finite(g, "E6(a3)", "C2", "30_15", 4)
restr(g, "E6", "1", "1", "1_36")
restr(g, "E6(a1)", "1", "1", "6_25+1_36")
restr(g, "E6(a3)", "1", "1", "S(30_15;1,1)+20_20+2*6_25+1_36")
restr(g, "E6(a3)", "1", "g2", "S(30_15;1,g2)+20_20+1_36")
restr(g, "E6(a3)", "g2", "1", "S(30_15;g2,1)+20_20+1_36",
      note="the printed leading term is read as the (g2,1) pair")
restr(g, "E6(a3)", "g2", "g2", "S(30_15;g2,g2)+20_20+1_36")
e6_pairs = []
for k, zk in enumerate(["1", "z", "z^2"]):
    for s, h in [(zk, "g3"), ("g3", zk)] + ([("g3", f"{zk}*g3"), ("g3", f"{zk}*g3^-1")]
                                         if zk != "1" else [("g3", "g3"), ("g3", "g3^-1")]):
        split = k == 0
        if s == "g3":
            ha = h
            p = pair(s, h, "C3xC3_T3", ha, 0, split=split)
        else:
            p = pair(s, h, "S3", "g3", 2, S3_PLANE, split=split)
        if split:
            lead_h = {"1": "1", "g3": "g3", "g3^-1": "g3^-1"}[h] if s == "g3" else "g3"
            lead_s = "g3" if s == "g3" else "1"
            p["leading"] = {"family": "80_7", "x": lead_s, "y": lead_h}
        e6_pairs.append(p)
uni_model(g, "D4(a1)", "T3S3model", "S3", "A_u", 2, 4, "modulo_center", "80_7", e6_pairs,
          center=["z"], note="C(u) has identity component a rank-2 torus")
named("E6:D4(a1)", "gamma(D4(a1))", "X(30_15;(1,1)+(g2,1))+2*60_11+24_12+2*20_20+1_36")
for p in e6_pairs:
    if p["split"]:
        L = p["leading"]
        restr(g, "D4(a1)", p["s"], p["h"], f"S(80_7;{L['x']},{L['y']})+@gamma(D4(a1))")

# ------------------------------------------------------------ E7

g = group("E7")
uni_finite(g, "E7", "1", "1_63", 1)
uni_finite(g, "E7(a1)", "1", "7_46", 1)
uni_finite(g, "E7(a2)", "1", "27_37", 1)
uni_finite(g, "E7(a3)", "C2", "56_30", 4)
uni_finite(g, "E7(a4)", "C2", "189_22", 4)
uni_finite(g, "E7(a5)", "S3", "315_16", 8)
restr(g, "E7", "1", "1", "1_63")
restr(g, "E7(a1)", "1", "1", "7_46+1_63")
restr(g, "E7(a2)", "1", "1", "27_37+7_46+1_63")
for p in pairs_of("C2"):
    extra = "+2*7_46" if p == ("1", "1") else ""
    restr(g, "E7(a3)", *p, sub(p, "S(56_30;{s},{h})+27_37") + extra + "+1_63")
named("E7:E7(a4)", "gamma(E7(a4))", "S(56_30;1,1)+21_36+27_37+7_46+1_63")
for p in pairs_of("C2"):
    restr(g, "E7(a4)", *p, sub(p, "189_22+S(120_25;{s},{h})+@gamma(E7(a4))"))
named("E7:E7(a5)", "gamma(E7(a5))", "X(56_30;(1,1)+(g2,1))+105_21+168_21+189_22+21_36+27_37+1_63")
for p in pairs_of("S3"):
    if p == ("1", "1"):
        e = ("S(315_16;1,1)+3*S(120_25;1,1)+S(56_30;1,1)+3*210_21+3*27_37+3*7_46")
    elif "g3" in p[0] or "g3" in p[1]:
        e = "S(315_16;{s},{h})"
    else:
        e = "S(315_16;{s},{h})+S(120_25;1,1)+S(56_30;{s},{h})+210_21+27_37+7_46"
    restr(g, "E7(a5)", *p, sub(p, e) + "+@gamma(E7(a5))")

o2_pairs = []
for s, h in [("1", "delta"), ("-1", "delta"), ("delta", "1"), ("delta", "-1"),
             ("delta", "delta"), ("delta", "-delta")]:
    if s in ("1", "-1"):
        o2_pairs.append(pair(s, h, "C2", "g2", 1, INV1))
    else:
        o2_pairs.append(pair(s, h, "C2xC2_O2", h, 0))
e7_o2 = json.loads(json.dumps(o2_pairs))
lead_o2 = {("1", "delta"): ("1", "g2"), ("-1", "delta"): ("1", "g2"), ("delta", "1"): ("g2", "1"),
           ("delta", "-1"): ("g2", "1"), ("delta", "delta"): ("g2", "g2"),
           ("delta", "-delta"): ("g2", "g2")}
for p in e7_o2:
    p["split"] = (p["s"], p["h"]) in [("1", "delta"), ("delta", "1"), ("delta", "delta")]
    if p["split"]:
        x, y = lead_o2[(p["s"], p["h"])]
        p["leading"] = {"family": "120_25", "x": x, "y": y}
uni_model(g, "E6(a1)", "O2model", "C2", "A_u", 1, 6, "listed", "120_25", e7_o2,
          note="C(u) has identity component a 1-dimensional torus, normalized by delta")
for p in e7_o2:
    if p["split"]:
        x, y = lead_o2[(p["s"], p["h"])]
        restr(g, "E6(a1)", p["s"], p["h"], f"S(120_25;{x},{y})+S(56_30;{x},{y})+21_36+1_63")

restr_pgl = lambda label, lead, model="S4oct", dim=1, mats=INV1: uni_model(  # noqa: E731
    g, label, model, "1", "A_u", dim, 1, "listed", lead,
    [pair("s", "h", "C2", "g2", dim, mats, single=lead)],
    note="C(u) has identity component PGL2")
restr_pgl("D5(a1)+A1", "378_14")
restr(g, "D5(a1)+A1", "s", "h",
      "378_14+1/2*Y(315_16;(1,1)+(1,g2)+(g2,1)+(g2,g2))-S(405_15;1,1)"
      "+1/2*Y(56_30;(g2,1)+(1,g2)+(g2,g2)-(1,1))+S(120_25;1,1)+189_22+189_20+105_21"
      "+2*168_21+3*27_37+1_63")
restr_pgl("A3+A2+A1", "210_10")
restr(g, "A3+A2+A1", "s", "h",
      "210_10+S(512_11;1,1)+X(420_13;(1,1)+(g2,1))+2*X(405_15;(1,1)+(g2,1))"
      "+X(315_16;3*(1,1)+3*(g2,1)+(1,r)+2*(g3,1))+2*S(120_25;1,1)+X(120_25;(1,1)+(g2,1))"
      "+3*X(56_30;(1,1)+(g2,1))", unlisted=True)

t2_pairs = []
lead_t2 = {}
for z in ["1", "-1", "c", "-c"]:
    split = z in ("1", "-1")
    for s, h in [(z, "delta"), ("delta", z), ("delta", "delta" if z == "1" else f"{z}*delta")]:
        if s == "delta":
            p = pair(s, h, "C2xC4_T2", h, 0, split=split)
        else:
            p = pair(s, h, "C2", "g2", 2, INV2, split=split)
        t2_pairs.append(p)
signs = {("1", "delta"): ("-", "1", "g2"), ("-1", "delta"): ("", "1", "g2"),
         ("delta", "1"): ("", "g2", "1"), ("delta", "-1"): ("-", "g2", "1"),
         ("delta", "delta"): ("-[z4]*", "g2", "g2"), ("delta", "-1*delta"): ("[z4]*", "g2", "g2")}
named("E7:A4+A1", "gamma(A4+A1)",
      "X(315_16;(1,1)+(g2,1)+(g3,1))+X(120_25;(1,1)+(g2,1))+X(56_30;(1,1)+(g2,1))+210_13+189_20"
      "+105_21+2*168_21+2*189_22+21_36+2*27_37+1_63")
for p in t2_pairs:
    key = (p["s"], p["h"])
    if key in signs:
        sg, x, y = signs[key]
        p["leading"] = {"family": "512_11", "x": x, "y": y}
        restr(g, "A4+A1", p["s"], p["h"],
              f"{sg}S(512_11;{x},{y})+S(420_13;{x},{y})+S(405_15;{x},{y})+S(56_30;{x},{y})"
              "+@gamma(A4+A1)")
uni_model(g, "A4+A1", "T2C2model", "C2", "A_u^ad", 2, 3, "modulo_center", "512_11", t2_pairs,
          center=["-1", "c"],
          note="C(u) has identity component a rank-2 torus; pairs are listed for the adjoint quotient")

# ------------------------------------------------------------ E8

g = group("E8")
for lab, lead in [("E8", "1_120"), ("E8(a1)", "8_91"), ("E8(a2)", "35_74")]:
    uni_finite(g, lab, "1", lead, 1)
restr(g, "E8", "1", "1", "1_120")
restr(g, "E8(a1)", "1", "1", "8_91+1_120")
restr(g, "E8(a2)", "1", "1", "35_74+8_91+1_120")
uni_finite(g, "E8(a3)", "C2", "112_63", 4)
uni_finite(g, "E8(a4)", "C2", "210_52", 4)
uni_finite(g, "E8(b4)", "C2", "560_47", 4)
uni_finite(g, "E8(a5)", "C2", "700_42", 4)
uni_finite(g, "E8(b5)", "S3", "1400_37", 8)
uni_finite(g, "E8(a6)", "S3", "1400_32", 8)
uni_finite(g, "E8(a7)", "S5", "4480_16", 39)
for p in pairs_of("C2"):
    one = p == ("1", "1")
    restr(g, "E8(a3)", *p, sub(p, "S(112_63;{s},{h})") + ("+2*8_91" if one else "") + "+35_74+1_120")
    if one:
        restr(g, "E8(a4)", *p, "S(210_52;1,1)+S(112_63;1,1)+2*8_91+2*8_91+2*35_74+1_120",
              note="the multiplicity of 8_91 is printed as two separate terms")
    else:
        restr(g, "E8(a4)", *p, sub(p, "S(210_52;{s},{h})+S(112_63;{s},{h})+1_120"))
    restr(g, "E8(a5)", *p, sub(p, "S(700_42;{s},{h})+S(210_52;{s},{h})")
          + ("+35_74" if one else "") + "+@gamma(E8(a5))")
named("E8:E8(b4)", "gamma(E8(b4))", "X(112_63;v2)+35_74+8_91+1_120")
named("E8:E8(a5)", "gamma(E8(a5))", "560_47+X(112_63;v2)+8_91+1_120")
b4 = {("1", "1"): "(1,1)+(g2,1)", ("1", "g2"): "(1,1)-(g2,1)",
      ("g2", "1"): "(1,eps)+(g2,eps)", ("g2", "g2"): "(1,eps)-(g2,eps)"}
for p, inner in b4.items():
    restr(g, "E8(b4)", *p, f"560_47+X(210_52;{inner})+@gamma(E8(b4))")
named("E8:E8(b5)", "gamma(E8(b5))", "X(112_63;v2)+S(700_42;1,1)+560_47+35_74+1_120")
named("E8:E8(a6)", "gamma(E8(a6))", "X(700_42;v2)+X(112_63;v2)+1_120")
for p in pairs_of("S3"):
    g3 = "g3" in p[0] or "g3" in p[1]
    if p == ("1", "1"):
        b5 = ("S(1400_37;1,1)+3*567_46+3*S(112_63;1,1)+3*S(210_52;1,1)+3*35_74+3*8_91")
        a6 = ("S(1400_32;1,1)+S(1400_37;1,1)+3*S(210_52;1,1)+3*S(112_63;1,1)+3*567_46"
              "+3*560_47+3*35_74+3*8_91")
    elif g3:
        b5 = "S(1400_37;{s},{h})"
        a6 = "S(1400_32;{s},{h})+S(1400_37;{s},{h})"
    else:
        b5 = "S(1400_37;{s},{h})+567_46+S(112_63;{s},{h})+S(210_52;1,1)+35_74"
        a6 = ("S(1400_32;{s},{h})+S(1400_37;{s},{h})+S(210_52;{s},{h})+S(112_63;{s},{h})"
              "+567_46+560_47+35_74+8_91")
    restr(g, "E8(b5)", *p, sub(p, b5) + "+@gamma(E8(b5))")
    restr(g, "E8(a6)", *p, sub(p, a6) + "+@gamma(E8(a6))")

# E8(b6): family 2240_28 on C2, restricted from S3 pairs
B6_LEAD = {("1", "1"): ("1", "1"), ("1", "g2"): ("1", "g2"), ("1", "g3"): ("1", "1"),
           ("g2", "1"): ("g2", "1"), ("g2", "g2"): ("g2", "g2"), ("g3", "1"): ("1", "1"),
           ("g3", "g3"): ("1", "1"), ("g3", "g3^-1"): ("1", "1")}
B6_1400 = {("1", "1"): "(1,1)+2*(g3,1)+(1,eps)", ("1", "g2"): "(1,1)-(1,eps)",
           ("1", "g3"): "(1,1)-(g3,1)+(1,eps)", ("g2", "1"): "(g2,1)+(g2,eps)",
           ("g2", "g2"): "(g2,1)-(g2,eps)", ("g3", "1"): "(1,r)+(g3,theta)+(g3,theta2)",
           ("g3", "g3"): "(1,r)+[z3^2]*(g3,theta)+[z3]*(g3,theta2)",
           ("g3", "g3^-1"): "(1,r)+[z3]*(g3,theta)+[z3^2]*(g3,theta2)"}
ps = []
for s, h in pairs_of("S3"):
    x, y = B6_LEAD[(s, h)]
    ps.append({"s": s, "h": h, "split": True, "torus": {"dim": 0}, "source": "computed",
               "leading": {"family": "2240_28", "x": x, "y": y}})
g["unipotents"].append({"label": "E8(b6)", "centralizer": {"finite": "S3"}, "component_group": "S3",
                        "quotient": "A_u", "pair_count": 8, "count_rule": "computed",
                        "family": "2240_28", "family_gamma": "C2", "delta_twisted": False,
                        "pairs": ps})
named("E8:E8(b6)", "gamma(E8(b6))",
      "3240_31+567_46+2*560_47+X(1400_37;v3)+2*X(112_63;v2)+X(700_42;v2)+35_74+8_91+1_120")
for p in pairs_of("S3"):
    x, y = B6_LEAD[p]
    restr(g, "E8(b6)", *p, f"S(2240_28;{x},{y})+X(1400_32;{B6_1400[p]})+S(700_42;{x},{y})"
          f"+S(210_52;{x},{y})+@gamma(E8(b6))")

# E8(a7): family 4480_16 on S5
GA7 = {
    "1,g2": ("3*S(5600_21;1,1)+3*4200_21+2835_22+4*S(4200_24;1,1)+X(4200_24;v2)+5*35_74+3*8_91+1_120"),
    "1,g2'": ("4200_21+2835_22+6075_22+2*S(4200_24;1,1)+X(4200_24;v2)+S(2800_25;1,1)"
              "+3*X(112_63;v2)+3*35_74+8_91+1_120"),
    "1,g3": ("S(5600_21;1,1)+2*4200_21+2835_22+2*6075_22+2*4536_23"
             "+X(1400_37;v3+3*((1,r)-(g3,1)))+S(1400_32;1,1)+X(1400_32;3*v3+(g3,1)-(1,r))"
             "+2*35_74+2*8_91+1_120"),
    "1,g4": "4200_21+2835_22+6075_22+X(4200_24;v2)+S(2240_28;1,1)+35_74+8_91+1_120",
    "1,g5": "2*X(1400_37;v3)+X(1400_32;v3)+2*X(2240_28;v2)+35_74+1_120",
    "g2,g3": ("X(2268_30;v2)+X(1400_32;v3)+2*X(1400_37;v3)+X(1400_37;(1,1)+(1,r)+(g2,1))"
              "+2*X(112_63;v2)+X(210_52;v2)+1_120"),
    "g2,g2'": ("S(2240_28;1,1)+X(2240_28;v2)+2*4536_23+4200_21+3*S(4096_26;1,1)"
               "+3*X(112_63;v2)+35_74+1_120"),
}
for k, e in GA7.items():
    named("E8:E8(a7)", f"gamma{k}", e, complete=False)
named("E8:E8(a7)", "gamma(E8(a7),1,1)",
      "10*S(5600_21;1,1)+5*4200_21+2835_22+5*6075_22+2*4536_23+X(4200_24;v2)"
      "+10*S(4200_24;1,1)+15*S(2800_25;1,1)+25*S(2268_30;1,1)+X(2268_30;v2)+5*525_36"
      "+5*S(2240_28;1,1)+2*X(2240_28;v2)+15*S(4096_26;1,1)+10*S(1400_32;1,1)"
      "+5*X(1400_32;(1,1)+(g2,1)+(1,r))+X(1400_32;v3)+22*3240_31+10*S(1400_37;1,1)"
      "+15*X(1400_37;(1,1)+(g2,1)+(1,r))+2*X(1400_37;v3)+11*S(700_42;1,1)+7*X(700_42;v2)"
      "+20*S(210_52;1,1)+X(210_52;v2)+10*S(112_63;1,1)+7*X(112_63;v2)+35*567_46+22*560_47"
      "+11*35_74+5*8_91+1_120")

C2F = ["5600_21", "1400_37", "1400_32", "2268_30", "112_63"]


def a7(s, h):
    head = f"S(4480_16;{s},{h})"
    if (s, h) == ("1", "1"):
        return head + "+@gamma(E8(a7),1,1)"

    def fam5(x, y, g3y=None):
        out = f"+S(5600_21;{x},{y})+S(1400_37;{g3y[0]},{g3y[1]})" if g3y else \
            f"+S(5600_21;{x},{y})+S(1400_37;{x},{y})"
        return out + f"+S(1400_32;{x},{y})+S(2268_30;{x},{y})+S(112_63;{x},{y})"

    def t2(x, y):
        return (f"+S(5600_21;{x},{y})+S(2268_30;{x},{y})+S(1400_32;{x},{y})"
                f"+3*S(1400_37;{x},{y})+S(112_63;{x},{y})+@gamma1,g2")

    def t2p(x, y):
        return (f"+2*S(5600_21;{x},{y})+2*S(2800_25;{x},{y})+4*S(2268_30;{x},{y})"
                f"+2*S(1400_32;{x},{y})+2*S(1400_37;{x},{y})+2*S(210_52;{x},{y})"
                f"+2*S(112_63;{x},{y})+@gamma1,g2'")

    def t4(x, y):
        return f"+S(2268_30;{x},{y})+S(2800_25;{x},{y})+S(210_52;{x},{y})+@gamma1,g4"

    def both(a, b):
        return "".join(f"+S({F};{a[0]},{a[1]})+S({F};{b[0]},{b[1]})" for F in C2F)

    tab = {
        ("1", "g2"): t2("1", "g2"), ("g2", "1"): t2("g2", "1"), ("g2", "g2"): t2("g2", "g2"),
        ("1", "g2'"): t2p("1", "g2"), ("g2'", "1"): t2p("g2", "1"), ("g2'", "g2'"): t2p("g2", "g2"),
        ("1", "g3"): "+S(1400_37;1,g3)+@gamma1,g3",
        ("g3", "1"): "+S(1400_37;g3,1)+@gamma1,g3",
        ("g3", "g3"): "+S(1400_37;g3,g3)+@gamma1,g3",
        ("g3", "g3^-1"): "+S(1400_37;g3,g3^-1)+@gamma1,g3",
        ("1", "g4"): t4("1", "g2"), ("g2'", "g4"): t4("1", "g2"),
        ("g4", "1"): t4("g2", "1"), ("g4", "g2'"): t4("g2", "1"),
        ("g4", "g4"): t4("g2", "g2"), ("g4", "g4^-1"): t4("g2", "g2"),
        ("g2'", "gamma"): ("+S(2268_30;1,g2)+S(2268_30;g2,1)+S(2268_30;g2,g2)+S(2800_25;1,g2)"
                           "+S(2800_25;g2,1)+S(2800_25;g2,g2)+X(210_52;v2)+@gamma1,g4"),
        ("1", "g6"): fam5("1", "g2", ("1", "g3")) + "+@gammag2,g3",
        ("g2", "tau"): both(("1", "g2"), ("g2", "1")) + "+@gammag2,g2'",
        ("g2", "g2'"): both(("1", "g2"), ("g2", "g2")) + "+@gammag2,g2'",
        ("g2'", "g2"): both(("g2", "1"), ("g2", "g2")) + "+@gammag2,g2'",
        ("g2", "g3"): fam5("g2", "1", ("1", "g3")) + "+@gammag2,g3",
        ("g2", "g6"): fam5("g2", "g2", ("1", "g3")) + "+@gammag2,g3",
        ("g3", "g2"): fam5("1", "g2", ("g3", "1")) + "+@gammag2,g3",
        ("g3", "g6"): fam5("1", "g2", ("g3", "g3")) + "+@gammag2,g3",
        ("g3", "g6^-1"): fam5("1", "g2", ("g3", "g3^2")) + "+@gammag2,g3",
    }
    for j in range(1, 5):
        tab[("g4", f"g4^{j}")] = t4("g2", f"g2^{j}")
    tab[("g5", "1")] = "+@gamma1,g5"
    tab[("1", "g5")] = "+@gamma1,g5"
    for j in range(1, 5):
        tab[("g5", f"g5^{j}")] = "+@gamma1,g5"
    for j in range(0, 6):
        hh = "1" if j == 0 else f"g6^{j}"
        tab[("g6", hh)] = fam5("g2", f"g2^{j}", ("g3", f"g3^{j}")) + "+@gammag2,g3"
    return head + tab[(s, h)]


for p in pairs_of("S5"):
    restr(g, "E8(a7)", *p, a7(*p))

# E8 classes with an O2 or Q8 model
e8_o2 = json.loads(json.dumps(o2_pairs))
for p in e8_o2:
    p["leading"] = {"singleton": "3240_31"}
uni_model(g, "D7(a1)", "O2model", "C2", "A_u", 1, 6, "listed", "3240_31", e8_o2,
          note="C(u) has identity component a 1-dimensional torus, normalized by delta")
named("E8:D7(a1)", "gamma(D7(a1))", "2*567_46+3*560_47+2*S(112_63;1,1)+2*X(112_63;v2)+2*35_74+2*8_91+1_120")
C112 = "+S(112_63;1,g2)+S(112_63;g2,1)+S(112_63;g2,g2)+560_47+2*35_74+1_120"
D7A1 = {
    ("1", "delta"): "X(1400_32;(1,1)-(g2,1)+(1,r))+X(1400_37;(1,1)+(g2,1)+(1,r))+S(700_42;1,1)"
                    "+S(700_42;1,g2)+S(210_52;1,1)+S(210_52;1,g2)+@gamma(D7(a1))",
    ("-1", "delta"): "-X(1400_32;(1,1)+(1,r)-(g2,1))+X(1400_37;(1,1)+(g2,1)+(1,r))+S(700_42;1,1)"
                     "+S(700_42;1,g2)+X(210_52;(g2,1)+(1,eps))" + C112,
    ("delta", "1"): "X(1400_32;(1,r)+(1,eps)+(g2,eps))+X(1400_37;(1,1)+(g2,1)+(1,r))"
                    "+S(700_42;1,1)+S(700_42;g2,1)+S(210_52;1,1)+S(210_52;g2,1)+@gamma(D7(a1))",
    ("delta", "delta"): "X(1400_32;(1,r)+(1,eps)-(g2,eps))+X(1400_37;(1,1)+(g2,1)+(1,r))"
                        "+S(700_42;1,1)+S(700_42;g2,g2)+S(210_52;1,1)+S(210_52;g2,g2)+@gamma(D7(a1))",
    ("delta", "-1"): "-X(1400_32;(1,r)+(1,eps)+(g2,eps))+X(1400_37;(1,1)+(g2,1)+(1,r))"
                     "+S(700_42;1,1)+S(700_42;g2,1)+X(210_52;(1,1)-(g2,eps))" + C112,
    ("delta", "-delta"): "-X(1400_32;(1,r)+(1,eps)-(g2,eps))+X(1400_37;(1,1)+(g2,1)+(1,r))"
                         "+S(700_42;1,1)+S(700_42;g2,g2)+X(210_52;(1,1)+(g2,eps))" + C112,
}
for (s, h), e in D7A1.items():
    restr(g, "D7(a1)", s, h, "3240_31+" + e)

e8_d5 = json.loads(json.dumps(o2_pairs))
for p in e8_d5:
    p["leading"] = {"singleton": "4536_23"}
uni_model(g, "D5+A2", "O2model", "C2", "A_u", 1, 6, "listed", "4536_23", e8_d5,
          note="C(u) has identity component a 1-dimensional torus, normalized by delta")
named("E8:D5+A2", "gamma(D5+A2)", "X(2240_28;v2)+S(4096_26;1,1)+3*X(112_63;v2)+2*35_74+8_91+1_120",
      complete=False)
D5A2 = {
    ("1", "delta"): "X(4200_24;(1,1)-(g2,1))+S(2240_28;1,g2)+S(700_42;1,g2)",
    ("-1", "delta"): "X(4200_24;(1,1)-(g2,1))+X(2240_28;(g2,1)+(1,eps))-S(700_42;1,g2)",
    ("delta", "1"): "X(4200_24;(1,eps)+(g2,eps))+S(2240_28;g2,1)+S(700_42;g2,1)",
    ("delta", "delta"): "X(4200_24;(1,eps)-(g2,eps))+S(2240_28;g2,g2)+S(700_42;g2,g2)",
    ("delta", "-delta"): "X(4200_24;(1,eps)-(g2,eps))-S(2240_28;g2,g2)-S(700_42;g2,g2)",
    ("delta", "-1"): "X(4200_24;(1,eps)+(g2,eps))+X(2240_28;(1,1)-(g2,eps))-S(700_42;g2,1)",
}
for (s, h), e in D5A2.items():
    restr(g, "D5+A2", s, h, "4536_23+" + e + "+@gamma(D5+A2)",
          note="the printed pair (1,g2) is read as (g2,g2)" if (s, h) == ("delta", "-delta") else None)

q8_pairs = []
for s, h in [("1", "delta"), ("-1", "delta"), ("delta", "1"), ("delta", "-1"),
             ("delta", "delta"), ("delta", "-delta")]:
    if s in ("1", "-1"):
        q8_pairs.append(pair(s, h, "C2", "g2", 1, INV1, lead=("4096_26",) + lead_o2[(s, h)]))
    else:
        q8_pairs.append(pair(s, h, "C4_Q8", h, 0, lead=("4096_26",) + lead_o2[(s, h)]))
uni_model(g, "E6(a1)+A1", "Q8model", "C2", "A_u", 1, 6, "listed", "4096_26", q8_pairs,
          note="C(u) has identity component a 1-dimensional torus; delta squares to -1")
named("E8:E6(a1)+A1", "gamma(E6(a1)+A1)", "X(1400_37;v3)+X(700_42;v2)+X(112_63;v2)+560_47+35_74+1_120")
E6A1 = {("1", "delta"): "-", ("-1", "delta"): "", ("delta", "1"): "", ("delta", "-1"): "-",
        ("delta", "delta"): "-[z4]*", ("delta", "-delta"): "[z4]*"}
for (s, h), sg in E6A1.items():
    x, y = lead_o2[(s, h)]
    rest = "".join(f"+S({F};{x},{y})" for F in ["2240_28", "2268_30", "1400_32", "210_52", "112_63"])
    restr(g, "E6(a1)+A1", s, h, f"{sg}S(4096_26;{x},{y})" + rest + "+@gamma(E6(a1)+A1)")

q8b = json.loads(json.dumps(q8_pairs))
for p in q8b:
    p["leading"]["family"] = "4200_24"
uni_model(g, "D7(a2)", "Q8model", "C2", "A_u", 1, 6, "listed", "4200_24", q8b,
          note="C(u) has identity component a 1-dimensional torus; delta squares to -1")
named("E8:D7(a2)", "gamma(D7(a2))",
      "X(2240_28;v2)+3240_31+X(1400_37;v3)+S(700_42;1,1)+X(700_42;v2)+X(210_52;v2)+X(112_63;v2)"
      "+560_47+35_74+1_120")
D7A2 = {("1", "delta"): "-", ("-1", "delta"): "+", ("delta", "1"): "+", ("delta", "-1"): "-",
        ("delta", "delta"): "-[z4]*", ("delta", "-delta"): "+[z4]*"}
for (s, h), sg in D7A2.items():
    x, y = lead_o2[(s, h)]
    restr(g, "D7(a2)", s, h, f"S(4200_24;{x},{y}){sg}S(4096_26;{x},{y})+S(2268_30;{x},{y})"
          f"+S(112_63;{x},{y})+@gamma(D7(a2))")

named("E8:A6", "rest(A6)", "", complete=False)
uni_model(g, "A6", "S4oct", "1", "A_u", 2, 1, "listed", "4200_21",
          [pair("s", "h", "C2", "g2", 2, INV2, single="4200_21")],
          note="C(u) has identity component a rank-2 group")
restr(g, "A6", "s", "h", "4200_21-6075_22+X(2800_25;v2)+X(2240_28;v2)+X(2240_28;(g2,1)-(1,eps))"
      "+35_74+1_120+@rest(A6)")
named("E8:A4+A2", "rest(A4+A2)", "", complete=False)
uni_model(g, "A4+A2", "S4oct", "1", "A_u", 2, 1, "listed", "4536_13",
          [pair("s", "h", "C2", "g2", 2, INV2, single="4536_13")],
          note="C(u) has identity component a rank-2 group")
restr(g, "A4+A2", "s", "h", "4536_13-2835_14-6075_14+X(5600_15;v2)+4200_15+2100_20"
      "+X(4480_16;u5)+@rest(A4+A2)")

named("E8:A4+2A1", "gamma(A4+2A1)", "4200_15+4536_13+2100_20+X(5600_21;v2)+3*35_74+1_120",
      complete=False)
gl_pairs = [
    pair("s", "delta", "C2", "g2", 2, INV2, lead=("4200_12", "1", "g2")),
    pair("delta", "s", "C2xC2_GL2", "s", 1, [[["-1"]], [["1"]]], lead=("4200_12", "g2", "1")),
    pair("delta", "s*delta", "C2xC2_GL2", "s*delta", 1, [[["-1"]], [["1"]]],
         lead=("4200_12", "g2", "g2")),
]
uni_model(g, "A4+2A1", "GL2C2model", "C2", "A_u", 2, 3, "listed", "4200_12", gl_pairs,
          note="C(u) has identity component GL2 up to a finite group, with delta acting")
A42 = {
    ("s", "delta"): ("1", "g2", "-X(5600_15;(g2,1)+(1,eps))+X(4480_16;v5')",
                     "+2*X(1400_32;(1,1)+(g2,1)-(1,eps))"),
    ("delta", "s"): ("g2", "1", "-X(5600_15;(1,1)-(g2,eps))+X(4480_16;v5'')",
                     "+X(1400_32;(1,1)+3*(g2,1)-(1,eps)+(g2,eps))"),
    ("delta", "s*delta"): ("g2", "g2", "-X(5600_15;(1,1)+(g2,eps))+X(4480_16;v5)",
                           "+X(1400_32;(1,1)+3*(g2,1)-(1,eps)-(g2,eps))"),
}
for (s, h), (x, y, a, b) in A42.items():
    restr(g, "A4+2A1", s, h,
          f"-S(4200_12;{x},{y}){a}+S(5600_21;{x},{y})+S(2240_28;{x},{y})+S(2268_30;{x},{y}){b}"
          f"+S(700_42;{x},{y})+S(210_52;{x},{y})+@gamma(A4+2A1)")

named("E8:D4(a1)+A2", "rest(D4(a1)+A2)", "", complete=False)
uni_model(g, "D4(a1)+A2", "AGL23", "C2", "A_u", 2, 1, "listed", "2240_10",
          [pair("s", "g3", "S3", "g3", 2, S3_PLANE, lead=("2240_10", "1", "1"))],
          note="identity component PGL3; (s,g3) generate the Heisenberg subgroup, modelled through its normalizer and the outer involution")
restr(g, "D4(a1)+A2", "s", "g3",
      "S(2240_10;1,1)+S(2800_13;1,1)+X(5600_15;(g2,1)-(1,eps))+3*4200_15"
      "-X(4200_12;(g2,1)-(1,eps))+3*2835_14+S(4096_11;1,1)-2100_20+X(4480_16;u5')"
      "+@rest(D4(a1)+A2)")

# ------------------------------------------------------------ claims

claim("4_13", "C2-stable", "(1,1)+(g2,1)")
claim("112_63", "v2", "v2")
claim("1400_37", "v3", "v3")
claim("1400_32", "L1", "(1,1)+2*(g3,1)+(1,eps)")
claim("1400_32", "L2", "(g2,1)-(g2,eps)")
claim("1400_32", "L3", "v3")
claim("1400_32", "L4", "(1,1)+(g2,1)+(1,r)")
claim("1400_32", "L5", "(1,r)+[z3^2]*(g3,theta)+[z3]*(g3,theta2)")
claim("1400_32", "L6", "(1,r)+[z3]*(g3,theta)+[z3^2]*(g3,theta2)")
claim("1400_32", "L7", "(1,1)-(g3,1)+(1,eps)", maps_to="L7'")
claim("1400_32", "L7'", "(1,r)+(g3,theta)+(g3,theta2)", maps_to="L7")
claim("1400_32", "L8", "(1,1)-(1,eps)", maps_to="L8'")
claim("1400_32", "L8'", "(g2,1)+(g2,eps)", maps_to="L8")
for n in ["u5", "v5"]:
    claim("4480_16", n, n)
claim("4480_16", "u5'", "u5'",
      note="corrected: the printed expansion lacks the (g2',eps') term and is not FT-fixed; "
           "adding it restores the fixed-point property")
claim("4480_16", "v5'", "v5'", maps_to="v5''")
claim("4480_16", "v5''", "v5''", maps_to="v5'")

catalog = {
    "schema_version": 1,
    "family_groups": family_groups(),
    "finite_groups": finite_groups(),
    "families": FAMILIES,
    "groups": list(GROUPS.values()),
    "named_combinations": NAMED,
}
json.dump(catalog, sys.stdout, indent=1)
sys.stdout.write("\n")
