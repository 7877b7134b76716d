"""
Builders for the shipped structures and loaders for the JSON corpus.

A cyclic dgla of the form A (x) g is built from a graded commutative Frobenius
dga A of degree 3 and a Lie algebra g with an invariant form:
[a x, b y] = ab [x, y],  d(a x) = (da) x,  kappa(a x, b y) = (int ab) B(x, y).
"""

import json
from fractions import Fraction
from pathlib import Path
from math import factorial

from .graded_core import GradedVectorSpace, parse_scalar, vec_iadd
from .linf import CyclicPairing, LInfinityStructure, MultilinearOperation


# ---------------------------------------------------------------------------
# small Lie algebras with invariant forms

SO3 = {
    "basis": ["e1", "e2", "e3"],
    "bracket": {("e1", "e2"): {"e3": 1}, ("e2", "e3"): {"e1": 1}, ("e3", "e1"): {"e2": 1}},
    "form": {("e1", "e1"): 1, ("e2", "e2"): 1, ("e3", "e3"): 1},
}

ABELIAN1 = {"basis": ["t"], "bracket": {}, "form": {("t", "t"): 1}}

AFF1 = {"basis": ["s", "r"], "bracket": {("s", "r"): {"r": 1}}, "form": {}}


def _lie_bracket(g, x, y):
    if (x, y) in g["bracket"]:
        return dict(g["bracket"][(x, y)])
    if (y, x) in g["bracket"]:
        return {k: -v for k, v in g["bracket"][(y, x)].items()}
    return {}


# ---------------------------------------------------------------------------
# graded commutative dgas

# H*(S^3)
DGA_S3 = {
    "basis": [("1", 0), ("w", 3)],
    "d": {},
    "mul": {("1", "1"): {"1": 1}, ("1", "w"): {"w": 1}},
    "top": "w",
}

# acyclic piece glued to the sphere: du = v, uv = w
DGA_UV = {
    "basis": [("1", 0), ("u", 1), ("v", 2), ("w", 3)],
    "d": {"u": {"v": 1}},
    "mul": {("1", "1"): {"1": 1}, ("1", "u"): {"u": 1}, ("1", "v"): {"v": 1},
            ("1", "w"): {"w": 1}, ("u", "v"): {"w": 1}},
    "top": "w",
}

# a model with a Massey-type product: a1 a2 = dk
DGA_MASSEY = {
    "basis": [("1", 0), ("a1", 1), ("a2", 1), ("k", 1), ("b", 2), ("al1", 2), ("al2", 2),
              ("w", 3)],
    "d": {"k": {"b": 1}},
    "mul": {("1", x): {x: 1} for x in ["1", "a1", "a2", "k", "b", "al1", "al2", "w"]} | {
        ("a1", "a2"): {"b": 1}, ("a2", "k"): {"al1": 1}, ("a1", "k"): {"al2": -1},
        ("a1", "al1"): {"w": 1}, ("a2", "al2"): {"w": 1}, ("k", "b"): {"w": 1}},
    "top": "w",
}


def _dga_mul(A, degs, x, y):
    if (x, y) in A["mul"]:
        return dict(A["mul"][(x, y)])
    if (y, x) in A["mul"]:
        s = -1 if (degs[x] * degs[y]) % 2 else 1
        return {k: s * v for k, v in A["mul"][(y, x)].items()}
    return {}


def tensor_dgla(A, g, arity_cap=4):
    """The cyclic dgla A (x) g, basis names 'a_x'."""
    degs = dict(A["basis"])
    basis = [("%s_%s" % (a, x), d) for a, d in A["basis"] for x in g["basis"]]
    V = GradedVectorSpace(tuple(basis))
    d_entries, br_entries = [], []
    for a, _ in A["basis"]:
        for c, coef in A["d"].get(a, {}).items():
            for x in g["basis"]:
                d_entries.append((("%s_%s" % (a, x),), "%s_%s" % (c, x), coef))
    names = [(a, x) for a, _ in A["basis"] for x in g["basis"]]
    for i, (a, x) in enumerate(names):
        for j in range(i, len(names)):
            b, y = names[j]
            ab = _dga_mul(A, degs, a, b)
            xy = _lie_bracket(g, x, y)
            if not ab or not xy:
                continue
            val = {}
            for c, u in ab.items():
                for z, v in xy.items():
                    vec_iadd(val, {"%s_%s" % (c, z): Fraction(u) * v})
            if i == j and not degs[a] % 2:
                continue
            for out, coef in val.items():
                br_entries.append((("%s_%s" % (a, x), "%s_%s" % (b, y)), out, coef))
    ops = [MultilinearOperation.from_entries(V, 1, d_entries),
           MultilinearOperation.from_entries(V, 2, br_entries)]
    pairing = {}
    for a, x in names:
        for b, y in names:
            ab = _dga_mul(A, degs, a, b)
            top = ab.get(A["top"], 0)
            form = g["form"].get((x, y), g["form"].get((y, x), 0))
            if top and form:
                pairing[("%s_%s" % (a, x), "%s_%s" % (b, y))] = Fraction(top) * form
    kappa = CyclicPairing(V, pairing, symmetrize=False) if g["form"] else None
    return LInfinityStructure(V, ops, arity_cap, kappa)


def quartic_dgla(c=1, cubic=0, arity_cap=4):
    """
    Four-dimensional cyclic dgla: dk = b, [x,x] = b + cubic*xi, [x,k] = c*xi.
    Transfer produces nu_3(x,x,x) proportional to c.
    """
    V = GradedVectorSpace((("x", 1), ("k", 1), ("xi", 2), ("b", 2)))
    d = MultilinearOperation.from_entries(V, 1, [(("k",), "b", 1)])
    ent = [(("x", "x"), "b", c), (("x", "k"), "xi", c)]
    if cubic:
        ent.append((("x", "x"), "xi", cubic))
    br = MultilinearOperation.from_entries(V, 2, ent)
    kappa = CyclicPairing(V, {("x", "xi"): 1, ("k", "b"): 1})
    return LInfinityStructure(V, [d, br], arity_cap, kappa)


def acyclic_dgla(arity_cap=4):
    V = GradedVectorSpace((("k", 1), ("b", 2)))
    d = MultilinearOperation.from_entries(V, 1, [(("k",), "b", 1)])
    return LInfinityStructure(V, [d], arity_cap, CyclicPairing(V, {("k", "b"): 1}))


# ---------------------------------------------------------------------------
# minimal structures realising a given potential

def potential_sign(k):
    return -1 if (k * (k + 1) // 2) % 2 else 1


def structure_from_potential(f, arity_cap=None):
    """
    Minimal cyclic structure on H^1 + H^2 whose superpotential is f.

    H^1 has the variables of f as basis, H^2 the dual names 'd<var>' with
    kappa(x, dx) = 1.  The degree k+1 part of f fixes mu_k on H^1.
    """
    names = list(f.vars)
    duals = ["d" + v for v in names]
    V = GradedVectorSpace(tuple((v, 1) for v in names) + tuple((v, 2) for v in duals))
    byk = {}
    for mono, c in f.terms.items():
        deg = sum(mono)
        if deg < 3:
            raise ValueError("potential must start in degree 3")
        byk.setdefault(deg - 1, []).append((mono, c))
    top = max(byk) if byk else 1
    cap = max(arity_cap or 4, top)
    ops = []
    for k, terms in sorted(byk.items()):
        entries = []
        scale = Fraction(factorial(k + 1), potential_sign(k))
        for mono, c in terms:
            # symmetric tensor T with T(tuple) = coeff / multinomial
            mult = factorial(k + 1)
            for e in mono:
                mult //= factorial(e)
            T = scale * c / mult
            letters = [i for i, e in enumerate(mono) for _ in range(e)]
            seen = set()
            for j in set(letters):
                rest = list(letters)
                rest.remove(j)
                key = tuple(rest)
                if (key, j) in seen:
                    continue
                seen.add((key, j))
                entries.append((tuple(names[i] for i in key), duals[j], T))
        ops.append(MultilinearOperation.from_entries(V, k, entries))
    kappa = CyclicPairing(V, {(v, dv): 1 for v, dv in zip(names, duals)})
    return LInfinityStructure(V, ops, cap, kappa)


# ---------------------------------------------------------------------------
# the JSON corpus shipped with the package

def data_path(name):
    return Path(__file__).resolve().parent / "data" / name


def load_json(name):
    with data_path(name).open() as fh:
        return json.load(fh)


def dgla_fixtures():
    """The shipped cyclic dgla fixtures, name -> structure."""
    out = {}
    for name in load_json("dgla_index.json"):
        out[name] = LInfinityStructure.from_json(load_json("structure_%s.json" % name))
    return out


def build_dgla_corpus():
    """Recreate the dgla fixtures from the builders (used to write data/)."""
    return {
        "cubic": structure_from_potential(_series({"x": 3}, Fraction(-1, 6))),
        "quartic": quartic_dgla(),
        "cubic_quartic": quartic_dgla(c=1, cubic=1),
        "acyclic": acyclic_dgla(),
        "so3_sphere": tensor_dgla(DGA_S3, SO3),
        "so3_uv": tensor_dgla(DGA_UV, SO3),
        "massey_so3": tensor_dgla(DGA_MASSEY, SO3),
    }


def _series(mono, c):
    from .potential import FormalPowerSeries
    vars_ = tuple(mono)
    return FormalPowerSeries(vars_, {tuple(mono[v] for v in vars_): c})


def scalar(x):
    return parse_scalar(x)
