"""
L-infinity and cyclic L-infinity structures with exact verification.

Operations mu_k are graded antisymmetric of degree 2 - k.  Tables are kept
only on sorted input tuples (sorted by basis position); any other ordering is
reached through the wedge sign.  The shifted operations q_k live on L[1],
are graded symmetric of degree +1, and drive the coderivation Q on S(L[1]).

Morphisms are stored in the shifted picture: components
F_n : S^n(L[1]) -> L'[1] of degree 0, graded symmetric in shifted degrees.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, product

from . import _linalg as la
from .graded_core import (
    GradedVectorSpace, format_scalar, koszul_sign, parse_scalar, set_partitions,
    shuffles, sort_sign, vec_iadd, wedge_sign, wedge_sort,
)
from .report import FAIL, PASS, Report, combine


def _clean(v):
    return {k: Fraction(x) for k, x in v.items() if x}


def _vec_json(v):
    return {k: format_scalar(x) for k, x in sorted(v.items())}


# ---------------------------------------------------------------------------
# operations

class MultilinearOperation:
    """A graded antisymmetric operation of the given arity on a space."""

    def __init__(self, space, arity, table=None, degree=None):
        self.space = space
        self.arity = int(arity)
        if self.arity < 1:
            raise ValueError("arity must be positive")
        self.degree = 2 - self.arity if degree is None else degree
        self.table = {}
        for key, val in (table or {}).items():
            self._set_sorted(tuple(key), _clean(val))

    def _set_sorted(self, key, val):
        sp = self.space
        if len(key) != self.arity:
            raise ValueError("wrong number of inputs %r" % (key,))
        idx = [sp.index(n) for n in key]
        if idx != sorted(idx):
            raise ValueError("table key not sorted: %r" % (key,))
        degs = [sp.degree(n) for n in key]
        _, s = wedge_sort(idx, degs)
        if not val:
            self.table.pop(key, None)
            return
        if s == 0:
            raise ValueError("nonzero value on a vanishing input %r" % (key,))
        want = sum(degs) + self.degree
        for out in val:
            if sp.degree(out) != want:
                raise ValueError("degree mismatch: %r -> %s has degree %d, expected %d"
                                 % (key, out, sp.degree(out), want))
        self.table[key] = val

    @classmethod
    def from_entries(cls, space, arity, entries):
        """entries: iterable of (inputs, output, coeff) in any input order."""
        op = cls(space, arity)
        acc = {}
        for inputs, output, coeff in entries:
            inputs = tuple(inputs)
            if len(inputs) != op.arity:
                raise ValueError("entry %r has the wrong arity" % (inputs,))
            idx = [space.index(n) for n in inputs]
            degs = [space.degree(n) for n in inputs]
            order, s = wedge_sort(idx, degs)
            if s == 0:
                raise ValueError("entry on a vanishing input %r" % (inputs,))
            key = tuple(inputs[i] for i in order)
            if output not in space:
                raise ValueError("unknown output %r" % output)
            vec_iadd(acc.setdefault(key, {}), {output: s * parse_scalar(coeff)})
        for key, val in acc.items():
            op._set_sorted(key, val)
        return op

    def __call__(self, *names):
        return self.evaluate(names)

    def evaluate(self, names):
        """Value on basis inputs in any order (a fresh dict)."""
        sp = self.space
        idx = [sp._index[n] for n in names]
        degs = [sp.basis[i][1] for i in idx]
        order, s = wedge_sort(idx, degs)
        if not s:
            return {}
        val = self.table.get(tuple(names[i] for i in order))
        if not val:
            return {}
        if s == 1:
            return dict(val)
        return {k: -x for k, x in val.items()}

    def evaluate_vectors(self, vectors):
        out = {}
        for combo in product(*[list(v.items()) for v in vectors]):
            c = 1
            for _, x in combo:
                c *= x
            vec_iadd(out, self.evaluate([n for n, _ in combo]), c)
        return out

    def entries(self):
        for key in sorted(self.table, key=lambda k: [self.space.index(n) for n in k]):
            for out, c in sorted(self.table[key].items(), key=lambda t: self.space.index(t[0])):
                yield key, out, c

    def is_zero(self):
        return not self.table

    def to_json(self):
        return {"arity": self.arity,
                "entries": [{"inputs": list(k), "output": o, "coeff": format_scalar(c)}
                            for k, o, c in self.entries()]}


class CyclicPairing:
    """Bilinear form kappa given by its values on basis pairs."""

    def __init__(self, space, values=None, symmetrize=True):
        self.space = space
        self.values = {}
        given = {}
        for (a, b), c in (values or {}).items():
            if a not in space or b not in space:
                raise ValueError("unknown basis element in pairing")
            c = parse_scalar(c)
            if c:
                given[(a, b)] = c
        self.values = dict(given)
        if symmetrize:
            for (a, b), c in given.items():
                if (b, a) not in given:
                    s = -1 if (space.degree(a) * space.degree(b)) % 2 else 1
                    self.values[(b, a)] = s * c

    @classmethod
    def from_entries(cls, space, entries):
        return cls(space, {(e["a"], e["b"]): e["value"] for e in entries})

    def __call__(self, a, b):
        return self.values.get((a, b), Fraction(0))

    def pair(self, u, v):
        s = Fraction(0)
        for a, x in u.items():
            for b, y in v.items():
                c = self.values.get((a, b))
                if c:
                    s += x * y * c
        return s

    def scaled(self, c):
        return CyclicPairing(self.space, {k: c * v for k, v in self.values.items()},
                             symmetrize=False)

    def is_zero(self):
        return not self.values

    def to_json(self):
        sp = self.space
        out = []
        for (a, b), c in sorted(self.values.items(), key=lambda t: (sp.index(t[0][0]),
                                                                    sp.index(t[0][1]))):
            if sp.index(a) <= sp.index(b) or (b, a) not in self.values:
                out.append({"a": a, "b": b, "value": format_scalar(c)})
        return out


class LInfinityStructure:
    """Operations mu_1..mu_K on a graded space, with an optional pairing."""

    def __init__(self, space, operations=(), arity_cap=4, pairing=None):
        self.space = space
        self.arity_cap = int(arity_cap)
        self.ops = {}
        for op in operations:
            if op.space is not space and op.space != space:
                raise ValueError("operation acts on a different space")
            if op.arity in self.ops:
                raise ValueError("duplicate arity %d" % op.arity)
            if not op.is_zero():
                self.ops[op.arity] = op
        self.pairing = pairing

    def op(self, k):
        return self.ops.get(k)

    def max_arity(self):
        return max(self.ops) if self.ops else 0

    def mu(self, k, names):
        op = self.ops.get(k)
        if op is None:
            return {}
        return op.evaluate(tuple(names))

    def mu_vectors(self, k, vectors):
        op = self.ops.get(k)
        if op is None:
            return {}
        return op.evaluate_vectors(vectors)

    def d(self, v):
        return self.mu_vectors(1, [v])

    def with_pairing(self, pairing):
        return LInfinityStructure(self.space, self.ops.values(), self.arity_cap, pairing)

    def to_json(self):
        out = {"space": self.space.to_json(),
               "operations": [self.ops[k].to_json() for k in sorted(self.ops)],
               "arity_cap": self.arity_cap}
        if self.pairing is not None:
            out["pairing"] = self.pairing.to_json()
        return out

    @classmethod
    def from_json(cls, obj):
        try:
            space = GradedVectorSpace.from_json(obj["space"])
            ops = []
            for o in obj.get("operations", []):
                ents = [(e["inputs"], e["output"], e["coeff"]) for e in o.get("entries", [])]
                ops.append(MultilinearOperation.from_entries(space, o["arity"], ents))
            pairing = None
            if obj.get("pairing") is not None:
                pairing = CyclicPairing.from_entries(space, obj["pairing"])
            cap = obj.get("arity_cap", 4)
        except (KeyError, TypeError) as e:
            raise ValueError("malformed structure: missing or bad field %s" % e)
        return cls(space, ops, cap, pairing)


def zero_structure(space, arity_cap=4, pairing=None):
    return LInfinityStructure(space, (), arity_cap, pairing)


# ---------------------------------------------------------------------------
# input enumeration

def sorted_inputs(space, n, antisymmetric=True):
    """
    Sorted n-tuples of basis names that do not vanish: in the exterior
    picture even letters may not repeat (equivalently, in S(L[1]) the
    shifted-odd letters may not repeat).
    """
    names = space.names
    for idx in combinations_with_replacement(range(len(names)), n):
        ok = True
        for a, b in zip(idx, idx[1:]):
            if a == b and not space.basis[a][1] % 2:
                ok = False
                break
        if ok:
            yield tuple(names[i] for i in idx)


# ---------------------------------------------------------------------------
# Jacobi identities

def jacobi_residual(L, n, inputs):
    """Left side of the n-th higher Jacobi identity on the given inputs."""
    if n > L.arity_cap:
        raise ValueError("n=%d exceeds the arity cap %d" % (n, L.arity_cap))
    if len(inputs) != n:
        raise ValueError("need exactly n inputs")
    degs = [L.space.degree(a) for a in inputs]
    out = {}
    for l in range(1, n + 1):
        k = n - l + 1
        if l not in L.ops or k not in L.ops:
            continue
        base = -1 if (k * (l - 1)) % 2 else 1
        for sigma in shuffles(l, n):
            inner = L.mu(l, [inputs[i - 1] for i in sigma[:l]])
            if not inner:
                continue
            s = base * wedge_sign(sigma, degs)
            rest = [inputs[i - 1] for i in sigma[l:]]
            for y, c in inner.items():
                vec_iadd(out, L.mu(k, [y] + rest), s * c)
    return out


def check_jacobi(L, cap=None):
    cap = L.arity_cap if cap is None else cap
    degset = set(L.space.degrees())
    checked = 0
    for n in range(1, cap + 1):
        for t in sorted_inputs(L.space, n):
            if sum(L.space.degree(a) for a in t) + 3 - n not in degset:
                continue
            checked += 1
            r = jacobi_residual(L, n, t)
            if r:
                return Report("jacobi", FAIL, {"n": n, "inputs": list(t), "residual": _vec_json(r)},
                              {"cap": cap})
    return Report("jacobi", PASS, None, {"cap": cap, "tuples": checked})


# ---------------------------------------------------------------------------
# decalage and the coderivation

def decalage_sign(degrees):
    k = len(degrees)
    e = k + sum((k - i) * x for i, x in enumerate(degrees, 1))
    return -1 if e % 2 else 1


class ShiftedStructure:
    """The operations q_k on L[1], graded symmetric of degree +1."""

    def __init__(self, space, tables):
        self.space = space          # unshifted space; shifted degree = degree - 1
        self.tables = tables        # k -> {sorted key: vector}

    def sdeg(self, name):
        return self.space.degree(name) - 1

    def q(self, k, names):
        t = self.tables.get(k)
        if not t:
            return {}
        sp = self.space
        idx = [sp._index[n] for n in names]
        sd = [sp.basis[i][1] - 1 for i in idx]
        order, s = sort_sign(idx, sd)
        for a, b in zip(order, order[1:]):
            if idx[a] == idx[b] and sd[a] % 2:
                return {}
        val = t.get(tuple(names[i] for i in order))
        if not val:
            return {}
        if s == 1:
            return dict(val)
        return {key: -x for key, x in val.items()}

    def q_vectors(self, k, vectors):
        out = {}
        if k not in self.tables:
            return out
        for combo in product(*[list(v.items()) for v in vectors]):
            c = 1
            for _, x in combo:
                c *= x
            vec_iadd(out, self.q(k, [n for n, _ in combo]), c)
        return out


def decalage(L):
    tables = {}
    for k, op in L.ops.items():
        t = {}
        for key, val in op.table.items():
            s = decalage_sign([L.space.degree(n) for n in key])
            t[key] = dict(val) if s == 1 else {a: -x for a, x in val.items()}
        tables[k] = t
    return ShiftedStructure(L.space, tables)


def undecalage(S, arity_cap=4, pairing=None):
    """Inverse of decalage; the sign twist is an involution."""
    ops = []
    for k, t in S.tables.items():
        table = {}
        for key, val in t.items():
            s = decalage_sign([S.space.degree(n) for n in key])
            table[key] = dict(val) if s == 1 else {a: -x for a, x in val.items()}
        ops.append(MultilinearOperation(S.space, k, table))
    return LInfinityStructure(S.space, ops, arity_cap, pairing)


def canonical_word(space, names):
    """Sort a word of S(L[1]); returns (key, sign) with sign 0 if it vanishes."""
    idx = [space._index[n] for n in names]
    sd = [space.basis[i][1] - 1 for i in idx]
    order, s = sort_sign(idx, sd)
    for a, b in zip(order, order[1:]):
        if idx[a] == idx[b] and sd[a] % 2:
            return None, 0
    return tuple(names[i] for i in order), s


def apply_Q(S, element):
    """The coderivation Q on an element {word: coeff} of S(L[1])."""
    sp = S.space
    out = {}
    for word, c in element.items():
        n = len(word)
        sd = [sp.degree(a) - 1 for a in word]
        for l in range(1, n + 1):
            if l not in S.tables:
                continue
            for sigma in shuffles(l, n):
                v = S.q(l, [word[i - 1] for i in sigma[:l]])
                if not v:
                    continue
                e = koszul_sign(sigma, sd) * c
                rest = [word[i - 1] for i in sigma[l:]]
                for y, a in v.items():
                    key, s = canonical_word(sp, [y] + rest)
                    if s:
                        vec_iadd(out, {key: s * e * a})
    return out


def coderivation_square(L, word, shifted=None):
    if len(word) > L.arity_cap:
        raise ValueError("word longer than the arity cap")
    S = shifted or decalage(L)
    return apply_Q(S, apply_Q(S, {tuple(word): Fraction(1)}))


def check_coderivation(L, cap=None):
    cap = L.arity_cap if cap is None else cap
    S = decalage(L)
    checked = 0
    for n in range(1, cap + 1):
        for w in sorted_inputs(L.space, n):
            checked += 1
            r = apply_Q(S, apply_Q(S, {w: Fraction(1)}))
            if r:
                wit = {" ".join(k): format_scalar(c) for k, c in sorted(r.items())}
                return Report("coderivation", FAIL, {"word": list(w), "Q2": wit}, {"cap": cap})
    return Report("coderivation", PASS, None, {"cap": cap, "words": checked})


# ---------------------------------------------------------------------------
# cyclicity

def _tuples_with_degree_sum(space, n, total):
    bydeg = {}
    for name, d in space.basis:
        bydeg.setdefault(d, []).append(name)
    degs = sorted(bydeg)
    if not degs:
        return
    lo, hi = degs[0], degs[-1]

    def rec(prefix, remaining, left):
        if left == 0:
            if remaining == 0:
                yield prefix
            return
        for d in degs:
            r = remaining - d
            if lo * (left - 1) <= r <= hi * (left - 1):
                for name in bydeg[d]:
                    yield from rec(prefix + (name,), r, left - 1)

    yield from rec((), total, n)


def check_cyclic(L, kappa=None, cap=None, nondegenerate=True):
    kappa = kappa if kappa is not None else L.pairing
    if kappa is None:
        return Report("cyclic", FAIL, {"reason": "no pairing"})
    sp = L.space
    cap = L.arity_cap if cap is None else cap
    for (a, b), c in kappa.values.items():
        if sp.degree(a) + sp.degree(b) != 3:
            return Report("cyclic", FAIL, {"reason": "support", "pair": [a, b]})
    for a in sp.names:
        for b in sp.names:
            s = -1 if (sp.degree(a) * sp.degree(b)) % 2 else 1
            if kappa(a, b) != s * kappa(b, a):
                return Report("cyclic", FAIL, {"reason": "graded symmetry", "pair": [a, b]})
    # compatibility with the differential
    for a in sp.names:
        da = L.mu(1, [a])
        for b in sp.names:
            s = -1 if sp.degree(a) % 2 else 1
            v = kappa.pair(da, {b: 1}) + s * kappa.pair({a: 1}, L.mu(1, [b]))
            if v:
                return Report("cyclic", FAIL, {"reason": "differential", "pair": [a, b]})
    checked = 0
    for n in range(1, cap + 1):
        if n not in L.ops:
            continue
        for t in _tuples_with_degree_sum(sp, n + 1, n + 1):
            checked += 1
            lhs = kappa.pair(L.mu(n, t[:n]), {t[n]: 1})
            x = [sp.degree(a) for a in t]
            e = n + x[0] * sum(x[1:])
            rhs = kappa.pair(L.mu(n, t[1:]), {t[0]: 1})
            if e % 2:
                rhs = -rhs
            if lhs != rhs:
                return Report("cyclic", FAIL, {"reason": "rotation", "n": n, "inputs": list(t),
                                               "lhs": format_scalar(lhs),
                                               "rhs": format_scalar(rhs)}, {"cap": cap})
    details = {"cap": cap, "tuples": checked}
    if nondegenerate:
        ok, wit = pairing_nondegenerate_on_cohomology(L, kappa)
        if not ok:
            return Report("cyclic", FAIL, {"reason": "degenerate on cohomology", **wit}, details)
    return Report("cyclic", PASS, None, details)


def pairing_nondegenerate_on_cohomology(L, kappa):
    split = cohomology_split(L)
    for i in sorted(split.H):
        Hi = split.H.get(i, [])
        Hj = split.H.get(3 - i, [])
        if len(Hi) != len(Hj):
            return False, {"degree": i, "dims": [len(Hi), len(Hj)]}
        if not Hi:
            continue
        M = [[kappa.pair(u, v) for v in Hj] for u in Hi]
        if la.det(M) == 0:
            return False, {"degree": i}
    return True, {}


# ---------------------------------------------------------------------------
# cohomology split

@dataclass
class CohomologySplit:
    """L^i = B^i + H^i + K^i with d: K^i -> B^{i+1} inverted by q."""

    space: GradedVectorSpace
    B: dict = field(default_factory=dict)      # degree -> list of vectors
    H: dict = field(default_factory=dict)
    K: dict = field(default_factory=dict)
    _inv: dict = field(default_factory=dict, repr=False)

    def q(self, b_index, degree):
        """q applied to the b_index-th basis vector of B^degree."""
        return self.K[degree - 1][b_index]

    def _basis(self, degree):
        return self.B.get(degree, []) + self.H.get(degree, []) + self.K.get(degree, [])

    def coords(self, v):
        """Split a homogeneous vector into coefficient lists (b, h, k)."""
        if not v:
            return [], [], []
        deg = self.space.vector_degree(v)
        names = self.space.component(deg)
        if deg not in self._inv:
            basis = self._basis(deg)
            M = [[vec.get(n, Fraction(0)) for vec in basis] for n in names]
            self._inv[deg] = la.inverse(M)
        inv = self._inv[deg]
        x = [v.get(n, Fraction(0)) for n in names]
        c = [sum((r[j] * x[j] for j in range(len(x)) if x[j]), Fraction(0)) for r in inv]
        nb, nh = len(self.B.get(deg, [])), len(self.H.get(deg, []))
        return c[:nb], c[nb:nb + nh], c[nb + nh:]

    def dims(self):
        degs = sorted(set(self.B) | set(self.H) | set(self.K))
        return {d: (len(self.B.get(d, [])), len(self.H.get(d, [])), len(self.K.get(d, [])))
                for d in degs}


def differential_matrix(L, i):
    src = L.space.component(i)
    tgt = L.space.component(i + 1)
    cols = [L.mu(1, [a]) for a in src]
    return [[col.get(t, Fraction(0)) for col in cols] for t in tgt], src, tgt


def cohomology_split(L, kappa=None):
    """
    Exact split by row reduction.  K^i is spanned by the basis vectors at the
    pivot columns of d_i; B^{i+1} by their images; H^i completes B^i inside
    the kernel.  With a nondegenerate pairing the split is then adjusted so
    that K is orthogonal to H and to itself.
    """
    sp = L.space
    degs = sp.degrees()
    split = CohomologySplit(sp)
    kernels = {}
    for i in degs:
        src = sp.component(i)
        D, _, tgt = differential_matrix(L, i)
        if tgt and any(any(r) for r in D):
            _, piv = la.rref(D)
        else:
            piv = []
        split.K[i] = [{src[p]: Fraction(1)} for p in piv]
        if piv:
            split.B[i + 1] = [L.mu(1, [src[p]]) for p in piv]
        kernels[i] = [{src[j]: x for j, x in enumerate(z) if x}
                      for z in (la.nullspace(D, len(src)) if tgt else
                                la.nullspace([], len(src)))]
    for i in degs:
        names = sp.component(i)
        chosen = list(split.B.get(i, []))
        rows = [[v.get(n, Fraction(0)) for n in names] for v in chosen]
        r = la.rank(rows) if rows else 0
        H = []
        for z in kernels[i]:
            trial = rows + [[z.get(n, Fraction(0)) for n in names]]
            rr = la.rank(trial)
            if rr > r:
                rows, r = trial, rr
                H.append(z)
        split.H[i] = H
        split.B.setdefault(i, [])
        split.K.setdefault(i, [])
    if kappa is not None:
        _make_compatible(split, kappa)
    return split


def _make_compatible(split, kappa):
    # K orthogonal to H
    for i in list(split.K):
        Hi, Hj = split.H.get(i, []), split.H.get(3 - i, [])
        if not split.K[i] or not Hj:
            continue
        G = [[kappa.pair(h, hp) for h in Hi] for hp in Hj]
        newK = []
        for k in split.K[i]:
            rhs = [kappa.pair(k, hp) for hp in Hj]
            c = la.solve(G, rhs) if Hi else None
            if c is None:
                raise ValueError("pairing is degenerate on cohomology; no compatible split")
            k = dict(k)
            for cj, h in zip(c, Hi):
                vec_iadd(k, h, -cj)
            newK.append(k)
        split.K[i] = newK
    # K isotropic: correct the lower degree side by coboundaries
    for i in list(split.K):
        j = 3 - i
        if i >= j or not split.K[i] or not split.K.get(j):
            continue
        Bi = split.B.get(i, [])
        Kj = split.K[j]
        G = [[kappa.pair(b, kp) for b in Bi] for kp in Kj]
        newK = []
        for k in split.K[i]:
            rhs = [-kappa.pair(k, kp) for kp in Kj]
            if not any(rhs):
                newK.append(k)
                continue
            c = la.solve(G, rhs) if Bi else None
            if c is None:
                raise ValueError("pairing is degenerate on L; no compatible split")
            k = dict(k)
            for cj, b in zip(c, Bi):
                vec_iadd(k, b, cj)
            newK.append(k)
        split.K[i] = newK
    split._inv.clear()


def cohomology_dims(L):
    """dim H^i by rank-nullity, independent of the split construction."""
    out = {}
    for i in L.space.degrees():
        n = len(L.space.component(i))
        D, _, _ = differential_matrix(L, i)
        Dm, _, _ = differential_matrix(L, i - 1)
        r_out = la.rank(D) if D and D[0] else 0
        r_in = la.rank(Dm) if Dm and Dm[0] else 0
        out[i] = n - r_out - r_in
    return out


# ---------------------------------------------------------------------------
# morphisms

class LInfinityMorphism:
    """Components F_n : S^n(L[1]) -> L'[1] of degree 0, on sorted words."""

    def __init__(self, source, target, components):
        self.source = source        # GradedVectorSpace
        self.target = target
        self.components = {n: {tuple(k): _clean(v) for k, v in t.items() if v}
                           for n, t in components.items()}
        for n, t in self.components.items():
            for key, val in t.items():
                want = sum(source.degree(a) for a in key) + 1 - n
                for out in val:
                    if target.degree(out) != want:
                        raise ValueError("component F_%d has the wrong degree at %r" % (n, key))

    def F(self, n, names):
        t = self.components.get(n)
        if not t:
            return {}
        key, s = canonical_word(self.source, list(names))
        if not s:
            return {}
        val = t.get(key)
        if not val:
            return {}
        return dict(val) if s == 1 else {a: -x for a, x in val.items()}

    def F_vectors(self, n, vectors):
        out = {}
        for combo in product(*[list(v.items()) for v in vectors]):
            c = 1
            for _, x in combo:
                c *= x
            vec_iadd(out, self.F(n, [a for a, _ in combo]), c)
        return out

    def linear_part(self, v):
        return self.F_vectors(1, [v])

    def to_json(self):
        return {"components": [
            {"arity": n, "entries": [{"inputs": list(k), "output": o, "coeff": format_scalar(c)}
                                     for k in sorted(t, key=lambda k: [self.source.index(a) for a in k])
                                     for o, c in sorted(t[k].items())]}
            for n, t in sorted(self.components.items())]}


def identity_morphism(L):
    return LInfinityMorphism(L.space, L.space, {1: {(a,): {a: 1} for a in L.space.names}})


def linear_morphism(source, target, matrix):
    """matrix: name -> target vector (a chain map, no higher components)."""
    return LInfinityMorphism(source, target, {1: {(a,): v for a, v in matrix.items() if v}})


def morphism_residual(F, L, L2, word, S=None, S2=None):
    """Projection to L'[1] of (Q' F - F Q) on a word of S(L[1])."""
    S = S or decalage(L)
    S2 = S2 or decalage(L2)
    out = {}
    for u, c in apply_Q(S, {tuple(word): Fraction(1)}).items():
        vec_iadd(out, F.F(len(u), u), -c)
    sd = [L.space.degree(a) - 1 for a in word]
    n = len(word)
    for part in set_partitions(n):
        k = len(part)
        if k not in S2.tables:
            continue
        perm = tuple(i + 1 for block in part for i in block)
        e = koszul_sign(perm, sd)
        vecs = []
        for block in part:
            v = F.F(len(block), [word[i] for i in block])
            if not v:
                break
            vecs.append(v)
        else:
            vec_iadd(out, S2.q_vectors(k, vecs), e)
    return out


def check_morphism(F, L, L2, cap=None):
    cap = min(L.arity_cap, L2.arity_cap) if cap is None else cap
    S, S2 = decalage(L), decalage(L2)
    checked = 0
    for n in range(1, cap + 1):
        for w in sorted_inputs(L.space, n):
            checked += 1
            r = morphism_residual(F, L, L2, w, S, S2)
            if r:
                return Report("morphism", FAIL, {"word": list(w), "residual": _vec_json(r)},
                              {"cap": cap})
    return Report("morphism", PASS, None, {"cap": cap, "words": checked})


def is_quasi_isomorphism(F, L, L2):
    for a in L.space.names:
        lhs = F.linear_part(L.mu(1, [a]))
        rhs = L2.mu_vectors(1, [F.F(1, [a])])
        if lhs != rhs:
            raise ValueError("F_1 is not a chain map at %s" % a)
    s1, s2 = cohomology_split(L), cohomology_split(L2)
    degs = sorted(set(s1.H) | set(s2.H))
    for i in degs:
        Hi, Hj = s1.H.get(i, []), s2.H.get(i, [])
        if len(Hi) != len(Hj):
            return False
        if not Hi:
            continue
        M = [s2.coords(F.linear_part(h))[1] if F.linear_part(h) else [Fraction(0)] * len(Hj)
             for h in Hi]
        if la.det(M) == 0:
            return False
    return True


def change_basis(L, new):
    """
    The same structure written in a new homogeneous basis.  ``new`` maps each
    basis name to the old-coordinate vector that now carries that name.
    """
    sp = L.space
    back = {}
    for d in sp.degrees():
        names = sp.component(d)
        for b in names:
            if sp.vector_degree(new[b]) not in (d, None):
                raise ValueError("new basis vector %s is not of degree %d" % (b, d))
        M = [[parse_scalar(new[b].get(a, 0)) for b in names] for a in names]
        if la.det(M) == 0:
            raise ValueError("basis change is singular in degree %d" % d)
        Minv = la.inverse(M)
        for i, a in enumerate(names):
            back[a] = {b: Minv[j][i] for j, b in enumerate(names) if Minv[j][i]}

    def to_new(v):
        out = {}
        for a, c in v.items():
            vec_iadd(out, back[a], c)
        return out

    ops = []
    for k, op in L.ops.items():
        table = {}
        for key in sorted_inputs(sp, k):
            val = to_new(op.evaluate_vectors([new[a] for a in key]))
            if val:
                table[key] = val
        ops.append(MultilinearOperation(sp, k, table, op.degree))
    pairing = None
    if L.pairing is not None:
        vals = {(a, b): L.pairing.pair(new[a], new[b]) for a in sp.names for b in sp.names}
        pairing = CyclicPairing(sp, vals, symmetrize=False)
    return LInfinityStructure(sp, ops, L.arity_cap, pairing)


def check_structure(L, cap=None, cyclic=None):
    """Jacobi, coderivation and (when a pairing is present) cyclicity."""
    cap = L.arity_cap if cap is None else cap
    reports = [check_jacobi(L, cap), check_coderivation(L, cap)]
    if cyclic or (cyclic is None and L.pairing is not None):
        reports.append(check_cyclic(L, cap=cap))
    return combine("structure", reports, cap=cap), reports
