"""
Homotopy transfer of a cyclic L-infinity structure onto H = Pi(L).

The transferred operations and the morphism phi: H -> L are built in the
shifted picture by the usual recursion, which unrolls to the sum over rooted
trees (q_k at vertices, eta on internal edges, p at the root, iota at the
leaves):

    R_n   = sum_{k>=2} q_k(phi(B_1), .., phi(B_k))  -  sum_{2<=m<n} phi_m(Q'_{n->m})
    phi_n = eta R_n,        q'_n = p R_n

Nothing here is trusted: callers verify the output with the linf checkers.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import _linalg as la
from .graded_core import GradedVectorSpace, koszul_sign, set_partitions, shuffles, vec_iadd
from .linf import (
    CyclicPairing, LInfinityMorphism, LInfinityStructure, ShiftedStructure,
    canonical_word, check_cyclic, check_jacobi, check_morphism, cohomology_split,
    decalage, is_quasi_isomorphism, sorted_inputs, undecalage,
)
from .report import FAIL, PASS, Report, combine


@dataclass
class Homotopy:
    """Degree -1 linear map on L, stored as name -> vector."""

    space: GradedVectorSpace
    table: dict

    def __call__(self, v):
        out = {}
        for a, x in v.items():
            img = self.table.get(a)
            if img:
                vec_iadd(out, img, x)
        return out

    def to_json(self):
        from .graded_core import format_scalar
        return {a: {b: format_scalar(c) for b, c in sorted(v.items())}
                for a, v in self.table.items() if v}


def standard_homotopy(split):
    """eta = q on B, zero on H and K."""
    sp = split.space
    table = {}
    for a in sp.names:
        deg = sp.degree(a)
        b, _, _ = split.coords({a: Fraction(1)})
        img = {}
        for j, c in enumerate(b):
            if c:
                vec_iadd(img, split.q(j, deg), c)
        if img:
            table[a] = img
    return Homotopy(sp, table)


def projector(L, eta):
    """Pi = 1 - (d eta + eta d) as name -> vector."""
    out = {}
    for a in L.space.names:
        v = {a: Fraction(1)}
        vec_iadd(v, L.d(eta({a: 1})), -1)
        vec_iadd(v, eta(L.d({a: 1})), -1)
        out[a] = v
    return out


def _apply(table, v):
    out = {}
    for a, x in v.items():
        img = table.get(a)
        if img:
            vec_iadd(out, img, x)
    return out


def check_homotopy(L, eta, kappa=None, literal_sign=False):
    """
    eta^2 = 0, eta d eta = eta, and compatibility with kappa.

    The compatibility used by default is kappa(eta x, y) = (-1)^x kappa(x, eta y),
    the sign inherited from inverting d on K + B.  ``literal_sign`` switches to
    kappa(eta x, y) + (-1)^x kappa(x, eta y) = 0 instead.
    """
    sp = L.space
    for a in sp.names:
        if eta(eta({a: 1})):
            return Report("homotopy", FAIL, {"reason": "eta^2 != 0", "at": a})
        if eta(L.d(eta({a: 1}))) != eta({a: 1}):
            return Report("homotopy", FAIL, {"reason": "eta d eta != eta", "at": a})
        for b, v in eta({a: 1}).items():
            if sp.degree(b) != sp.degree(a) - 1:
                return Report("homotopy", FAIL, {"reason": "degree", "at": a})
    kappa = kappa if kappa is not None else L.pairing
    if kappa is not None:
        for a in sp.names:
            ea = eta({a: 1})
            for b in sp.names:
                s = -1 if sp.degree(a) % 2 else 1
                if literal_sign:
                    s = -s
                lhs = kappa.pair(ea, {b: 1})
                rhs = s * kappa.pair({a: 1}, eta({b: 1}))
                if lhs != rhs:
                    return Report("homotopy", FAIL, {"reason": "pairing", "pair": [a, b]})
    return Report("homotopy", PASS)


@dataclass
class TransferResult:
    Pi: dict
    H: GradedVectorSpace
    iota: dict                  # H name -> L vector
    p_table: dict               # L name -> H vector
    structure: LInfinityStructure
    morphism: LInfinityMorphism
    eta: Homotopy

    def p(self, v):
        return _apply(self.p_table, v)

    def to_json(self):
        out = self.structure.to_json()
        out["morphism"] = self.morphism.to_json()
        from .graded_core import format_scalar
        out["inclusion"] = {h: {a: format_scalar(c) for a, c in sorted(v.items())}
                            for h, v in self.iota.items()}
        return out


def _image_basis(L, Pi):
    """Basis of Pi(L) chosen greedily over the basis of L, per degree."""
    sp = L.space
    names, iota = [], {}
    for deg in sp.degrees():
        comp = sp.component(deg)
        rows, r = [], 0
        for a in comp:
            v = Pi[a]
            if not v:
                continue
            trial = rows + [[v.get(c, Fraction(0)) for c in comp]]
            rr = la.rank(trial)
            if rr > r:
                rows, r = trial, rr
                name = a if v == {a: 1} else "[%s]" % a
                names.append((name, deg))
                iota[name] = v
    return GradedVectorSpace(tuple(names)), iota


def _projection(L, H, iota, Pi):
    """p: L -> H with iota p = Pi, via coordinates in the image basis."""
    sp = L.space
    p_table = {}
    for deg in sp.degrees():
        comp = sp.component(deg)
        hs = H.component(deg)
        if not hs:
            continue
        M = [[iota[h].get(c, Fraction(0)) for h in hs] for c in comp]
        for a in comp:
            v = Pi[a]
            if not v:
                continue
            x = la.solve(M, [v.get(c, Fraction(0)) for c in comp])
            p_table[a] = {h: c for h, c in zip(hs, x) if c}
    return p_table


def transfer(L, eta=None, cap=None, check=True):
    """Transfer (L, mu, kappa) along eta; the standard homotopy by default."""
    cap = L.arity_cap if cap is None else cap
    if cap > L.arity_cap:
        raise ValueError("cap exceeds the operations available on L")
    if eta is None:
        eta = standard_homotopy(cohomology_split(L, L.pairing))
    if check:
        rep = check_homotopy(L, eta)
        if not rep:
            raise ValueError("homotopy invariants violated: %r" % (rep.witness,))
    Pi = projector(L, eta)
    H, iota = _image_basis(L, Pi)
    p_table = _projection(L, H, iota, Pi)

    S = decalage(L)
    Hsp = H
    phi = {1: {(h,): dict(iota[h]) for h in Hsp.names if iota[h]}}
    qH = {}

    def phi_eval(m, names):
        key, s = canonical_word(Hsp, list(names))
        if not s:
            return {}
        val = phi.get(m, {}).get(key)
        if not val:
            return {}
        return dict(val) if s == 1 else {a: -x for a, x in val.items()}

    def qH_eval(j, names):
        t = qH.get(j)
        if not t:
            return {}
        key, s = canonical_word(Hsp, list(names))
        if not s:
            return {}
        val = t.get(key)
        if not val:
            return {}
        return dict(val) if s == 1 else {a: -x for a, x in val.items()}

    for n in range(2, cap + 1):
        phi[n], qH[n] = {}, {}
        for w in sorted_inputs(Hsp, n):
            sd = [Hsp.degree(a) - 1 for a in w]
            R = {}
            for part in set_partitions(n):
                k = len(part)
                if k < 2 or k not in S.tables:
                    continue
                vecs = []
                for block in part:
                    v = phi.get(len(block), {}).get(tuple(w[i] for i in block))
                    if not v:
                        break
                    vecs.append(v)
                else:
                    perm = tuple(i + 1 for block in part for i in block)
                    vec_iadd(R, S.q_vectors(k, vecs), koszul_sign(perm, sd))
            for m in range(2, n):
                j = n - m + 1
                if not qH.get(j):
                    continue
                for sigma in shuffles(j, n):
                    y = qH_eval(j, [w[i - 1] for i in sigma[:j]])
                    if not y:
                        continue
                    e = koszul_sign(sigma, sd)
                    rest = [w[i - 1] for i in sigma[j:]]
                    for h, c in y.items():
                        vec_iadd(R, phi_eval(m, [h] + rest), -e * c)
            if not R:
                continue
            ph = eta(R)
            if ph:
                phi[n][w] = ph
            qh = _apply(p_table, R)
            if qh:
                qH[n][w] = qh
    kappa_H = None
    if L.pairing is not None:
        vals = {}
        for a in Hsp.names:
            for b in Hsp.names:
                c = L.pairing.pair(iota[a], iota[b])
                if c:
                    vals[(a, b)] = c
        kappa_H = CyclicPairing(Hsp, vals, symmetrize=False)
    shifted = ShiftedStructure(Hsp, {k: t for k, t in qH.items() if t})
    structure = undecalage(shifted, cap, kappa_H)
    morphism = LInfinityMorphism(Hsp, L.space, phi)
    return TransferResult(Pi, Hsp, iota, p_table, structure, morphism, eta)


def verify_transfer(L, result, cap=None):
    """All post-hoc checks on a transfer result, as one combined report."""
    cap = result.structure.arity_cap if cap is None else cap
    Hs = result.structure
    reports = []
    # Pi^2 = Pi, p iota = id
    Pi = result.Pi
    idem = all(_apply(Pi, Pi[a]) == Pi[a] for a in L.space.names)
    reports.append(Report("projector", PASS if idem else FAIL))
    pi_ok = all(_apply(result.p_table, result.iota[h]) == {h: 1} for h in Hs.space.names)
    reports.append(Report("p_iota", PASS if pi_ok else FAIL))
    reports.append(Report("nu1_zero", PASS if 1 not in Hs.ops else FAIL))
    reports.append(check_jacobi(Hs, cap))
    if Hs.pairing is not None:
        reports.append(check_cyclic(Hs, cap=cap))
    reports.append(check_morphism(result.morphism, Hs, L, cap))
    qi = is_quasi_isomorphism(result.morphism, Hs, L)
    reports.append(Report("quasi_isomorphism", PASS if qi else FAIL))
    return combine("transfer", reports, cap=cap, H_dim=Hs.space.dim)
