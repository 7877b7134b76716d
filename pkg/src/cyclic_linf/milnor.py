"""
Milnor numbers of polynomial germs at the origin by truncated linear algebra
in the local ring, Milnor fibre Euler characteristics, Behrend values, the
Thom-Sebastiani identity and a checker for the blow-up formula.

The local algebra O/J is computed modulo m^N.  Rows m*(df/dx_i) are reduced
with the lowest monomial (degree first) as pivot, so truncating at a smaller
degree simply drops the pivots above it.  A power k with
m^k in J + m^{k+1} certifies, by Nakayama, that m^k lies in J and the
quotient dimension is exact.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement

from .graded_core import parse_scalar
from .potential import FormalPowerSeries, block_sum
from .report import FAIL, PASS, Report

DEFAULT_MAX_DEGREE = 12


class Inconclusive(Exception):
    """The bound was too small to certify the answer."""


class NonIsolated(Inconclusive):
    """The critical point is visibly not isolated."""


@dataclass
class MilnorData:
    n: int
    mu: int
    chi: int
    behrend: int
    certificate: int
    max_degree: int = DEFAULT_MAX_DEGREE
    basis: list = field(default_factory=list)

    def to_json(self):
        return {"n": self.n, "mu": self.mu, "chi": self.chi, "behrend": self.behrend,
                "certificate": self.certificate, "max_degree": self.max_degree}


def _monomials(n, degree):
    """Exponent tuples of total degree exactly `degree`, in a fixed order."""
    out = []
    for combo in combinations_with_replacement(range(n), degree):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(out, reverse=True)


def _order_key(m):
    return (sum(m), tuple(-e for e in m))


class _Echelon:
    """Sparse row echelon form; pivot = smallest monomial of a row."""

    def __init__(self):
        self.rows = {}

    def reduce(self, v):
        v = dict(v)
        while v:
            lead = min(v, key=_order_key)
            row = self.rows.get(lead)
            if row is None:
                return v, lead
            c = v[lead] / row[lead]
            for m, x in row.items():
                y = v.get(m, 0) - c * x
                if y:
                    v[m] = y
                else:
                    v.pop(m, None)
        return v, None

    def insert(self, v):
        v, lead = self.reduce(v)
        if lead is not None:
            self.rows[lead] = v
            return True
        return False


def _check_germ(f):
    if not isinstance(f, FormalPowerSeries):
        raise TypeError("expected a FormalPowerSeries")
    if f.value_at_zero():
        raise ValueError("germ has a constant term")


def milnor_number(f, max_degree=DEFAULT_MAX_DEGREE):
    """
    Return (mu, k, basis): the local Milnor number at 0, the certified power
    k with m^k contained in the Jacobian ideal, and the standard monomials
    spanning the local algebra.  Raises Inconclusive (or NonIsolated).
    """
    _check_germ(f)
    n = len(f.vars)
    if n == 0:
        # the local algebra of a point is the ground field
        return 1, 1, [()]
    grads = [f.derivative(v) for v in f.vars]
    if any(g.value_at_zero() for g in grads):
        return 0, 0, []
    if f.is_zero():
        raise NonIsolated("f vanishes identically")
    if len(f.occurring_vars()) < n:
        raise NonIsolated("f is constant along %s" % ", ".join(
            v for v in f.vars if v not in f.occurring_vars()))
    degf = f.degree()
    kmax = max_degree - degf
    if kmax < 1:
        raise Inconclusive("max_degree %d is below deg f + 1; raise --max-degree" % max_degree)
    N = kmax + 1
    ech = _Echelon()
    mons_by_deg = {d: _monomials(n, d) for d in range(N + 1)}
    for g in grads:
        gt = {m: c for m, c in g.terms.items() if sum(m) < N}
        if not gt:
            continue
        og = min(sum(m) for m in gt)
        for d in range(0, N - og):
            for m in mons_by_deg[d]:
                row = {}
                for e, c in gt.items():
                    t = tuple(a + b for a, b in zip(m, e))
                    if sum(t) < N:
                        row[t] = c
                if row:
                    ech.insert(row)
    pivots_by_deg = {}
    for lead in ech.rows:
        pivots_by_deg[sum(lead)] = pivots_by_deg.get(sum(lead), 0) + 1
    for k in range(1, kmax + 1):
        if pivots_by_deg.get(k, 0) == len(mons_by_deg[k]):
            basis = [m for d in range(k) for m in mons_by_deg[d] if m not in ech.rows]
            return len(basis), k, sorted(basis, key=_order_key)
    raise Inconclusive("no certificate m^k in J with k + deg f <= %d; raise --max-degree"
                       % max_degree)


def quasihomogeneous_mu(weights, d):
    """prod_i (d / w_i - 1) for a quasi-homogeneous isolated germ."""
    d = parse_scalar(d)
    out = Fraction(1)
    for w in weights:
        w = parse_scalar(w)
        if w <= 0:
            raise ValueError("weights must be positive")
        out *= d / w - 1
    return out


def sign(e):
    """(-1)^e as an int, for any integer e."""
    return -1 if e % 2 else 1


def chi_from_mu(n, mu):
    return 1 + sign(n - 1) * mu


def milnor_data(f, max_degree=DEFAULT_MAX_DEGREE):
    mu, k, basis = milnor_number(f, max_degree)
    n = len(f.vars)
    chi = chi_from_mu(n, mu)
    return MilnorData(n, mu, chi, sign(n) * (1 - chi), k, max_degree, basis)


def chi_milnor_fiber(f, max_degree=DEFAULT_MAX_DEGREE):
    return milnor_data(f, max_degree).chi


def behrend_value(f, max_degree=DEFAULT_MAX_DEGREE):
    """(-1)^n (1 - chi) of the Milnor fibre at 0."""
    return milnor_data(f, max_degree).behrend


def chi_of_linf(L, D=None, max_degree=DEFAULT_MAX_DEGREE):
    """
    chi(L) for a minimal cyclic structure whose potential is a polynomial,
    i.e. every nonzero operation has arity below D.
    """
    from .potential import superpotential
    if 1 in L.ops:
        raise ValueError("chi(L) is read off the minimal model; transfer first")
    D = L.arity_cap + 1 if D is None else D
    if L.max_arity() > D - 1:
        raise Inconclusive("operations of arity %d survive truncation at degree %d"
                           % (L.max_arity(), D))
    f = superpotential(L, D=D)
    f.cap = None
    return chi_milnor_fiber(f, max_degree)


def thom_sebastiani_check(f1, f2, max_degree=DEFAULT_MAX_DEGREE):
    """(1 - chi) of f1 + f2 on disjoint variables against the product."""
    if set(f1.vars) & set(f2.vars):
        f2 = f2.rename({v: v + "'" for v in f2.vars})
    d1 = milnor_data(f1, max_degree)
    d2 = milnor_data(f2, max_degree)
    d12 = milnor_data(block_sum(f1, f2), max_degree)
    lhs = 1 - d12.chi
    rhs = (1 - d1.chi) * (1 - d2.chi)
    signs = all(1 - d.chi == sign(d.n) * d.mu for d in (d1, d2, d12))
    ok = lhs == rhs and signs and d12.mu == d1.mu * d2.mu
    details = {"mu": [d1.mu, d2.mu, d12.mu], "one_minus_chi": [1 - d1.chi, 1 - d2.chi, lhs]}
    return Report("thom_sebastiani", PASS if ok else FAIL,
                  None if ok else {"lhs": lhs, "rhs": rhs, "sign_identity": signs}, details)


# ---------------------------------------------------------------------------
# germs away from the origin and the blow-up formula

def chart_pullback(f, center, i):
    """
    Pull f back to the chart of the blow-up along {x_j = 0, j in center}
    where x_i stays a coordinate: x_j -> x_i * zeta_j for the other j in
    the center.  The zeta_j keep the names x_j.
    """
    center = list(center)
    if i not in center:
        raise ValueError("chart variable must belong to the center")
    images = {}
    for v in f.vars:
        img = FormalPowerSeries.variable(f.vars, v)
        if v in center and v != i:
            img = img * FormalPowerSeries.variable(f.vars, i)
        images[v] = img
    return f.substitute(images, f.vars)


def _normal_crossing_chi(g):
    """
    chi for g = unit * prod x_i^{a_i} (times at most one smooth factor with
    a linear term in a variable outside the monomial); None otherwise.
    """
    n = len(g.vars)
    common = [min(m[i] for m in g.terms) for i in range(n)]
    q = {tuple(a - b for a, b in zip(m, common)): c for m, c in g.terms.items()}
    q = FormalPowerSeries(g.vars, q)
    support = [i for i in range(n) if common[i]]
    factors = len(support)
    if not q.value_at_zero():
        free = [i for i in range(n) if i not in support]
        lin = [i for i in free if q.coeff(tuple(int(j == i) for j in range(n)))]
        if not lin:
            return None
        factors += 1
        if factors == 1:
            return 1
        return 0
    if factors == 1:
        return common[support[0]]
    return 0


def chi_germ_at(f, point=None, max_degree=DEFAULT_MAX_DEGREE):
    """
    Euler characteristic of the Milnor fibre of f at a rational point.

    Variables that do not occur contribute a disc factor and are dropped.
    Smooth points give 1, isolated singular points go through the Milnor
    number, normal crossing germs u * prod x_i^{a_i} give a_i for a single
    factor and 0 otherwise.  Anything else raises Inconclusive.
    """
    g = f.translate(point or {})
    g = g - g.value_at_zero()
    g.cap = None
    g = g.restrict([v for v in g.vars if v not in g.occurring_vars()])
    if g.is_zero():
        # {g = t} is empty for t != 0
        return 0
    if any(g.derivative(v).value_at_zero() for v in g.vars):
        return 1
    nc = _normal_crossing_chi(g)
    if nc is not None:
        return nc
    return chi_milnor_fiber(g, max_degree)


def integrate_constructible(strata):
    """Weighted Euler characteristic: sum of chi_i * value_i."""
    return sum(int(c) * int(v) for c, v in strata)


def blowup_formula_check(f, center, strata, max_degree=DEFAULT_MAX_DEGREE, point=None):
    """
    Check  int_{P(T_y X / T_y Z)} chi(F_w(f~)) dchi
               = chi(F_y(f)) + (dim X - dim Z - 1) chi(F_y(f|_Z))
    at y (the origin unless `point` is given), for Z the coordinate subspace
    through y cut out by `center`.

    Each stratum is a dict with "chi" and either "value" or a representative
    {"chart": var, "point": {var: value}} on the exceptional fibre; the value
    is then chi of the chart pullback at that point.
    """
    center = list(center)
    if point:
        if any(parse_scalar(point.get(v, 0)) for v in center):
            raise ValueError("the point must lie on Z")
        f = f.translate(point)
        f = f - f.value_at_zero()
        f.cap = None
    c = len(center)
    if c == 0:
        raise ValueError("Z = X: nothing is blown up")
    if any(v not in f.vars for v in center):
        raise ValueError("center variables must be variables of f")
    total = sum(int(s["chi"]) for s in strata)
    if total != c:
        raise ValueError("strata Euler characteristics sum to %d, not chi(P^%d) = %d"
                         % (total, c - 1, c))
    rows = []
    for s in strata:
        if "value" in s:
            val = int(s["value"])
        else:
            chart = s["chart"]
            g = chart_pullback(f, center, chart)
            pt = {v: parse_scalar(x) for v, x in s.get("point", {}).items()}
            if pt.get(chart, 0) or any(pt.get(v, 0) for v in f.vars if v not in center):
                raise ValueError("representative point is not on the exceptional fibre")
            val = chi_germ_at(g, pt, max_degree)
        rows.append((int(s["chi"]), val))
    lhs = integrate_constructible(rows)
    chi_f = chi_germ_at(f, None, max_degree)
    chi_z = chi_germ_at(f.restrict(center), None, max_degree)
    rhs = chi_f + (c - 1) * chi_z
    details = {"lhs": lhs, "rhs": rhs, "chi_f": chi_f, "chi_f_Z": chi_z, "codim": c,
               "strata": [list(r) for r in rows]}
    return Report("blowup", PASS if lhs == rhs else FAIL,
                  None if lhs == rhs else {"lhs": lhs, "rhs": rhs}, details)
