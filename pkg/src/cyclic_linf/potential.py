"""
Truncated formal power series, the superpotential of a minimal cyclic
structure, direct sums, and the additive split of the potential.
"""

from fractions import Fraction
from itertools import combinations_with_replacement
from math import factorial

from .graded_core import format_scalar, parse_scalar
from .linf import CyclicPairing, LInfinityStructure, MultilinearOperation
from .graded_core import GradedVectorSpace


class FormalPowerSeries:
    """
    Exact multivariate series.  ``terms`` maps exponent tuples (aligned with
    ``vars``) to nonzero Fractions.  ``cap`` is the truncation degree, or None
    for an honest polynomial.
    """

    def __init__(self, vars, terms=None, cap=None, blocks=None):
        self.vars = tuple(vars)
        if len(set(self.vars)) != len(self.vars):
            raise ValueError("repeated variable names")
        self.cap = cap
        self.terms = {}
        n = len(self.vars)
        for mono, c in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != n or min(mono, default=0) < 0:
                raise ValueError("bad monomial %r" % (mono,))
            if cap is not None and sum(mono) > cap:
                continue
            c = parse_scalar(c)
            if c:
                self.terms[mono] = self.terms.get(mono, 0) + c
                if not self.terms[mono]:
                    del self.terms[mono]
        self.blocks = dict(blocks) if blocks else {}

    # construction -------------------------------------------------------

    @classmethod
    def from_dict(cls, vars, mono_dict, cap=None):
        """mono_dict: {((var, exp), ...): coeff} or {"x^2*y": coeff}-free form."""
        vars = tuple(vars)
        terms = {}
        for mono, c in mono_dict.items():
            e = [0] * len(vars)
            for v, k in mono:
                e[vars.index(v)] += k
            terms[tuple(e)] = terms.get(tuple(e), 0) + parse_scalar(c)
        return cls(vars, terms, cap)

    @classmethod
    def variable(cls, vars, name, cap=None):
        e = [0] * len(vars)
        e[list(vars).index(name)] = 1
        return cls(vars, {tuple(e): 1}, cap)

    @classmethod
    def constant(cls, vars, c, cap=None):
        return cls(vars, {(0,) * len(vars): c}, cap)

    # arithmetic ---------------------------------------------------------

    def _cap(self, other):
        caps = [c for c in (self.cap, getattr(other, "cap", None)) if c is not None]
        return min(caps) if caps else None

    def __add__(self, other):
        if not isinstance(other, FormalPowerSeries):
            other = FormalPowerSeries.constant(self.vars, other)
        if other.vars != self.vars:
            raise ValueError("variable mismatch")
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, 0) + c
        return FormalPowerSeries(self.vars, t, self._cap(other), self.blocks)

    __radd__ = __add__

    def __neg__(self):
        return FormalPowerSeries(self.vars, {m: -c for m, c in self.terms.items()}, self.cap,
                                 self.blocks)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, FormalPowerSeries):
            c = parse_scalar(other)
            return FormalPowerSeries(self.vars, {m: c * x for m, x in self.terms.items()},
                                     self.cap, self.blocks)
        if other.vars != self.vars:
            raise ValueError("variable mismatch")
        cap = self._cap(other)
        t = {}
        for m1, c1 in self.terms.items():
            d1 = sum(m1)
            for m2, c2 in other.terms.items():
                if cap is not None and d1 + sum(m2) > cap:
                    continue
                m = tuple(a + b for a, b in zip(m1, m2))
                t[m] = t.get(m, 0) + c1 * c2
        return FormalPowerSeries(self.vars, t, cap, self.blocks)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = FormalPowerSeries.constant(self.vars, 1, self.cap)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, FormalPowerSeries):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __repr__(self):
        return "FormalPowerSeries(%s)" % self.to_string()

    # inspection ---------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((sum(m) for m in self.terms), default=-1)

    def order(self):
        return min((sum(m) for m in self.terms), default=None)

    def coeff(self, mono):
        return self.terms.get(tuple(mono), Fraction(0))

    def homogeneous_part(self, d):
        return FormalPowerSeries(self.vars, {m: c for m, c in self.terms.items() if sum(m) == d},
                                 self.cap, self.blocks)

    def truncate(self, d):
        return FormalPowerSeries(self.vars, self.terms, d if self.cap is None else min(d, self.cap),
                                 self.blocks)

    def occurring_vars(self):
        return tuple(v for i, v in enumerate(self.vars) if any(m[i] for m in self.terms))

    def value_at_zero(self):
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    # calculus and substitution -----------------------------------------

    def derivative(self, var):
        i = self.vars.index(var)
        t = {}
        for m, c in self.terms.items():
            if m[i]:
                mm = list(m)
                mm[i] -= 1
                t[tuple(mm)] = c * m[i]
        cap = None if self.cap is None else self.cap - 1
        return FormalPowerSeries(self.vars, t, cap, self.blocks)

    def restrict(self, zero_vars):
        """Set the given variables to zero and drop them."""
        zero = set(zero_vars)
        keep = [i for i, v in enumerate(self.vars) if v not in zero]
        t = {}
        for m, c in self.terms.items():
            if any(m[i] for i, v in enumerate(self.vars) if v in zero):
                continue
            mm = tuple(m[i] for i in keep)
            t[mm] = t.get(mm, 0) + c
        blocks = {v: b for v, b in self.blocks.items() if v not in zero}
        return FormalPowerSeries(tuple(self.vars[i] for i in keep), t, self.cap, blocks)

    def rename(self, mapping):
        return FormalPowerSeries(tuple(mapping.get(v, v) for v in self.vars), self.terms,
                                 self.cap, {mapping.get(v, v): b for v, b in self.blocks.items()})

    def with_vars(self, vars):
        """Re-embed into a larger (or reordered) variable list."""
        vars = tuple(vars)
        pos = [vars.index(v) for v in self.vars]
        t = {}
        for m, c in self.terms.items():
            e = [0] * len(vars)
            for p, k in zip(pos, m):
                e[p] = k
            t[tuple(e)] = c
        return FormalPowerSeries(vars, t, self.cap, self.blocks)

    def substitute(self, images, new_vars):
        """
        Replace each variable by a series in new_vars (a ring map).  Variables
        without an image are kept, provided they occur in new_vars.
        """
        new_vars = tuple(new_vars)
        out = FormalPowerSeries(new_vars, {}, self.cap)
        powers = {}
        for m, c in self.terms.items():
            term = FormalPowerSeries.constant(new_vars, c)
            for v, e in zip(self.vars, m):
                if e:
                    key = (v, e)
                    if key not in powers:
                        img = images.get(v)
                        if img is None:
                            if v not in new_vars:
                                raise ValueError("no image for %s" % v)
                            img = FormalPowerSeries.variable(new_vars, v)
                        powers[key] = img ** e
                    term = term * powers[key]
            out = out + term
        out.cap = None
        return out

    def translate(self, point):
        """g(x) = f(point + x) for a point given as {var: value}."""
        images = {}
        for v in self.vars:
            img = FormalPowerSeries.variable(self.vars, v)
            a = parse_scalar(point.get(v, 0))
            if a:
                img = img + a
            images[v] = img
        g = self.substitute(images, self.vars)
        g.blocks = dict(self.blocks)
        return g

    # serialisation ------------------------------------------------------

    def to_json(self):
        out = {"vars": list(self.vars), "cap": self.cap,
               "terms": [{"monomial": {v: e for v, e in zip(self.vars, m) if e},
                          "coeff": format_scalar(c)}
                         for m, c in sorted(self.terms.items(), key=lambda t: (sum(t[0]),
                                                                               [-e for e in t[0]]))]}
        if self.blocks:
            out["blocks"] = dict(sorted(self.blocks.items()))
        return out

    @classmethod
    def from_json(cls, obj):
        try:
            vars = tuple(obj["vars"])
            terms = {}
            for t in obj.get("terms", []):
                e = [0] * len(vars)
                for v, k in t["monomial"].items():
                    e[vars.index(v)] += int(k)
                terms[tuple(e)] = terms.get(tuple(e), 0) + parse_scalar(t["coeff"])
            return cls(vars, terms, obj.get("cap"), obj.get("blocks"))
        except (KeyError, TypeError, ValueError) as e:
            raise ValueError("malformed series: %s" % e)

    def to_string(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items(), key=lambda t: (sum(t[0]), [-e for e in t[0]])):
            mon = "*".join(v if e == 1 else "%s^%d" % (v, e) for v, e in zip(self.vars, m) if e)
            if not mon:
                parts.append(str(c))
            elif c == 1:
                parts.append(mon)
            elif c == -1:
                parts.append("-" + mon)
            else:
                parts.append("%s*%s" % (c, mon))
        return " + ".join(parts).replace("+ -", "- ")


def parse_polynomial(text, vars=None):
    """
    Read sums of terms like '3/2*x^2*y - z^3'.  Only for convenience in
    fixtures and the command line.
    """
    text = text.replace(" ", "").replace("-", "+-")
    raw = [t for t in text.split("+") if t]
    monos = []
    seen = []
    for t in raw:
        sign = 1
        while t.startswith("-"):
            sign, t = -sign, t[1:]
        c = Fraction(sign)
        mono = {}
        for f in t.split("*"):
            if not f:
                continue
            if f[0].isdigit():
                c *= Fraction(f)
            else:
                v, _, e = f.partition("^")
                mono[v] = mono.get(v, 0) + (int(e) if e else 1)
                if v not in seen:
                    seen.append(v)
        monos.append((mono, c))
    vars = tuple(vars) if vars is not None else tuple(seen)
    terms = {}
    for mono, c in monos:
        e = tuple(mono.get(v, 0) for v in vars)
        if set(mono) - set(vars):
            raise ValueError("unknown variable in %r" % text)
        terms[e] = terms.get(e, 0) + c
    return FormalPowerSeries(vars, terms)


# ---------------------------------------------------------------------------
# superpotential

DEFAULT_DEGREE = 6


def _sign(k):
    return -1 if (k * (k + 1) // 2) % 2 else 1


def degree_one_frame(H):
    return H.space.component(1)


def _check_minimal(H, D):
    if 1 in H.ops:
        raise ValueError("mu_1 is nonzero; the potential needs a minimal structure")
    if H.pairing is None:
        raise ValueError("structure has no pairing")


def _superpotential(H, frame, D, coeff):
    if D is None:
        D = min(DEFAULT_DEGREE, H.arity_cap + 1)
    _check_minimal(H, D)
    frame = tuple(frame) if frame is not None else degree_one_frame(H)
    for v in frame:
        if H.space.degree(v) != 1:
            raise ValueError("frame element %s is not in degree 1" % v)
    if D - 1 > H.arity_cap:
        raise ValueError("cap %d too small for degree %d" % (H.arity_cap, D))
    n = len(frame)
    kappa = H.pairing
    terms = {}
    for k in range(2, D):
        op = H.op(k)
        if op is None:
            continue
        c_k = coeff(k)
        for idx in combinations_with_replacement(range(n), k):
            val = op.evaluate(tuple(frame[i] for i in idx))
            if not val:
                continue
            # number of orderings of this multiset
            mult = factorial(k)
            for i in set(idx):
                mult //= factorial(idx.count(i))
            for j in range(n):
                c = kappa.pair(val, {frame[j]: 1})
                if not c:
                    continue
                e = [0] * n
                for i in idx:
                    e[i] += 1
                e[j] += 1
                e = tuple(e)
                terms[e] = terms.get(e, 0) + c_k * mult * c
    return FormalPowerSeries(frame, terms, D)


def superpotential(H, frame=None, D=None):
    """
    f(z) = sum_{k>=2} (-1)^{k(k+1)/2}/(k+1)! kappa(mu_k(z,..,z), z), truncated at D.

    D defaults to the smaller of 6 and cap + 1; asking for more than the
    operations can supply raises ValueError.
    """
    return _superpotential(H, frame, D, lambda k: Fraction(_sign(k), factorial(k + 1)))


def superpotential_v3(H, frame=None, D=None):
    """The alternative normalisation sum_k (-1)^{k(k+1)}/k! kappa(mu_k(z,..,z), z)."""
    return _superpotential(H, frame, D, lambda k: Fraction(1, factorial(k)))


def compare_normalisations(H, frame=None, D=None):
    """Degree-wise ratio of the two normalisations (None where both vanish)."""
    f = superpotential(H, frame, D)
    g = superpotential_v3(H, frame, D)
    out = {}
    for d in range(3, f.cap + 1):
        a, b = f.homogeneous_part(d), g.homogeneous_part(d)
        if a.is_zero() and b.is_zero():
            out[d] = None
            continue
        m = next(iter(b.terms))
        out[d] = a.coeff(m) / b.coeff(m)
    return out


# ---------------------------------------------------------------------------
# direct sums

def direct_sum(L1, L2, prefixes=("1.", "2.")):
    if L1.arity_cap != L2.arity_cap:
        raise ValueError("incompatible arity caps")
    n1, n2 = set(L1.space.names), set(L2.space.names)
    r1 = r2 = lambda a: a
    if n1 & n2:
        r1 = lambda a: prefixes[0] + a
        r2 = lambda a: prefixes[1] + a
    V = GradedVectorSpace(tuple((r1(a), d) for a, d in L1.space.basis)
                          + tuple((r2(a), d) for a, d in L2.space.basis))
    ops = []
    for k in sorted(set(L1.ops) | set(L2.ops)):
        table = {}
        for L, r in ((L1, r1), (L2, r2)):
            op = L.op(k)
            if op is None:
                continue
            for key, val in op.table.items():
                table[tuple(r(a) for a in key)] = {r(b): c for b, c in val.items()}
        ops.append(MultilinearOperation(V, k, table))
    pairing = None
    if L1.pairing is not None or L2.pairing is not None:
        vals = {}
        for L, r in ((L1, r1), (L2, r2)):
            if L.pairing is not None:
                for (a, b), c in L.pairing.values.items():
                    vals[(r(a), r(b))] = c
        pairing = CyclicPairing(V, vals, symmetrize=False)
    return LInfinityStructure(V, ops, L1.arity_cap, pairing)


def verify_split(f, f1, f2):
    """True iff f = f1 + f2 in block coordinates with no cross terms."""
    if tuple(f.vars) != tuple(f1.vars) + tuple(f2.vars):
        raise ValueError("frame of f does not match the frames of f1 and f2")
    n1 = len(f1.vars)
    want = {}
    for m, c in f1.terms.items():
        want[m + (0,) * len(f2.vars)] = c
    for m, c in f2.terms.items():
        key = (0,) * n1 + m
        want[key] = want.get(key, 0) + c
    want = {m: c for m, c in want.items() if c}
    cap = min(c for c in (f.cap, f1.cap, f2.cap) if c is not None) if any(
        c is not None for c in (f.cap, f1.cap, f2.cap)) else None
    have = {m: c for m, c in f.terms.items() if cap is None or sum(m) <= cap}
    want = {m: c for m, c in want.items() if cap is None or sum(m) <= cap}
    return have == want


def jacobian_ideal(f):
    return [f.derivative(v) for v in f.vars]


def block_sum(f1, f2):
    """f1(z1) + f2(z2) on the concatenated variables (names must differ)."""
    vars = tuple(f1.vars) + tuple(f2.vars)
    if len(set(vars)) != len(vars):
        raise ValueError("variable names overlap")
    caps = [c for c in (f1.cap, f2.cap) if c is not None]
    g = f1.with_vars(vars) + f2.with_vars(vars)
    g.cap = min(caps) if caps else None
    return g
