"""
The acceptance battery.  Each criterion is a function returning a Report;
``run_suite`` evaluates criteria 1-11 in order, optionally on a thread pool.
Criterion 12 (determinism) compares renderings of the whole battery and so
takes the renderer as an argument.
"""

import random
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import _linalg as la
from . import corpus
from .fixtures import AFF1, DGA_UV, dgla_fixtures, structure_from_potential, tensor_dgla
from .joyce_song import check_formula1, check_formula2
from .linf import (
    LInfinityStructure, MultilinearOperation, change_basis, check_coderivation, check_jacobi,
    sorted_inputs,
)
from .milnor import (
    Inconclusive, behrend_value, blowup_formula_check, milnor_data, milnor_number,
    quasihomogeneous_mu, sign, thom_sebastiani_check,
)
from .motivic import euler_specialize, motivic_milnor_fiber, motivic_ts_check
from .potential import (
    FormalPowerSeries, block_sum, direct_sum, parse_polynomial, superpotential, verify_split,
)
from .report import FAIL, INCONCLUSIVE, PASS, Report, combine
from .transfer import transfer, verify_transfer

SEED = 20240601


def _safe(check, fn, *args, **kw):
    try:
        return fn(*args, **kw)
    except Inconclusive as e:
        return Report(check, INCONCLUSIVE, {"reason": str(e)})
    except ValueError as e:
        return Report(check, FAIL, {"error": str(e)})


# ---------------------------------------------------------------------------
# 1. Jacobi identities against Q^2 = 0

def _random_polynomial(rng, vars, degrees=(3, 4, 5)):
    f = FormalPowerSeries(vars, {})
    for _ in range(rng.randint(2, 4)):
        d = rng.choice(degrees)
        m = [0] * len(vars)
        for _ in range(d):
            m[rng.randrange(len(vars))] += 1
        c = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 2, 3]))
        f = f + FormalPowerSeries(vars, {tuple(m): c})
    return f


def _random_basis(rng, space):
    new = {}
    for d in space.degrees():
        names = space.component(d)
        while True:
            M = {b: {a: Fraction(rng.randint(-2, 2)) for a in names} for b in names}
            M = {b: {a: c for a, c in v.items() if c} for b, v in M.items()}
            if la.det([[M[b].get(a, 0) for b in names] for a in names]) != 0:
                break
        new.update(M)
    return new


def _corrupt(rng, L):
    """Add one random nonzero table entry of the right degree."""
    sp = L.space
    for _ in range(100):
        k = rng.choice(sorted(set(L.ops) | {1, 2, 3}))
        if k > L.arity_cap:
            continue
        keys = list(sorted_inputs(sp, k))
        if not keys:
            continue
        key = rng.choice(keys)
        degree = 2 - k
        want = sum(sp.degree(a) for a in key) + degree
        outs = sp.component(want)
        if not outs:
            continue
        out = rng.choice(outs)
        ops = []
        for j in sorted(set(L.ops) | {k}):
            op = L.op(j)
            table = {kk: dict(v) for kk, v in op.table.items()} if op is not None else {}
            if j == k:
                val = table.setdefault(key, {})
                val[out] = val.get(out, 0) + rng.choice([-2, -1, 1, 2])
                if not val[out]:
                    continue
            ops.append(MultilinearOperation(sp, j, table))
        return LInfinityStructure(sp, ops, L.arity_cap, L.pairing)
    raise ValueError("could not corrupt structure")


def criterion1_structures(seed=SEED, n_valid=20, n_corrupt=20):
    rng = random.Random(seed)
    pool = corpus.build_structures()
    bases = [pool[n] for n in ("cubic", "quartic", "cubic_quartic", "so3_sphere",
                               "pot_D4", "pot_E6")]
    bases.append(tensor_dgla(DGA_UV, AFF1))
    valid = []
    for i in range(n_valid):
        if i % 2:
            vars = ("x", "y", "z")[:rng.randint(2, 3)]
            base = structure_from_potential(_random_polynomial(rng, vars))
        else:
            base = rng.choice(bases)
        valid.append(change_basis(base, _random_basis(rng, base.space)))
    corrupted = []
    tries = 0
    while len(corrupted) < n_corrupt:
        tries += 1
        if tries > 50 * n_corrupt:
            raise RuntimeError("too few effective corruptions")
        L = _corrupt(rng, rng.choice(valid))
        j, q = check_jacobi(L), check_coderivation(L)
        if j.status == FAIL or q.status == FAIL:
            corrupted.append((L, j, q))
    return valid, corrupted


def criterion1(seed=SEED):
    valid, corrupted = criterion1_structures(seed)
    parts = []
    for i, L in enumerate(valid):
        j, q = check_jacobi(L), check_coderivation(L)
        ok = j.status == q.status == PASS
        parts.append(Report("valid_%d" % i, PASS if ok else FAIL,
                            None if ok else {"jacobi": j.witness, "coderivation": q.witness},
                            {"dim": L.space.dim, "jacobi": j.status, "coderivation": q.status}))
    for i, (L, j, q) in enumerate(corrupted):
        ok = j.status == q.status == FAIL
        parts.append(Report("corrupt_%d" % i, PASS if ok else FAIL,
                            None if ok else {"jacobi": j.witness, "coderivation": q.witness},
                            {"dim": L.space.dim, "jacobi": j.status, "coderivation": q.status}))
    return combine("C1 jacobi_vs_coderivation", parts, valid=len(valid),
                   corrupted=len(corrupted), seed=seed)


# ---------------------------------------------------------------------------
# 2. transfer

def transfer_report(name, L, cap=4):
    try:
        res = transfer(L, cap=cap)
    except ValueError as e:
        return Report(name, FAIL, {"error": str(e)})
    rep = verify_transfer(L, res, cap)
    q = check_coderivation(res.structure, cap)
    return combine(name, [rep, q], H_dims={str(k): v for k, v in
                                             sorted(res.structure.space.dims().items())})


def criterion2(fixtures=None):
    fixtures = fixtures if fixtures is not None else dgla_fixtures()
    parts = [transfer_report(n, L) for n, L in sorted(fixtures.items())]
    return combine("C2 transfer", parts, fixtures=len(parts))


# ---------------------------------------------------------------------------
# 3. superpotential splitting

def split_report(n1, n2, L1, L2, D=5):
    try:
        S = direct_sum(L1, L2)
        f = superpotential(transfer(S).structure, D=D)
        f1 = superpotential(transfer(L1).structure, D=D)
        f2 = superpotential(transfer(L2).structure, D=D)
        if set(L1.space.names) & set(L2.space.names):
            f1 = f1.rename({v: "1." + v for v in f1.vars})
            f2 = f2.rename({v: "2." + v for v in f2.vars})
        ok = verify_split(f, f1, f2)
    except ValueError as e:
        return Report("%s+%s" % (n1, n2), FAIL, {"error": str(e)})
    return Report("%s+%s" % (n1, n2), PASS if ok else FAIL,
                  None if ok else {"f": f.to_string(), "f1": f1.to_string(),
                                   "f2": f2.to_string()},
                  {"f": f.to_string(), "terms": len(f.terms)})


def criterion3(pairs=None, structures=None):
    structures = structures or corpus.load_structures()
    pairs = pairs or [tuple(p) for p in corpus.load_json("split_pairs.json")]
    parts = [split_report(a, b, structures[a], structures[b]) for a, b in pairs]
    return combine("C3 superpotential_split", parts, pairs=len(parts))


# ---------------------------------------------------------------------------
# 4-6. Milnor numbers

def brieskorn(exps, vars="xyzuvw"):
    vs = tuple(vars[:len(exps)])
    return FormalPowerSeries(vs, {tuple(a if j == i else 0 for j in range(len(exps))): 1
                                  for i, a in enumerate(exps)})


def brieskorn_grid():
    out = [(a, b) for a in range(2, 7) for b in range(2, 7)]
    out += [(a, b, c) for a in range(2, 5) for b in range(2, 5) for c in range(2, 5)]
    return out


def _grid_max_degree(exps):
    # m^k lies in J from k = sum(a_i - 2) + 1; the certificate needs k + deg f
    return sum(a - 2 for a in exps) + 1 + max(exps) + 1


def criterion4():
    parts = []
    for exps in brieskorn_grid():
        f = brieskorn(exps)
        name = "+".join("%s^%d" % (v, a) for v, a in zip(f.vars, exps))
        try:
            mu = milnor_number(f, _grid_max_degree(exps))[0]
        except Inconclusive as e:
            parts.append(Report(name, INCONCLUSIVE, {"reason": str(e)}))
            continue
        want = quasihomogeneous_mu([Fraction(1, a) for a in exps], 1)
        parts.append(Report(name, PASS if mu == want else FAIL,
                            None if mu == want else {"mu": mu, "formula": str(want)},
                            {"mu": mu}))
    return combine("C4 milnor_grid", parts, germs=len(parts))


MIXED_TS = [
    ("x^2*y-y^3", "x^3+y^4"),
    ("x^2*y-y^3", "x^3"),
    ("x^3+y^4", "x^2+y^3"),
    ("x^4+y^4+z^4", "x^2"),
    ("x^2+y^3+z^4", "x^3+y^3"),
    ("x^2*y+y^4", "x^2+y^2"),
    ("x^3+y^3", "t^3"),
    ("x^2*y-y^3", "x^2+y^2+z^2"),
    ("x^3+x*y^3", "t^2"),
    ("x^5+y^2", "x^2*y+y^4"),
]


def criterion5():
    grid = [e for e in brieskorn_grid() if len(e) == 2]
    parts = []
    for e1 in grid:
        for e2 in grid:
            md = _grid_max_degree(e1 + e2)
            parts.append(_safe("ts", thom_sebastiani_check, brieskorn(e1), brieskorn(e2), md))
    for t1, t2 in MIXED_TS:
        f1, f2 = parse_polynomial(t1), parse_polynomial(t2)
        r = _safe("ts", thom_sebastiani_check, f1, f2, 16)
        r.check = "%s [+] %s" % (t1, t2)
        parts.append(r)
    bad = next((r for r in parts if r.status != PASS), None)
    # the grid part is large: keep only the mixed pairs and any failure as parts
    keep = parts[len(grid) ** 2:]
    if bad is not None and bad not in keep:
        keep = [bad] + keep
    out = combine("C5 thom_sebastiani", parts, grid_pairs=len(grid) ** 2,
                  mixed_pairs=len(MIXED_TS))
    out.parts = keep
    return out


BEHREND_TARGETS = [("T^2", 1), ("x^2+y^2", 1), ("x^3+y^3", 4)]


def criterion6():
    parts = []
    for text, want in BEHREND_TARGETS:
        f = parse_polynomial(text)
        try:
            d = milnor_data(f)
            nu = behrend_value(f)
        except Inconclusive as e:
            parts.append(Report(text, INCONCLUSIVE, {"reason": str(e)}))
            continue
        ok = nu == want == sign(d.n) * (1 - d.chi)
        parts.append(Report(text, PASS if ok else FAIL, None if ok else {"nu": nu},
                            {"nu": nu, "chi": d.chi, "mu": d.mu}))
    return combine("C6 behrend", parts)


# ---------------------------------------------------------------------------
# 7-9. blow-up formula and Joyce-Song

def blowup_entries(criterion_only=True):
    out = []
    for b in corpus.load_json("blowups.json"):
        if criterion_only and not b["criterion"]:
            continue
        out.append((b["name"], FormalPowerSeries.from_json(b["f"]), b["center"], b["strata"]))
    return out


def criterion7():
    parts = []
    for name, f, center, strata in blowup_entries():
        r = _safe("blowup", blowup_formula_check, f, center, strata)
        r.check = name
        parts.append(r)
    return combine("C7 blowup", parts)


def criterion8():
    parts = []
    for name, p, f1, f2, bp in corpus.load_js_grid():
        r = _safe("formula1", check_formula1, p, f1, f2, bp)
        r.check = name
        parts.append(r)
    return combine("C8 joyce_song_1", parts, combos=len(parts))


def criterion9():
    parts = []
    for name, p, bp, s21, s12 in corpus.load_js_formula2():
        r = _safe("formula2", check_formula2, p, bp, s21, s12)
        r.check = name
        parts.append(r)
    return combine("C9 joyce_song_2", parts)


# ---------------------------------------------------------------------------
# 10-11. motivic

ACAMPO_TARGETS = {"node": 0, "cusp": -1}


def criterion10():
    res = corpus.load_resolutions()
    parts = []
    for name, want in ACAMPO_TARGETS.items():
        datum, germ = res[name]
        e = euler_specialize(motivic_milnor_fiber(datum))
        mu = milnor_number(germ)[0]
        ok = e == 1 - mu == want
        parts.append(Report(name, PASS if ok else FAIL, None if ok else {"e": e, "mu": mu},
                            {"euler": e, "one_minus_mu": 1 - mu}))
    return combine("C10 a_campo", parts)


def _disjoint(f1, f2):
    if set(f1.vars) & set(f2.vars):
        f2 = f2.rename({v: v + "'" for v in f2.vars})
    return f1, f2


def criterion11():
    res = corpus.load_resolutions()
    parts = []
    for a, b in corpus.load_json("motivic_ts_pairs.json"):
        (ra, fa), (rb, fb) = res[a], res[b]
        f1, f2 = _disjoint(fa, fb)
        d1, d2 = milnor_data(f1), milnor_data(f2)
        d12 = milnor_data(block_sum(f1, f2))
        S1, S2 = motivic_milnor_fiber(ra), motivic_milnor_fiber(rb)
        S12 = 1 - (1 - S1) * (1 - S2)
        m = motivic_ts_check(S1, S2, S12, chi=(d1.chi, d2.chi, d12.chi))
        ts = thom_sebastiani_check(fa, fb)
        agree = ts.details["one_minus_chi"] == m.parts[-1].details["one_minus_chi"]
        parts.append(combine("%s [+] %s" % (a, b), [m, ts, Report(
            "agrees_with_ts", PASS if agree else FAIL, None,
            {"one_minus_chi": ts.details["one_minus_chi"]})]))
    return combine("C11 motivic_ts_shadow", parts)


# ---------------------------------------------------------------------------

CRITERIA = [criterion1, criterion2, criterion3, criterion4, criterion5, criterion6,
            criterion7, criterion8, criterion9, criterion10, criterion11]


def run_suite(threads=1, criteria=None):
    fns = criteria or CRITERIA
    if threads <= 1:
        return [fn() for fn in fns]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda fn: fn(), fns))


def criterion12(render):
    """``render(threads)`` returns the suite output as text."""
    a, b = render(1), render(1)
    c = render(8)
    ok = a == b == c
    wit = None
    if not ok:
        other = b if a != b else c
        line = next(i for i, (x, y) in enumerate(zip(a.splitlines() + [""],
                                                      other.splitlines() + [""])) if x != y)
        wit = {"first_difference_line": line + 1}
    return Report("C12 determinism", PASS if ok else FAIL, wit,
                  {"bytes": len(a.encode()), "runs": 3})
