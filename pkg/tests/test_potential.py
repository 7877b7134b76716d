import random
from fractions import Fraction
from itertools import product
from math import factorial

import pytest
import sympy
from hypothesis import given, strategies as st

from cyclic_linf.corpus import build_structures
from cyclic_linf.fixtures import quartic_dgla, structure_from_potential
from cyclic_linf.linf import change_basis
from cyclic_linf.potential import (
    FormalPowerSeries, block_sum, compare_normalisations, direct_sum, jacobian_ideal,
    parse_polynomial, superpotential, superpotential_v3, verify_split,
)
from cyclic_linf.suite import _random_basis, _random_polynomial
from cyclic_linf.transfer import transfer

VARS = ("x", "y", "z")


def series(max_deg=4, vars=VARS, cap=None):
    mono = st.tuples(*[st.integers(0, max_deg) for _ in vars])
    coeff = st.fractions(min_value=-3, max_value=3, max_denominator=4)
    return st.dictionaries(mono, coeff, max_size=5).map(
        lambda t: FormalPowerSeries(vars, t, cap))


def to_sympy(f):
    syms = sympy.symbols(f.vars) if f.vars else ()
    if len(f.vars) == 1:
        syms = (syms,) if not isinstance(syms, tuple) else syms
    expr = 0
    for m, c in f.terms.items():
        t = sympy.Rational(c.numerator, c.denominator)
        for s, e in zip(syms, m):
            t *= s ** e
        expr += t
    return sympy.expand(expr), syms


@given(series(), series(), series())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == FormalPowerSeries(VARS, {})
    assert a * FormalPowerSeries.constant(VARS, 1) == a


@given(series(cap=5), series(cap=5))
def test_truncated_product_matches_sympy(a, b):
    p = a * b
    want, syms = to_sympy(FormalPowerSeries(VARS, (FormalPowerSeries(VARS, a.terms)
                                                  * FormalPowerSeries(VARS, b.terms)).terms))
    poly = sympy.Poly(want, *syms) if want != 0 else None
    kept = {}
    if poly is not None:
        for m, c in poly.terms():
            if sum(m) <= 5:
                kept[tuple(m)] = Fraction(int(c.p), int(c.q))
    assert p.terms == kept
    assert p.cap == 5


@given(series(), st.sampled_from(VARS))
def test_derivative_matches_sympy(f, v):
    expr, syms = to_sympy(f)
    want = sympy.expand(sympy.diff(expr, syms[VARS.index(v)]))
    assert to_sympy(f.derivative(v))[0] == want


@given(series(), series(), st.sampled_from(VARS))
def test_leibniz(a, b, v):
    assert (a * b).derivative(v) == a.derivative(v) * b + a * b.derivative(v)


@given(series())
def test_json_and_text_roundtrip(f):
    assert FormalPowerSeries.from_json(f.to_json()) == f
    if f.terms:
        assert parse_polynomial(f.to_string(), VARS) == f


def test_json_schema():
    f = parse_polynomial("x^2*y - 1/3*y^4")
    obj = f.to_json()
    assert obj["vars"] == ["x", "y"]
    assert {"monomial": {"x": 2, "y": 1}, "coeff": "1/1"} in obj["terms"]
    with pytest.raises(ValueError):
        FormalPowerSeries.from_json({"terms": []})


def test_translate_and_restrict():
    f = parse_polynomial("x^2 + x*y")
    g = f.translate({"x": 1})
    assert g == parse_polynomial("1 + 2*x + x^2 + y + x*y", ("x", "y"))
    assert f.restrict(["y"]) == parse_polynomial("x^2")
    assert f.substitute({"x": parse_polynomial("x*y", ("x", "y"))}, ("x", "y")) == \
        parse_polynomial("x^2*y^2 + x*y^2", ("x", "y"))


def brute_force_potential(H, D):
    """sum over ordered tuples of kappa(mu_k(z_i1..z_ik), z_j) with sympy symbols."""
    frame = H.space.component(1)
    syms = sympy.symbols(frame)
    if not isinstance(syms, tuple):
        syms = (syms,)
    expr = 0
    for k in range(2, D):
        sgn = -1 if (k * (k + 1) // 2) % 2 else 1
        for idx in product(range(len(frame)), repeat=k):
            val = H.mu(k, [frame[i] for i in idx])
            for j in range(len(frame)):
                c = H.pairing.pair(val, {frame[j]: 1})
                if c:
                    t = sympy.Rational(sgn * c.numerator, c.denominator * factorial(k + 1))
                    for i in idx:
                        t *= syms[i]
                    expr += t * syms[j]
    return sympy.expand(expr)


def test_superpotential_against_brute_force():
    structures = build_structures()
    for name in ("cubic", "quartic", "cubic_quartic", "massey_so3", "pot_D4", "pot_E6"):
        H = transfer(structures[name]).structure
        f = superpotential(H, D=5)
        assert to_sympy(f)[0] == brute_force_potential(H, 5), name


def test_frozen_potentials():
    s = build_structures()
    assert superpotential(transfer(s["cubic"]).structure).to_string() == "-1/6*x^3"
    assert superpotential(transfer(s["quartic"]).structure).to_string() == "1/8*x^4"
    assert superpotential(transfer(s["cubic_quartic"]).structure).to_string() == \
        "-1/6*x^3 + 1/8*x^4"
    assert superpotential(transfer(s["so3_sphere"]).structure).is_zero()


@given(st.integers(0, 10 ** 6))
def test_potential_structure_roundtrip(seed):
    rng = random.Random(seed)
    f = _random_polynomial(rng, ("x", "y", "z")[:rng.randint(1, 3)], degrees=(3, 4))
    L = structure_from_potential(f)
    g = superpotential(L, D=5)
    g.cap = None
    assert g == f


def test_potential_is_invariant_under_change_of_h2_basis():
    f = parse_polynomial("x^2*y - y^3 + x^4")
    L = structure_from_potential(f)
    rng = random.Random(3)
    new = _random_basis(rng, L.space)
    # keep degree one fixed so the frame is unchanged
    for v in L.space.component(1):
        new[v] = {v: 1}
    g = superpotential(change_basis(L, new), D=5)
    g.cap = None
    assert g == f


def test_normalisation_ratio():
    H = transfer(quartic_dgla(cubic=1)).structure
    r = compare_normalisations(H)
    assert r[3] == Fraction(-1, 3)
    assert r[4] == Fraction(1, 4)
    assert superpotential_v3(H).coeff((3,)) == Fraction(1, 2)


def test_default_degree_and_cap():
    H = transfer(quartic_dgla()).structure
    assert superpotential(H).cap == 5
    with pytest.raises(ValueError):
        superpotential(H, D=6)
    with pytest.raises(ValueError):
        superpotential(quartic_dgla())          # mu_1 present


def test_direct_sum_split_and_verify():
    s = build_structures()
    L1, L2 = s["cubic"], s["pot_D4"]
    S = direct_sum(L1, L2)
    f = superpotential(transfer(S).structure, D=5)
    f1 = superpotential(transfer(L1).structure, D=5)
    f2 = superpotential(transfer(L2).structure, D=5)
    # both summands use x, so the sum prefixes every name
    f1 = f1.rename({v: "1." + v for v in f1.vars})
    f2 = f2.rename({v: "2." + v for v in f2.vars})
    assert verify_split(f, f1, f2)
    # a cross term breaks the split
    g = f + FormalPowerSeries(f.vars, {(1, 1, 1): 1}, f.cap)
    assert not verify_split(g, f1, f2)
    # names that clash get prefixed
    T = direct_sum(L1, L1)
    assert T.space.names == ("1.x", "1.dx", "2.x", "2.dx")


def test_block_sum_and_jacobian():
    f = block_sum(parse_polynomial("x^3"), parse_polynomial("y^2"))
    assert f == parse_polynomial("x^3 + y^2")
    assert jacobian_ideal(f) == [parse_polynomial("3*x^2", ("x", "y")),
                                 parse_polynomial("2*y", ("x", "y"))]
    with pytest.raises(ValueError):
        block_sum(parse_polynomial("x^3"), parse_polynomial("x^2"))
