from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given, strategies as st

from cyclic_linf.corpus import BLOWUPS, load_germs
from cyclic_linf.milnor import (
    Inconclusive, NonIsolated, behrend_value, blowup_formula_check, chart_pullback, chi_germ_at,
    chi_of_linf, milnor_data, milnor_number, quasihomogeneous_mu, thom_sebastiani_check,
)
from cyclic_linf.fixtures import structure_from_potential
from cyclic_linf.potential import FormalPowerSeries, block_sum, parse_polynomial as P
from cyclic_linf.report import PASS
from cyclic_linf.suite import brieskorn


def global_milnor(text):
    """dim C[x]/J by a sympy Groebner basis; equals the local number when 0 is
    the only critical point (true for quasi-homogeneous isolated germs)."""
    expr = sympy.sympify(text.replace("^", "**"))
    syms = sorted(expr.free_symbols, key=str)
    G = sympy.groebner([sympy.diff(expr, s) for s in syms], *syms, order="grevlex")
    leads = [sympy.Poly(g, *syms).monoms(order="grevlex")[0] for g in G.exprs]
    bound = max(max(m) for m in leads) + 1
    count = 0
    for m in product(range(bound), repeat=len(syms)):
        if not any(all(a >= b for a, b in zip(m, l)) for l in leads):
            count += 1
    return count


QUASI_HOMOGENEOUS = {
    "x^2+y^2": 1, "x^3+y^3": 4, "x^2*y-y^3": 4, "x^3+y^4": 6, "x^3+x*y^3": 7,
    "x^3+y^5": 8, "x^2*y+y^4": 5, "x^2+y^2+z^2": 1, "x^2*y+y^3+z^2": 4,
    "x^3+y^3+z^3": 8, "x*y*z+x^3+y^3+z^3": 8,
}


@pytest.mark.parametrize("text,mu", sorted(QUASI_HOMOGENEOUS.items()))
def test_against_groebner(text, mu):
    assert global_milnor(text) == mu
    assert milnor_number(P(text))[0] == mu


def test_local_not_global():
    # x^2 + y^3 + y^4 has a second critical point at y = -3/4
    assert global_milnor("x^2+y^3+y^4") == 3
    assert milnor_number(P("x^2+y^3+y^4"))[0] == 2


@given(st.lists(st.integers(2, 6), min_size=1, max_size=3))
def test_brieskorn_formula(exps):
    f = brieskorn(exps)
    deg = sum(a - 2 for a in exps) + max(exps) + 2
    mu, k, basis = milnor_number(f, deg)
    want = quasihomogeneous_mu([Fraction(1, a) for a in exps], 1)
    assert mu == want == len(basis)
    # the basis of the local algebra is the box of exponents below a - 1
    assert sorted(basis) == sorted(product(*[range(a - 1) for a in exps]))


def test_certificate_and_bounds():
    mu, k, _ = milnor_number(P("x^3+y^4"))
    assert (mu, k) == (6, 4)
    with pytest.raises(Inconclusive):
        milnor_number(P("x^6+y^6"), 12)
    assert milnor_number(P("x^6+y^6"), 15)[0] == 25
    with pytest.raises(Inconclusive):
        milnor_number(P("x^3"), 3)


def test_degenerate_germs():
    assert milnor_number(P("x+y^2"))[0] == 0
    assert milnor_number(FormalPowerSeries((), {}))[0] == 1
    with pytest.raises(NonIsolated):
        milnor_number(P("x^2", ("x", "y")))
    with pytest.raises(NonIsolated):
        milnor_number(FormalPowerSeries(("x",), {}))
    with pytest.raises(Inconclusive):
        milnor_number(P("x^2*y"))
    with pytest.raises(ValueError):
        milnor_number(P("1+x^2"))


def test_chi_and_behrend_examples():
    g = load_germs()
    assert milnor_data(g["x3"]).to_json()["chi"] == 3
    assert behrend_value(g["x3"]) == 2
    assert behrend_value(g["T2"]) == 1
    assert behrend_value(g["node"]) == 1
    d = milnor_data(g["x3+y3"])
    assert (d.mu, d.chi, d.behrend) == (4, -3, 4)
    assert milnor_data(g["D4"]).behrend == 4
    assert milnor_data(g["E6"]).behrend == 6


@given(st.lists(st.integers(2, 5), min_size=1, max_size=2), st.integers(0, 2))
def test_stabilisation(exps, extra):
    """Adding squares keeps mu and multiplies 1 - chi by -1 per square."""
    f = brieskorn(exps)
    deg = 16
    base = milnor_data(f, deg)
    g = f
    for i in range(extra):
        g = block_sum(g, P("w%d^2" % i))
    d = milnor_data(g, deg)
    assert d.mu == base.mu
    assert 1 - d.chi == (-1) ** extra * (1 - base.chi)
    assert d.behrend == base.behrend


@given(st.lists(st.integers(2, 4), min_size=1, max_size=2),
       st.lists(st.integers(2, 4), min_size=1, max_size=2))
def test_thom_sebastiani_brieskorn(a, b):
    r = thom_sebastiani_check(brieskorn(a), brieskorn(b), 16)
    assert r.status == PASS


def test_thom_sebastiani_renames_clash():
    r = thom_sebastiani_check(P("x^2*y-y^3"), P("x^3+y^4"), 16)
    assert r.status == PASS
    assert r.details["mu"] == [4, 6, 24]


def test_chi_of_linf_matches_potential():
    for text in ["x^3", "x^2*y-y^3", "x^3+y^4"]:
        f = P(text)
        L = structure_from_potential(f)
        assert chi_of_linf(L) == milnor_data(f).chi


def test_chart_pullback():
    f = P("x^2+y^2")
    assert chart_pullback(f, ["x", "y"], "x") == P("x^2+x^2*y^2")
    assert chart_pullback(f, ["y"], "y") == f
    with pytest.raises(ValueError):
        chart_pullback(f, ["y"], "x")


def test_chi_germ_at():
    assert chi_germ_at(P("x^2+y^2"), {"x": 1}) == 1
    assert chi_germ_at(P("x*y")) == 0
    assert chi_germ_at(P("x^2*y")) == 0
    assert chi_germ_at(P("x^2", ("x", "y"))) == 2
    assert chi_germ_at(P("x^3+y^3")) == -3
    assert chi_germ_at(FormalPowerSeries(("x",), {})) == 0


@pytest.mark.parametrize("entry", BLOWUPS, ids=[b["name"] for b in BLOWUPS])
def test_blowup_corpus(entry):
    r = blowup_formula_check(P(entry["f"]), entry["center"], entry["strata"])
    assert r.status == PASS, r.witness


def test_blowup_values():
    D4 = next(b for b in BLOWUPS if b["name"] == "D4_Z_origin")
    r = blowup_formula_check(P(D4["f"]), D4["center"], D4["strata"])
    assert r.details["lhs"] == r.details["rhs"] == -3


def test_blowup_rejects_bad_input():
    f = P("x^2+y^2")
    with pytest.raises(ValueError):
        blowup_formula_check(f, ["x", "y"], [{"chi": 1, "value": 0}])
    with pytest.raises(ValueError):
        blowup_formula_check(f, [], [])
    with pytest.raises(ValueError):
        blowup_formula_check(f, ["y"], [{"chi": 1, "chart": "y", "point": {"x": 1}}])
    # a wrong stratum value is reported, not raised
    r = blowup_formula_check(f, ["y"], [{"chi": 1, "value": 5}])
    assert r.status != PASS
