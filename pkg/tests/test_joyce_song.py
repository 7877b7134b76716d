import pytest
from hypothesis import given, strategies as st

from cyclic_linf.corpus import load_js_formula2, load_js_grid
from cyclic_linf.joyce_song import (
    BlockPotential, ExtProfile, behrend_of_object, check_formula1, check_formula2, euler_form,
    serre_ok, sign_exponent_identity, stable_pair_behrend, stable_pair_chain, stable_pair_sign,
)
from cyclic_linf.potential import FormalPowerSeries, parse_polynomial as P
from cyclic_linf.report import FAIL, PASS

EMPTY = FormalPowerSeries((), {})
dims = st.tuples(*[st.integers(0, 3)] * 4)


def test_euler_form_examples():
    assert euler_form(ExtProfile.direct((1, 0, 0, 1), (1, 0, 0, 1))) == 0
    assert euler_form(ExtProfile.direct((1, 0, 0, 1), (1, 0, 0, 1), (0, 1, 1, 0))) == 0
    assert euler_form(ExtProfile.direct((1, 0, 0, 1), (1, 0, 0, 1), (0, 3, 0, 0))) == -3
    assert euler_form(ExtProfile.direct((1, 0, 0, 1), (1, 0, 0, 1), (1, 0, 2, 0))) == 3


def test_serre_validation():
    good = ExtProfile.direct((1, 1, 1, 1), (1, 2, 2, 1), (0, 1, 2, 0))
    assert good.validate() is good
    assert serre_ok((1, 2, 2, 1)) and not serre_ok((1, 2, 1, 1))
    bad = ExtProfile({"11": (1, 1, 0, 1), "22": (1, 0, 0, 1)})
    with pytest.raises(ValueError, match="Serre"):
        bad.validate()
    with pytest.raises(ValueError):
        ExtProfile({"11": (1, 0, 1)})
    with pytest.raises(ValueError):
        ExtProfile({"11": (1, -1, -1, 1)})


def test_profile_json_roundtrip():
    p = ExtProfile.direct((1, 1, 1, 1), (1, 0, 0, 1), (0, 2, 1, 0))
    assert ExtProfile.from_json(p.to_json()) == p
    assert p.total() == (2, 4, 4, 2)
    with pytest.raises(ValueError):
        ExtProfile.from_json({})


def test_behrend_of_object():
    assert behrend_of_object((1, 1, 1, 1), P("x^3")) == -2
    # a spherical object has an empty Milnor fibre
    assert behrend_of_object((1, 0, 0, 1), EMPTY) == -1
    # a line of moduli with zero potential: the fibre over t != 0 is empty
    assert behrend_of_object((1, 1, 1, 1), FormalPowerSeries(("a",), {})) == 1
    assert behrend_of_object((1, 2, 2, 1), P("a^2+b^2")) == -1
    with pytest.raises(ValueError):
        behrend_of_object((1, 2, 2, 1), P("a^3"))


@given(dims, dims, dims)
def test_sign_exponent_identity(a, b, m):
    p = ExtProfile.direct(a, b, m)
    assert sign_exponent_identity(p)


@pytest.mark.parametrize("entry", load_js_grid(), ids=lambda e: e[0] if isinstance(e, tuple) else "")
def test_formula1_grid(entry):
    name, p, f1, f2, bp = entry
    r = check_formula1(p, f1, f2, bp)
    assert r.status == PASS, (name, r.witness)


def test_formula1_values():
    grid = {e[0]: e for e in load_js_grid()}
    _, p, f1, f2, bp = grid["x3+x30000"]
    r = check_formula1(p, f1, f2, bp)
    assert (r.details["nu1"], r.details["nu2"], r.details["lhs"]) == (-2, -2, 4)
    _, p, f1, f2, bp = grid["spherical+spherical0201"]
    r = check_formula1(p, f1, f2, bp)
    assert (r.details["euler_form"], r.details["lhs"], r.details["rhs"]) == (-3, -1, -1)


def test_formula1_detects_broken_input():
    p = ExtProfile({"11": (1, 1, 1, 1), "22": (1, 0, 0, 1), "12": (0, 1, 0, 0)})
    r = check_formula1(p, P("a^3"), EMPTY)
    assert r.status == FAIL and r.witness["reason"] == "serre"
    # a mixed potential that does not restrict to f1 + f2
    p = ExtProfile.direct((1, 1, 1, 1), (1, 0, 0, 1))
    wrong = BlockPotential.assemble(P("a^2"), EMPTY)
    r = check_formula1(p, P("a^3"), EMPTY, wrong)
    assert r.status == FAIL


def test_block_potential():
    bp = BlockPotential.assemble(P("a^3"), P("c^2"), P("z*w+a*z*w", ("a", "c", "z", "w")),
                                 ["z"], ["w"])
    assert bp.vars_of("12") == ("z",)
    assert bp.diagonal() == P("a^3+c^2")
    assert BlockPotential.from_json(bp.to_json()) == bp
    with pytest.raises(ValueError):
        BlockPotential(P("a+b"), {"a": "11"})


@pytest.mark.parametrize("entry", load_js_formula2(), ids=lambda e: e[0] if isinstance(e, tuple) else "")
def test_formula2_fixtures(entry):
    name, p, bp, s21, s12 = entry
    r = check_formula2(p, bp, s21, s12)
    assert r.status == PASS, (name, r.witness)


def test_formula2_values():
    fx = {e[0]: e for e in load_js_formula2()}
    _, p, bp, s21, s12 = fx["rank_1_0"]
    main = next(q for q in check_formula2(p, bp, s21, s12).parts if q.check == "formula2_chi")
    # chi(x^3 + y^2) = 1 - 2 = -1, and d21 - d12 = 1
    assert main.details["lhs"] == main.details["rhs"] == -1


def test_formula2_rejects_bad_strata():
    _, p, bp, s21, s12 = load_js_formula2()[1]
    with pytest.raises(ValueError):
        check_formula2(p, bp, [], s12)
    with pytest.raises(ValueError):
        check_formula2(p, bp, [{"chi": 1, "point": {"z": 1}}], s12)


def test_stable_pairs():
    assert stable_pair_sign(3) == -1
    assert stable_pair_behrend(1, 2) == -2
    assert stable_pair_behrend(0, 1) == 1


@given(st.integers(-5, 5), st.integers(-5, 5))
def test_stable_pair_chain(chiF, nuF):
    c = stable_pair_chain(chiF, nuF)
    # the argument as written reproduces the stated sign rule
    assert c["as_written"] == c["stated"] == stable_pair_behrend(chiF, nuF)
    # the honest recomputation (nu(O_Y) = -1) differs by a global sign
    assert c["chain"] == -c["stated"]
    assert c["agree"] == (nuF == 0)


def test_stable_pair_chain_from_cohomology():
    c = stable_pair_chain(3, 4, 3, 0)
    assert c["euler_form"] == 3
    with pytest.raises(ValueError):
        stable_pair_chain(3, 4, 1, 0)
