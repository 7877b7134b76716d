import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from cyclic_linf.corpus import build_structures, load_structure
from cyclic_linf.fixtures import (
    AFF1, DGA_MASSEY, DGA_S3, DGA_UV, SO3, acyclic_dgla, quartic_dgla, structure_from_potential,
    tensor_dgla,
)
from cyclic_linf.graded_core import GradedVectorSpace
from cyclic_linf.linf import (
    CyclicPairing, LInfinityStructure, MultilinearOperation, change_basis, check_coderivation,
    check_cyclic, check_jacobi, check_morphism, check_structure, coderivation_square,
    cohomology_dims, cohomology_split, decalage, identity_morphism, is_quasi_isomorphism,
    jacobi_residual, linear_morphism, undecalage,
)
from cyclic_linf.potential import FormalPowerSeries
from cyclic_linf.suite import _corrupt, _random_basis, _random_polynomial


@pytest.fixture(scope="module")
def structures():
    return build_structures()


def test_shipped_structures_pass_all_checks(structures):
    for name, L in structures.items():
        rep, parts = check_structure(L)
        assert rep.ok, (name, rep.witness)
        assert [p.check for p in parts][:2] == ["jacobi", "coderivation"]


def test_json_roundtrip(structures):
    for name, L in structures.items():
        L2 = LInfinityStructure.from_json(L.to_json())
        assert L2.to_json() == L.to_json()
        assert load_structure(name).to_json() == L.to_json()


def test_operation_is_graded_antisymmetric():
    V = GradedVectorSpace((("a", 0), ("b", 1), ("c", 1), ("e", 2)))
    op = MultilinearOperation.from_entries(V, 2, [(("b", "c"), "e", 1), (("a", "b"), "c", 3)])
    assert op("c", "b") == {"e": 1}            # two odd letters commute
    assert op("b", "a") == {"c": -3}           # even past odd: antisymmetric
    assert op("b", "b") == {}
    with pytest.raises(ValueError):
        MultilinearOperation.from_entries(V, 2, [(("a", "a"), "a", 1)])
    with pytest.raises(ValueError):
        MultilinearOperation.from_entries(V, 2, [(("b", "c"), "a", 1)])


def test_so3_bracket_is_the_lie_bracket():
    L = tensor_dgla(DGA_S3, SO3)
    assert L.mu(2, ["1_e1", "1_e2"]) == {"1_e3": 1}
    assert L.mu(2, ["1_e2", "1_e1"]) == {"1_e3": -1}
    assert L.mu(2, ["1_e1", "w_e2"]) == {"w_e3": 1}
    assert L.pairing("1_e1", "w_e1") == 1


def test_jacobi_detects_a_broken_bracket():
    # a non-Lie bracket on three even letters
    V = GradedVectorSpace((("x", 0), ("y", 0), ("z", 0)))
    br = MultilinearOperation.from_entries(V, 2, [(("x", "y"), "z", 1), (("y", "z"), "x", 1),
                                                  (("x", "z"), "x", 1)])
    L = LInfinityStructure(V, [br], 3)
    r = check_jacobi(L)
    assert r.status == "FAIL"
    assert r.witness["n"] == 3
    assert jacobi_residual(L, 3, tuple(r.witness["inputs"]))
    assert check_coderivation(L).status == "FAIL"


def test_d_squared_and_leibniz_failures_are_seen_in_both_pictures():
    V = GradedVectorSpace((("a", 0), ("b", 1), ("c", 2)))
    d = MultilinearOperation.from_entries(V, 1, [(("a",), "b", 1), (("b",), "c", 1)])
    L = LInfinityStructure(V, [d], 2)
    assert check_jacobi(L).witness == {"n": 1, "inputs": ["a"], "residual": {"c": "1/1"}}
    assert coderivation_square(L, ("a",)) == {("c",): 1}


def test_decalage_roundtrip(structures):
    for L in structures.values():
        back = undecalage(decalage(L), L.arity_cap, L.pairing)
        assert back.to_json() == L.to_json()


@given(st.integers(0, 10 ** 6))
def test_checks_are_invariant_under_basis_change(seed):
    rng = random.Random(seed)
    L = rng.choice([quartic_dgla(), quartic_dgla(c=2, cubic=1), tensor_dgla(DGA_UV, AFF1),
                    tensor_dgla(DGA_S3, SO3)])
    L2 = change_basis(L, _random_basis(rng, L.space))
    assert check_jacobi(L2).ok and check_coderivation(L2).ok
    if L.pairing is not None:
        assert check_cyclic(L2).ok
    assert cohomology_dims(L2) == cohomology_dims(L)


@given(st.integers(0, 10 ** 6))
def test_jacobi_and_coderivation_agree_on_random_corruptions(seed):
    rng = random.Random(seed)
    f = _random_polynomial(rng, ("x", "y"))
    L = change_basis(structure_from_potential(f), _random_basis(rng, structure_from_potential(f).space))
    assert check_jacobi(L).ok and check_coderivation(L).ok
    bad = _corrupt(rng, L)
    assert check_jacobi(bad).status == check_coderivation(bad).status


def test_change_basis_rejects_singular_matrix():
    L = quartic_dgla()
    new = {"x": {"x": 1}, "k": {"x": 2}, "xi": {"xi": 1}, "b": {"b": 1}}
    with pytest.raises(ValueError):
        change_basis(L, new)


def test_cyclic_check_catches_a_bad_pairing():
    L = quartic_dgla()
    bad = L.with_pairing(CyclicPairing(L.space, {("x", "xi"): 1, ("k", "b"): 2}))
    r = check_cyclic(bad)
    assert r.status == "FAIL" and r.witness["reason"] in ("rotation", "differential")
    wrong_degree = L.with_pairing(CyclicPairing(L.space, {("x", "k"): 1}))
    assert check_cyclic(wrong_degree).witness["reason"] == "support"


def _sympy_cohomology(L):
    # independent rank computation from the raw tables
    sp = L.space
    out = {}
    for i in sp.degrees():
        src = sp.component(i)
        dst = sp.component(i + 1)
        prev = sp.component(i - 1)
        D = sympy.Matrix(len(dst), len(src), lambda r, c: L.mu(1, [src[c]]).get(dst[r], 0))
        Dp = sympy.Matrix(len(src), len(prev), lambda r, c: L.mu(1, [prev[c]]).get(src[r], 0))
        out[i] = len(src) - (D.rank() if D.shape[0] and D.shape[1] else 0) \
            - (Dp.rank() if Dp.shape[0] and Dp.shape[1] else 0)
    return out


def test_cohomology_dims_against_sympy(structures):
    for L in structures.values():
        assert cohomology_dims(L) == _sympy_cohomology(L)
        split = cohomology_split(L, L.pairing)
        assert {i: len(v) for i, v in split.H.items() if v} == \
            {i: n for i, n in cohomology_dims(L).items() if n}


def test_known_cohomology():
    assert cohomology_dims(acyclic_dgla()) == {1: 0, 2: 0}
    assert cohomology_dims(quartic_dgla()) == {1: 1, 2: 1}
    massey = tensor_dgla(DGA_MASSEY, SO3)
    assert cohomology_dims(massey) == {0: 3, 1: 6, 2: 6, 3: 3}


def test_identity_and_linear_morphisms(structures):
    L = structures["so3_uv"]
    F = identity_morphism(L)
    assert check_morphism(F, L, L).ok
    assert is_quasi_isomorphism(F, L, L)
    # scaling the odd part breaks compatibility with the bracket
    G = linear_morphism(L.space, L.space, {a: {a: 2 if L.space.degree(a) == 1 else 1}
                                           for a in L.space.names})
    assert check_morphism(G, L, L).status == "FAIL"


def test_potential_structure_has_expected_operations():
    f = FormalPowerSeries(("x",), {(3,): Fraction(-1, 6), (4,): Fraction(1, 8)})
    L = structure_from_potential(f)
    assert sorted(L.ops) == [2, 3]
    assert check_structure(L)[0].ok
