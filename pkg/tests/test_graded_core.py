from fractions import Fraction
from itertools import combinations, permutations
from math import comb

import pytest
from hypothesis import given, strategies as st

from cyclic_linf.graded_core import (
    GradedVectorSpace, compose, direct_sum_space, format_scalar, inverse, koszul_sign,
    parity, parse_scalar, set_partitions, shift, shuffles, sort_sign, vec_add, vec_iadd,
    vec_scale, wedge_sign, wedge_sort,
)


def koszul_by_inversions(sigma, degrees):
    # each inverted pair of odd letters contributes a sign
    s = 1
    n = len(sigma)
    for i, j in combinations(range(n), 2):
        if sigma[i] > sigma[j] and degrees[sigma[i] - 1] % 2 and degrees[sigma[j] - 1] % 2:
            s = -s
    return s


def parity_by_inversions(sigma):
    return sum(1 for i, j in combinations(range(len(sigma)), 2) if sigma[i] > sigma[j]) % 2


def perms_with_degrees(max_n=6):
    return st.integers(1, max_n).flatmap(lambda n: st.tuples(
        st.permutations(list(range(1, n + 1))).map(tuple),
        st.lists(st.integers(-3, 3), min_size=n, max_size=n)))


@pytest.mark.parametrize("n", range(1, 7))
def test_koszul_all_permutations_against_inversion_count(n):
    degree_patterns = [[1] * n, [0] * n, [(i % 2) for i in range(n)], [2, 1, 1, 3, 0, 5][:n]]
    for degs in degree_patterns:
        for sigma in permutations(range(1, n + 1)):
            assert koszul_sign(sigma, degs) == koszul_by_inversions(sigma, degs)
            assert parity(sigma) == parity_by_inversions(sigma)


def test_koszul_transposition_of_two_odd_letters():
    assert koszul_sign((2, 1), (1, 1)) == -1
    assert koszul_sign((2, 1), (1, 2)) == 1
    # graded antisymmetric sign of the same swap
    assert wedge_sign((2, 1), (1, 1)) == 1
    assert wedge_sign((2, 1), (0, 2)) == -1


@given(perms_with_degrees(), st.data())
def test_koszul_cocycle(sd, data):
    sigma, degs = sd
    tau = data.draw(st.permutations(list(range(1, len(sigma) + 1))).map(tuple))
    # permuting by sigma then by tau: a_{sigma(tau(i))}
    permuted = [degs[s - 1] for s in sigma]
    lhs = koszul_sign(compose(sigma, tau), degs)
    assert lhs == koszul_sign(sigma, degs) * koszul_sign(tau, permuted)


@given(perms_with_degrees())
def test_inverse_has_same_sign(sd):
    sigma, degs = sd
    permuted = [degs[s - 1] for s in sigma]
    assert koszul_sign(inverse(sigma), permuted) == koszul_sign(sigma, degs)
    assert compose(sigma, inverse(sigma)) == tuple(range(1, len(sigma) + 1))


@given(perms_with_degrees())
def test_wedge_sign_is_parity_times_koszul(sd):
    sigma, degs = sd
    w = wedge_sign(sigma, degs)
    assert w == (-1) ** parity(sigma) * koszul_sign(sigma, degs)
    # for all-even letters it is just the parity
    assert wedge_sign(sigma, [0] * len(sigma)) == (-1) ** parity(sigma)


@pytest.mark.parametrize("n", range(0, 7))
def test_shuffles_against_filtered_symmetric_group(n):
    for l in range(n + 1):
        want = sorted(s for s in permutations(range(1, n + 1))
                      if list(s[:l]) == sorted(s[:l]) and list(s[l:]) == sorted(s[l:]))
        got = shuffles(l, n)
        assert sorted(got) == want
        assert len(got) == comb(n, l)


def test_shuffles_rejects_bad_split():
    with pytest.raises(ValueError):
        shuffles(3, 2)


BELL = [1, 1, 2, 5, 15, 52, 203]


@pytest.mark.parametrize("n", range(7))
def test_set_partitions_count_and_shape(n):
    parts = list(set_partitions(n))
    assert len(parts) == BELL[n]
    assert len(set(parts)) == len(parts)
    for p in parts:
        assert sorted(i for b in p for i in b) == list(range(n))
        assert [b[0] for b in p] == sorted(b[0] for b in p)


@given(st.lists(st.integers(0, 4), max_size=6), st.data())
def test_sort_sign_matches_koszul(keys, data):
    degs = data.draw(st.lists(st.integers(0, 3), min_size=len(keys), max_size=len(keys)))
    order, s = sort_sign(keys, degs)
    assert [keys[i] for i in order] == sorted(keys)
    # x_1...x_n = s * x_order: the word x_order is the permutation (order+1)
    sigma = tuple(i + 1 for i in order)
    assert s == koszul_sign(sigma, degs)


@given(st.lists(st.integers(0, 3), max_size=5), st.data())
def test_wedge_sort_vanishes_on_repeated_even_letters(keys, data):
    degs_by_key = data.draw(st.lists(st.integers(0, 3), min_size=4, max_size=4))
    degs = [degs_by_key[k] for k in keys]
    order, s = wedge_sort(keys, degs)
    repeated_even = any(keys.count(k) > 1 and not degs_by_key[k] % 2 for k in set(keys))
    if repeated_even:
        assert s == 0
    else:
        assert s == wedge_sign(tuple(i + 1 for i in order), degs)


def test_scalars_roundtrip():
    for q in (Fraction(0), Fraction(-3, 7), Fraction(5)):
        assert parse_scalar(format_scalar(q)) == q
    assert format_scalar(2) == "2/1"
    assert parse_scalar(" 4/6 ") == Fraction(2, 3)
    with pytest.raises(ValueError):
        parse_scalar(True)
    with pytest.raises(ValueError):
        parse_scalar(1.5)


def test_sparse_vectors_drop_zeros():
    u = {"a": Fraction(1), "b": Fraction(2)}
    assert vec_add(u, {"a": 1}, -1) == {"b": 2}
    assert u == {"a": 1, "b": 2}
    vec_iadd(u, {"b": 2}, -1)
    assert u == {"a": 1}
    assert vec_scale(u, 0) == {}


def test_graded_space():
    V = GradedVectorSpace((("x", 1), ("y", 2), ("z", 1)))
    assert V.dim == 3 and V.index("y") == 1 and V.degree("z") == 1
    assert V.component(1) == ("x", "z")
    assert V.dims() == {1: 2, 2: 1}
    assert V.vector_degree({"x": 1, "z": 2}) == 1
    assert V.vector_degree({}) is None
    with pytest.raises(ValueError):
        V.vector_degree({"x": 1, "y": 1})
    assert GradedVectorSpace.from_json(V.to_json()) == V
    assert shift(V, 1).degrees() == [0, 1]
    W = direct_sum_space(V, GradedVectorSpace((("w", 0),)))
    assert W.names == ("x", "y", "z", "w")
    with pytest.raises(ValueError):
        GradedVectorSpace((("x", 1), ("x", 2)))
