import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_force_contains, det, fm_zero_in_relative_interior, matmul, rational_solution
from strata.exact_linalg import (
    Lattice,
    hermite_normal_form,
    integer_rank,
    lattice_contains,
    relative_interior_witness,
    zero_in_relative_interior,
)
from strata.root_systems import build_root_system


def _is_hnf(H):
    last = -1
    for row in H:
        assert any(row), "zero rows are dropped"
        piv = next(j for j, x in enumerate(row) if x)
        assert piv > last
        assert row[piv] > 0
        last = piv
    for i, row in enumerate(H):
        piv = next(j for j, x in enumerate(row) if x)
        for k in range(i):
            assert 0 <= H[k][piv] < row[piv]


def test_hnf_identity():
    I = [[int(i == j) for j in range(3)] for i in range(3)]
    H, U = hermite_normal_form(I)
    assert H == I
    assert U == I


def test_hnf_already_reduced():
    H, _ = hermite_normal_form([[2, 0], [0, 2]])
    assert H == [[2, 0], [0, 2]]


def test_hnf_empty():
    H, U = hermite_normal_form([])
    assert H == [] and U == []


def test_hnf_random_3x4():
    rng = random.Random(7)
    for _ in range(200):
        M = [[rng.randint(-5, 5) for _ in range(4)] for _ in range(3)]
        H, U = hermite_normal_form(M)
        nz = [r for r in H if any(r)]
        _is_hnf(nz)
        assert abs(det(U)) == 1
        assert matmul(U, M) == H
        # row lattices coincide: every row of one lies in the span of the other
        for r in M:
            assert lattice_contains(nz, r)
        for r in nz:
            assert lattice_contains(M, r)


def test_lattice_contains_examples():
    assert not lattice_contains([[2, 0], [0, 2]], [1, 1])
    assert lattice_contains([[1, 0], [0, 1]], [7, -3])
    assert lattice_contains([], [0, 0, 0])


def test_lattice_dimension_mismatch():
    with pytest.raises(ValueError):
        lattice_contains([[1, 0]], [1, 0, 0])
    with pytest.raises(ValueError):
        Lattice([[1, 2]]).__contains__((1,))


def test_lattice_contains_vs_brute_force():
    # independent bases so the rational solution is unique and a bounded search is exhaustive
    rng = random.Random(11)
    done = 0
    while done < 500:
        d = rng.randint(1, 4)
        k = rng.randint(1, d)
        basis = [[rng.randint(-3, 3) for _ in range(d)] for _ in range(k)]
        if integer_rank(basis) < k:
            continue
        if rng.random() < 0.5:
            coef = [rng.randint(-4, 4) for _ in range(k)]
            v = [sum(c * b[j] for c, b in zip(coef, basis)) for j in range(d)]
        else:
            v = [rng.randint(-6, 6) for _ in range(d)]
        sol = rational_solution(basis, v)
        if sol is not None and any(abs(x) > 20 for x in sol):
            continue
        assert lattice_contains(basis, v) == brute_force_contains(basis, v, 20), (basis, v)
        done += 1


def test_integer_rank_examples():
    assert integer_rank([[0, 0], [0, 0]]) == 0
    assert integer_rank([]) == 0
    for n in range(1, 6):
        assert integer_rank([[int(i == j) for j in range(n)] for i in range(n)]) == n
    assert integer_rank([list(r) for r in build_root_system("G2").roots]) == 2
    assert integer_rank([list(r) for r in build_root_system("F4").roots]) == 4


def test_relative_interior_examples():
    assert zero_in_relative_interior([(1,), (-1,)])
    assert not zero_in_relative_interior([(1, 0), (0, 1)])
    assert zero_in_relative_interior([(0, 0)])
    # a segment through 0 inside the plane: relative interior, not the ambient one
    assert zero_in_relative_interior([(1, 1), (-1, -1)])
    # 0 on the boundary of a triangle
    assert not zero_in_relative_interior([(1, 0), (-1, 0), (0, 1)])
    assert zero_in_relative_interior([(1, 0), (-1, 0), (0, 1), (0, -1)])


def test_relative_interior_errors():
    with pytest.raises(ValueError):
        zero_in_relative_interior([])
    with pytest.raises(ValueError):
        zero_in_relative_interior([(1, 0), (1,)])


def test_witness_is_strictly_positive_convex_combination():
    pts = [(2, 1), (-1, 0), (0, -3), (-1, 2)]
    lam = relative_interior_witness(pts)
    assert lam is not None
    assert all(x > 0 for x in lam) and sum(lam) == 1
    assert all(sum(l * p[j] for l, p in zip(lam, pts)) == 0 for j in range(2))


def test_symmetric_sets_vs_fm_oracle():
    rng = random.Random(3)
    for _ in range(200):
        d = rng.randint(1, 3)
        half = [tuple(rng.randint(-3, 3) for _ in range(d)) for _ in range(rng.randint(1, 4))]
        S = half + [tuple(-x for x in p) for p in half]
        assert zero_in_relative_interior(S)
        assert fm_zero_in_relative_interior(S)


def test_random_sets_vs_fm_oracle():
    rng = random.Random(5)
    for _ in range(300):
        d = rng.randint(1, 3)
        S = [tuple(rng.randint(-2, 2) for _ in range(d)) for _ in range(rng.randint(1, 5))]
        assert zero_in_relative_interior(S) == fm_zero_in_relative_interior(S), S


small_vec = st.lists(st.integers(-4, 4), min_size=2, max_size=2)
point_sets = st.integers(1, 3).flatmap(
    lambda d: st.lists(st.lists(st.integers(-3, 3), min_size=d, max_size=d).map(tuple), min_size=1, max_size=5)
)


@settings(max_examples=150, deadline=None)
@given(point_sets)
def test_negation_and_permutation_invariance(S):
    base = zero_in_relative_interior(S)
    assert zero_in_relative_interior([tuple(-x for x in p) for p in S]) == base
    d = len(S[0])
    for perm in itertools.permutations(range(d)):
        assert zero_in_relative_interior([tuple(p[i] for i in perm) for p in S]) == base


@settings(max_examples=150, deadline=None)
@given(point_sets)
def test_adding_zero_never_breaks_a_witness(S):
    if zero_in_relative_interior(S):
        assert zero_in_relative_interior(S + [(0,) * len(S[0])])


@settings(max_examples=100, deadline=None)
@given(st.lists(small_vec, min_size=1, max_size=3), small_vec, small_vec)
def test_lattice_closed_under_addition(basis, v, w):
    if lattice_contains(basis, v) and lattice_contains(basis, w):
        assert lattice_contains(basis, [a + b for a, b in zip(v, w)])


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=0, max_size=4))
def test_hnf_rows_mutually_contained(M):
    H, U = hermite_normal_form(M)
    for r in M:
        assert lattice_contains(H, r)
    for r in H:
        assert lattice_contains(M, r)
    if U:
        assert abs(det(U)) == 1
