import itertools
from fractions import Fraction

import sympy
from hypothesis import given, settings, strategies as st

from brandtlpa.coeff import RingSpec
from brandtlpa.linalg import nullspace, rank, solve, solve_integer

Q = RingSpec.Q()

small = st.integers(-4, 4)


def matrices(rows=4, cols=4):
    return st.integers(1, rows).flatmap(
        lambda m: st.integers(1, cols).flatmap(
            lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m)))


def sparse(M):
    return [{j: v for j, v in enumerate(r) if v} for r in M]


@given(matrices())
def test_rank_matches_sympy_over_Q(M):
    assert rank(sparse(M), Q) == sympy.Matrix(M).rank()


@settings(max_examples=60)
@given(matrices(3, 3), st.sampled_from([2, 3, 5]))
def test_rank_mod_p_by_kernel_count(M, p):
    # |ker M| = p^(n - rank) over GF(p), counted by brute force
    n = len(M[0])
    kernel = sum(all(sum(v * x for v, x in zip(r, xs)) % p == 0 for r in M)
                 for xs in itertools.product(range(p), repeat=n))
    assert kernel == p ** (n - rank(sparse(M), RingSpec.GF(p)))


@given(matrices(), st.lists(small, min_size=4, max_size=4))
def test_solve_over_Q(M, b):
    b = b[:len(M)]
    sol = solve(sparse(M), b, Q)
    A = sympy.Matrix(M)
    consistent = A.rank() == A.row_join(sympy.Matrix(b)).rank()
    assert (sol is not None) == consistent
    if sol is not None:
        for r, bi in zip(M, b):
            assert sum(Fraction(v) * sol.get(j, 0) for j, v in enumerate(r)) == bi


@settings(max_examples=60)
@given(matrices(3, 3), st.lists(small, min_size=3, max_size=3), st.sampled_from([4, 6, 8, 9]))
def test_solve_mod_n_against_brute_force(M, b, n):
    b = b[:len(M)]
    k = len(M[0])
    brute = any(all(sum(v * x for v, x in zip(r, xs)) % n == bi % n for r, bi in zip(M, b))
                for xs in itertools.product(range(n), repeat=k))
    x = solve_integer(M, b, n)
    assert (x is not None) == brute
    if x is not None:
        assert all(sum(v * t for v, t in zip(r, x)) % n == bi % n for r, bi in zip(M, b))


@given(matrices(3, 3), st.lists(small, min_size=3, max_size=3))
def test_solve_over_Z(M, b):
    b = b[:len(M)]
    x = solve_integer(M, b)
    if x is not None:
        assert all(sum(v * t for v, t in zip(r, x)) == bi for r, bi in zip(M, b))
    # Z-solvable implies Q-solvable
    if x is not None:
        assert solve(sparse(M), b, Q) is not None


def test_integer_obstruction():
    # 2x = 1 has no integer solution, 2x = 2 does
    assert solve_integer([[2]], [1]) is None
    assert solve_integer([[2]], [2]) == [1]
    assert solve_integer([[2]], [1], 4) is None
    assert solve_integer([[2]], [1], 5) == [3]


@given(matrices())
def test_nullspace(M):
    for v in nullspace(M, Q):
        assert all(sum(Fraction(a) * x for a, x in zip(r, v)) == 0 for r in M)
    assert len(nullspace(M, Q)) == len(M[0]) - sympy.Matrix(M).rank()
