from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from contact_surgery import linalg
from oracles import brute_rank, descartes_signature, determinantal_factors, leibniz_det, mod2_solutions


def matrices(max_n=4, bound=5, square=False):
    @st.composite
    def build(draw):
        n = draw(st.integers(0, max_n))
        m = n if square else draw(st.integers(0 if n == 0 else 1, max_n))
        if n == 0:
            m = 0
        return [[draw(st.integers(-bound, bound)) for _ in range(m)] for _ in range(n)]
    return build()


@st.composite
def symmetric(draw, max_n=4, bound=4):
    n = draw(st.integers(0, max_n))
    Q = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            Q[i][j] = Q[j][i] = draw(st.integers(-bound, bound))
    return Q


def test_snf_small_example():
    snf = linalg.smith_normal_form([[2, 4], [6, 8]])
    assert snf.diagonal == [2, 4]
    assert linalg.invariant_factors([[2, 4], [6, 8]]) == [2, 4]


def test_snf_of_lens_matrix_is_cyclic():
    assert linalg.invariant_factors([[-2, 1], [1, -2]]) == [3]
    assert linalg.invariant_factors([[-3]]) == [3]
    assert linalg.invariant_factors([[0]]) == [0]
    assert linalg.invariant_factors([[1]]) == []


def test_snf_sign_fixed_by_columns():
    snf = linalg.smith_normal_form([[-3]])
    assert snf.U == [[1]] and snf.S == [[3]]


@settings(max_examples=300, deadline=None)
@given(matrices())
def test_snf_reconstruction_and_divisibility(M):
    snf = linalg.smith_normal_form(M)
    assert linalg.matmul(linalg.matmul(snf.U, M), snf.V) == snf.S if M else True
    if M:
        assert abs(leibniz_det(snf.U)) == 1 and abs(leibniz_det(snf.V)) == 1
    diag = snf.diagonal
    assert all(x >= 0 for x in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) or (a != 0 and b % a == 0)
    n, m = linalg.shape(M)
    assert all(snf.S[i][j] == 0 for i in range(n) for j in range(m) if i != j)


@settings(max_examples=300, deadline=None)
@given(matrices(max_n=3))
def test_invariant_factors_match_determinantal_divisors(M):
    # cokernel convention: one factor per row, free rank padded with zeros
    factors = determinantal_factors(M) if M and M[0] else []
    factors += [0] * (len(M) - len(factors))
    expect = [x for x in factors if x != 1]
    assert linalg.invariant_factors(M) == expect


@settings(max_examples=300, deadline=None)
@given(matrices(max_n=4, square=True))
def test_determinant_matches_leibniz(M):
    assert linalg.determinant(M) == (leibniz_det(M) if M else 1)


@settings(max_examples=300, deadline=None)
@given(matrices(max_n=3))
def test_rank_matches_minors(M):
    assert linalg.rank(M) == (brute_rank(M) if M and M[0] else 0)


@settings(max_examples=300, deadline=None)
@given(symmetric(), st.lists(st.integers(-4, 4), min_size=4, max_size=4))
def test_solve_rational(Q, r):
    r = r[:len(Q)]
    b = linalg.solve_rational(Q, r)
    augmented = [row + [v] for row, v in zip(Q, r)]
    solvable = brute_rank(Q) == brute_rank(augmented) if Q else True
    assert (b is not None) == solvable
    if b is not None:
        assert all(isinstance(x, Fraction) for x in b)
        assert [sum(q * x for q, x in zip(row, b)) for row in Q] == r


def test_solve_rational_dimension_mismatch():
    with pytest.raises(ValueError):
        linalg.solve_rational([[1, 0], [0, 1]], [1])


@settings(max_examples=300, deadline=None)
@given(symmetric(max_n=5))
def test_signature_matches_descartes(Q):
    assert linalg.signature(Q) == (descartes_signature(Q) if Q else 0)


def test_signature_examples():
    assert linalg.signature([[-2, 1], [1, -2]]) == -2
    assert linalg.signature([[0, 1], [1, 0]]) == 0
    assert linalg.signature([[0]]) == 0
    with pytest.raises(linalg.NotSymmetric):
        linalg.signature([[1, 2], [0, 1]])


@settings(max_examples=300, deadline=None)
@given(symmetric(max_n=5, bound=3), st.lists(st.integers(0, 1), min_size=5, max_size=5))
def test_mod2_solutions_match_enumeration(Q, d):
    d = d[:len(Q)]
    space = linalg.solve_affine_mod2(Q, d)
    expect = mod2_solutions(Q, d) if Q else [()]
    got = sorted(tuple(x) for x in space.elements())
    assert got == sorted(expect)
    assert len(space) == len(expect)
    assert space.consistent == bool(expect)


def test_mod2_refuses_huge_enumeration():
    n = linalg.MAX_ENUMERATED_NULLITY + 1
    space = linalg.solve_affine_mod2([[0] * n for _ in range(n)], [0] * n)
    assert space.nullity == n
    with pytest.raises(OverflowError):
        space.elements()


def test_block_diag_and_transpose():
    A = [[1, 2], [3, 4]]
    B = [[5]]
    assert linalg.block_diag(A, B) == [[1, 2, 0], [3, 4, 0], [0, 0, 5]]
    assert linalg.transpose(A) == [[1, 3], [2, 4]]
    for x in product(range(-2, 3), repeat=2):
        assert linalg.matvec(A, list(x)) == [x[0] + 2 * x[1], 3 * x[0] + 4 * x[1]]
