from fractions import Fraction
import random

import pytest
from hypothesis import given, settings, strategies as st

from toricimplicit.linalg import (QMatrix, det, det_int, nullity, nullspace_basis,
                                  nullspace_basis_modular, rank, rref)

small = st.integers(-4, 4)


def matrices(max_rows=6, max_cols=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def _det_laplace(rows):
    if len(rows) == 1:
        return Fraction(rows[0][0])
    return sum((-1) ** j * rows[0][j] * _det_laplace([r[:j] + r[j + 1:] for r in rows[1:]])
               for j in range(len(rows)))


@given(st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_det_matches_cofactor_expansion(rows):
    assert det(QMatrix.from_rows(rows)) == _det_laplace(rows)
    assert det_int(rows) == _det_laplace(rows)


@given(matrices())
def test_rank_nullity(rows):
    M = QMatrix.from_rows(rows)
    basis = nullspace_basis(M)
    assert rank(M) + len(basis) == M.cols
    for v in basis:
        assert all(x == 0 for x in M @ v)


@settings(max_examples=50)
@given(matrices(8, 8))
def test_prime_rank_agrees_for_small_entries(rows):
    # a prime above 2^30 cannot divide minors of such small matrices
    M = QMatrix.from_rows(rows)
    assert rank(M, prime=1_000_000_007) == rank(M)


def test_rank_is_transpose_invariant():
    rng = random.Random(3)
    rows = [[rng.randint(-3, 3) for _ in range(9)] for _ in range(4)]
    rows.append([a + b for a, b in zip(rows[0], rows[1])])
    M = QMatrix.from_rows(rows)
    assert rank(M) == rank(M.transpose()) == 4


def test_canonical_nullspace_is_identity_on_free_columns():
    M = QMatrix.from_rows([[1, 2, 3], [2, 4, 6]])
    basis = nullspace_basis(M)
    assert basis == [[-2, 1, 0], [-3, 0, 1]]
    _, pivots = rref(M)
    assert pivots == [0]


def test_rational_entries():
    M = QMatrix.from_rows([[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 4), Fraction(1, 6)]])
    assert det(M) == 0
    assert nullity(M) == 1


def test_modular_nullspace_matches_exact():
    rng = random.Random(11)
    rows = [[rng.randint(-50, 50) for _ in range(7)] for _ in range(5)]
    primes = [2_147_483_647, 2_147_483_629, 2_147_483_587, 2_147_483_579]
    got = nullspace_basis_modular(rows, primes)
    want = nullspace_basis(QMatrix.from_rows(rows))
    assert got == want


def test_shape_mismatch_raises():
    with pytest.raises(ValueError):
        QMatrix.from_rows([[1, 2]]) @ QMatrix.from_rows([[1, 2]])
