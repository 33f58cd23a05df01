from fractions import Fraction

import pytest

from toricimplicit.arith import parse_param_poly
from toricimplicit.polytope import normalize_params
from toricimplicit.toric import (ContainmentError, ToricAlgebra, is_sum_of_points, mult_matrix,
                                 reparametrize)

from conftest import EXAMPLE_F, SMALL_Q


@pytest.mark.parametrize("n", range(1, 5))
def test_fixture_polytopes_are_normal(example, n):
    assert is_sum_of_points(example.Q, n)
    assert is_sum_of_points(SMALL_Q, n)


def test_graded_dimensions(example):
    alg = ToricAlgebra(example.Q)
    assert [alg.dim(n) for n in range(4)] == [1, 6, 17, 34]
    assert alg.variable_names()["X_5"] == [2, 6]


def test_reparametrize_checks_containment():
    fs, _ = normalize_params([parse_param_poly(t) for t in EXAMPLE_F])
    with pytest.raises(ContainmentError):
        reparametrize(fs, SMALL_Q, 1)
    g = reparametrize(fs, SMALL_Q, 2)
    assert g[2].coeffs == {(1, 4): Fraction(1), (2, 6): Fraction(5)}
    assert [gi.to_param_poly() for gi in g] == fs


def test_multiplication_matches_polynomial_product(example):
    # columns of mult_matrix are the products g * monomial
    alg = ToricAlgebra(example.Q)
    g = example.ctx.g[0]
    M = mult_matrix(g, 1, alg)
    tgt = alg.basis(2).points
    for j, m in enumerate(alg.basis(1).points):
        prod = g.to_param_poly() * parse_param_poly(f"s^{m[0]}*t^{m[1]}")
        col = {tgt[i]: v for i, v in enumerate(M.column(j)) if v}
        assert col == prod.terms
