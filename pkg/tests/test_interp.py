from fractions import Fraction

from hypothesis import given, settings, strategies as st

from toricimplicit.interp import (interpolate_simplex, interpolate_univariate, simplex_points,
                                  upoly_gcd, upoly_rem)

coeff = st.fractions(min_value=-9, max_value=9, max_denominator=5)


@settings(max_examples=40)
@given(st.integers(1, 3).flatmap(lambda k: st.tuples(
    st.just(k), st.integers(0, 4).flatmap(
        lambda r: st.tuples(st.just(r), st.dictionaries(
            st.sampled_from(list(simplex_points(k, r))), coeff, max_size=6))))))
def test_simplex_interpolation_recovers_polynomial(case):
    k, (r, poly) = case

    def f(x):
        total = Fraction(0)
        for e, c in poly.items():
            term = c
            for xi, ei in zip(x, e):
                term *= Fraction(xi) ** ei
            total += term
        return total

    assert interpolate_simplex(f, k, r) == {e: c for e, c in poly.items() if c}


def test_univariate_interpolation():
    assert interpolate_univariate([1, 2, 5, 10]) == [1, 0, 1]


def test_univariate_gcd():
    a = [-1, 0, 1]  # (x-1)(x+1)
    b = [-2, 1, 1]  # (x-1)(x+2)
    assert upoly_gcd(a, b) == [-1, 1]
    assert upoly_gcd([1, 1], [2]) == [1]
    assert upoly_rem([1, 0, 1], [1, 1]) == [2]


def test_simplex_point_count():
    assert len(list(simplex_points(3, 6))) == 84
