"""Exact interpolation helpers: univariate polynomials and Newton interpolation
on the principal lattice of a simplex.

A polynomial of total degree <= r in k variables is determined by its values
at the integer points ``{e in Z^k_{>=0} : |e| <= r}``; forward differences in
each axis give its coefficients in the binomial basis ``prod C(x_i, e_i)``,
which are then converted to monomials.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable

# univariate polynomials are coefficient lists, lowest degree first


def upoly_trim(a: list) -> list:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def upoly_monic(a: list) -> list:
    a = upoly_trim(a)
    if not a:
        return a
    lc = a[-1]
    return [Fraction(c) / lc for c in a]


def upoly_rem(a: list, b: list) -> list:
    a = [Fraction(c) for c in upoly_trim(a)]
    b = upoly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and a:
        q = a[-1] / lb
        shift = len(a) - 1 - db
        for i, c in enumerate(b):
            a[shift + i] -= q * c
        a = upoly_trim(a)
    return a


def upoly_gcd(a: list, b: list) -> list:
    """Monic gcd over Q (the zero polynomial is []; gcd(0, 0) = [])."""
    a, b = upoly_monic(a), upoly_monic(b)
    while b:
        a, b = b, upoly_monic(upoly_rem(a, b))
    return a


def upoly_eval(a: list, x):
    v = 0
    for c in reversed(a):
        v = v * x + c
    return v


@lru_cache(maxsize=None)
def _binomial_to_monomial(r: int) -> tuple[tuple[Fraction, ...], ...]:
    """Row i: monomial coefficients of C(x, i), for i = 0..r."""
    rows = []
    falling = [Fraction(1)]  # x (x-1) ... (x-i+1)
    for i in range(r + 1):
        rows.append(tuple(c / factorial(i) for c in falling))
        nxt = [Fraction(0)] * (len(falling) + 1)
        for k, c in enumerate(falling):
            nxt[k + 1] += c
            nxt[k] -= i * c
        falling = nxt
    return tuple(rows)


def simplex_points(nvars: int, r: int):
    """Integer points e >= 0 with |e| <= r, in lexicographic order."""
    if nvars == 0:
        yield ()
        return
    for first in range(r + 1):
        for rest in simplex_points(nvars - 1, r - first):
            yield (first,) + rest


def _lines(nvars: int, r: int, axis: int):
    others = nvars - 1
    for o in simplex_points(others, r):
        base = list(o[:axis]) + [0] + list(o[axis:])
        length = r - sum(o)
        yield base, length


def newton_simplex(values: dict, nvars: int, r: int) -> dict:
    """Monomial coefficients of the unique degree-<=r polynomial with
    ``p(e) = values[e]`` on the simplex lattice."""
    c = {e: Fraction(values[e]) for e in simplex_points(nvars, r)}
    # forward differences along each axis
    for axis in range(nvars):
        for base, length in _lines(nvars, r, axis):
            keys = []
            for i in range(length + 1):
                k = list(base)
                k[axis] = i
                keys.append(tuple(k))
            col = [c[k] for k in keys]
            for step in range(1, length + 1):
                for i in range(length, step - 1, -1):
                    col[i] = col[i] - col[i - 1]
            for k, v in zip(keys, col):
                c[k] = v
    # binomial basis -> monomials, axis by axis
    B = _binomial_to_monomial(r)
    for axis in range(nvars):
        for base, length in _lines(nvars, r, axis):
            keys = []
            for i in range(length + 1):
                k = list(base)
                k[axis] = i
                keys.append(tuple(k))
            col = [c[k] for k in keys]
            out = [Fraction(0)] * (length + 1)
            for i, ci in enumerate(col):
                if ci:
                    for m, bm in enumerate(B[i]):
                        if bm:
                            out[m] += ci * bm
            for k, v in zip(keys, out):
                c[k] = v
    return {e: v for e, v in c.items() if v != 0}


def interpolate_simplex(func: Callable[[tuple], object], nvars: int, r: int) -> dict:
    """Sample ``func`` on the simplex lattice of size r and interpolate."""
    return newton_simplex({e: func(e) for e in simplex_points(nvars, r)}, nvars, r)


def interpolate_univariate(values: list) -> list:
    """Coefficients of the degree < len(values) polynomial through (i, values[i])."""
    n = len(values) - 1
    c = newton_simplex({(i,): v for i, v in enumerate(values)}, 1, n)
    return upoly_trim([c.get((i,), Fraction(0)) for i in range(n + 1)])

