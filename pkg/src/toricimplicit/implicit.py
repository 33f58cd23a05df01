"""Implicit equation from a representation matrix.

Maximal minors of the pencil are computed as homogeneous forms by evaluation
and Newton interpolation; their gcd is recovered from univariate gcds along a
family of lines, then confirmed by exact division.  An independent brute-force
oracle (a kernel vector of a sampled evaluation matrix) is provided for
cross-checking.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb, lcm
from typing import Sequence

from .arith import ParamPoly, TPoly, random_rational, session_prime, substitute_params
from .interp import interpolate_simplex, interpolate_univariate, simplex_points, upoly_gcd
from .linalg import det_int, nullspace_basis_modular
from .repmatrix import RepMatrix

RETRIES = 8


class ImplicitizationError(RuntimeError):
    """The minors do not define a surface (constant gcd, rank deficiency...)."""


@dataclass(frozen=True)
class ImplicitResult:
    F: TPoly
    D: TPoly
    delta: int | None
    G: TPoly | None  # None means trivial
    verified: bool
    columns: tuple[int, ...] = ()
    minors_used: int = 1

    @property
    def degree(self) -> int:
        return self.F.degree

    @property
    def G_degree(self) -> int:
        return 0 if self.G is None else self.G.total_degree()

    def to_json(self) -> dict:
        return {
            "F": tpoly_to_json(self.F),
            "D_degree": self.D.total_degree(),
            "delta": self.delta if self.delta is not None else "unknown",
            "G_degree": self.G_degree,
            "minors_used": self.minors_used,
            "verified": self.verified,
        }


def tpoly_to_json(F: TPoly) -> dict:
    return {
        "degree": F.degree,
        "terms": [{"exp": list(e), "coeff": str(c)} for e, c in sorted(F.terms.items(), reverse=True)],
    }


def tpoly_from_json(obj) -> TPoly:
    if "F" in obj:
        obj = obj["F"]
    return TPoly({tuple(t["exp"]): Fraction(t["coeff"]) for t in obj["terms"]})


# ---------------------------------------------------------------------------
# column selection and minors


def _integer_pencil(M: RepMatrix, cols: Sequence[int] | None = None) -> tuple[list, int]:
    """Pencil restricted to ``cols`` with each column scaled to integers.

    Returns the four integer matrices and the product of column scales (the
    determinant of the original is that of the scaled one divided by it).
    """
    cols = range(M.shape[1]) if cols is None else cols
    scale = 1
    mats = [[[0] * len(cols) for _ in range(M.shape[0])] for _ in range(4)]
    for k, j in enumerate(cols):
        m = 1
        for Mi in M.pencil:
            for r in Mi.data:
                m = lcm(m, r[j].denominator)
        scale *= m
        for i, Mi in enumerate(M.pencil):
            for row_idx, r in enumerate(Mi.data):
                mats[i][row_idx][k] = int(r[j] * m)
    return mats, scale


def _pencil_at(mats: list, p: Sequence[int]) -> list[list[int]]:
    rows, cols = len(mats[0]), len(mats[0][0]) if mats[0] else 0
    out = [[0] * cols for _ in range(rows)]
    for c, Mi in zip(p, mats):
        if c:
            for i in range(rows):
                orow, mrow = out[i], Mi[i]
                for j in range(cols):
                    if mrow[j]:
                        orow[j] += c * mrow[j]
    return out


def _random_int_point(rng: random.Random) -> list[int]:
    # random rational point, cleared of denominators (same point of P^3)
    q = [random_rational(rng) for _ in range(4)]
    m = lcm(*(x.denominator for x in q))
    return [int(x * m) for x in q]


def select_max_cols(M: RepMatrix, seed: int = 42, order: Sequence[int] | None = None) -> tuple[int, ...]:
    """Greedy left-to-right choice of ``rows`` columns that are independent at
    a random point; ``order`` fixes the scan order (default: natural)."""
    rng = random.Random(seed)
    r, c = M.shape
    order = list(range(c)) if order is None else list(order)
    mats, _ = _integer_pencil(M)
    for _ in range(RETRIES):
        A = _pencil_at(mats, _random_int_point(rng))
        chosen: list[int] = []
        echelon: list[tuple[int, list[Fraction]]] = []  # (pivot, vector)
        for j in order:
            v = [Fraction(A[i][j]) for i in range(r)]
            for piv, e in echelon:
                if v[piv]:
                    f = v[piv] / e[piv]
                    v = [a - f * b for a, b in zip(v, e)]
            piv = next((i for i, a in enumerate(v) if a), None)
            if piv is not None:
                echelon.append((piv, v))
                chosen.append(j)
                if len(chosen) == r:
                    return tuple(sorted(chosen))
    raise ImplicitizationError("no nonsingular maximal minor found; the matrix is not of full row rank")


def _pencil_determinant(mats: list, scale: int = 1) -> TPoly:
    """``det(T1*A1 + ... + T4*A4) / scale`` for square integer matrices A_i."""
    r = len(mats[0])
    values = interpolate_simplex(
        lambda e: det_int(_pencil_at(mats, (e[0], e[1], e[2], 1))), 3, r)
    return TPoly({(a, b, c, r - a - b - c): Fraction(v) / scale for (a, b, c), v in values.items()})


def minor_determinant(M: RepMatrix, cols: Sequence[int]) -> TPoly:
    """Determinant of the square sub-pencil on ``cols`` as a form of degree rows."""
    r = M.shape[0]
    if len(cols) != r:
        raise ValueError(f"need {r} columns, got {len(cols)}")
    mats, scale = _integer_pencil(M, cols)
    return _pencil_determinant(mats, scale)


def mixed_minor_determinant(M: RepMatrix, rng: random.Random, spread: int = 9) -> TPoly:
    """``det(M(T) R)`` for a random integer ``cols x rows`` matrix R.

    By Cauchy-Binet this is a random linear combination of all maximal minors
    of M, so its cofactor over their gcd is generic.
    """
    r, c = M.shape
    mats, scale = _integer_pencil(M)
    R = [[rng.randint(-spread, spread) for _ in range(r)] for _ in range(c)]
    mixed = [[[sum(row[k] * R[k][j] for k in range(c) if row[k]) for j in range(r)] for row in Mi]
             for Mi in mats]
    return _pencil_determinant(mixed, scale)


# ---------------------------------------------------------------------------
# gcd of homogeneous forms


def _int_form(F: TPoly) -> list[tuple[tuple[int, ...], int]]:
    n = F.normalized()
    return [(e, int(c)) for e, c in n.terms.items()]


def _eval_int(form, point: Sequence[int]) -> int:
    pw = [{} for _ in range(4)]
    total = 0
    for exp, c in form:
        v = c
        for i, k in enumerate(exp):
            if k:
                p = pw[i].get(k)
                if p is None:
                    p = pw[i][k] = point[i] ** k
                v *= p
        total += v
    return total


def _restriction(form, deg: int, y: int, z: int, a: Sequence[int]) -> list:
    """Univariate ``x -> D(x, y + a1 x, z + a2 x, 1 + a3 x)``."""
    vals = [_eval_int(form, (x, y + a[0] * x, z + a[1] * x, 1 + a[2] * x)) for x in range(deg + 1)]
    return interpolate_univariate(vals)


def _line_gcd(forms, degs, y, z, a) -> list:
    g: list = []
    for form, deg in zip(forms, degs):
        g = upoly_gcd(g, _restriction(form, deg, y, z, a))
        if len(g) == 1:
            break
    return g


def homogeneous_gcd(polys: Sequence[TPoly], seed: int = 42) -> TPoly:
    """gcd of nonzero homogeneous forms in T1..T4, normalized primitive."""
    polys = [p for p in polys if p.terms]
    if not polys:
        raise ValueError("gcd of zero forms")
    if len(polys) == 1:
        return polys[0].normalized()
    degs = [p.degree for p in polys]
    if any(d is None for d in degs):
        raise ValueError("forms must be homogeneous")
    forms = [_int_form(p) for p in polys]
    rng = random.Random(seed)
    for _ in range(RETRIES):
        a = [rng.randint(1, 97) for _ in range(3)]
        y0, z0 = rng.randint(-50, 50), rng.randint(-50, 50)
        e = min(len(_line_gcd(forms, degs, y0 + rng.randint(0, 9), z0 + rng.randint(0, 9), a)) - 1
                for _ in range(3))
        if e <= 0:
            return TPoly.constant(1)
        coeffs: dict = {}
        ok = True
        for (i, j) in simplex_points(2, e):
            h = _line_gcd(forms, degs, y0 + i, z0 + j, a)
            if len(h) - 1 != e:
                ok = False
                break
            coeffs[(i, j)] = h
        if not ok:
            continue
        # G(x, u, v) = F'(x, y0 + u, z0 + v, 1), one x-power at a time
        terms: dict = {}
        for k in range(e + 1):
            phi = interpolate_simplex(lambda uv: coeffs[uv][k], 2, e)
            for (u, v), c in phi.items():
                if k + u + v <= e:
                    terms[(k, u, v, e - k - u - v)] = c
                elif c:
                    ok = False
        if not ok:
            continue
        Gh = TPoly(terms)
        T1, T2, T3, T4 = (TPoly.gen(i) for i in range(4))
        W = T4 - a[2] * T1
        F = Gh.linear_substitute([T1, T2 - a[0] * T1 - y0 * W, T3 - a[1] * T1 - z0 * W, W]).normalized()
        if all(p.exact_div(F) is not None for p in polys):
            return F
    raise ImplicitizationError("gcd recovery failed after retries")


# ---------------------------------------------------------------------------
# pipeline


def verify_implicit(F: TPoly, fs: Sequence[ParamPoly]) -> bool:
    """True iff F vanishes identically on the parametrization."""
    return substitute_params(F, fs).is_zero()


def _multiplicity(D: TPoly, F: TPoly) -> tuple[int, TPoly]:
    delta, rest = 0, D
    if F.total_degree() <= 0:
        return 0, D
    while True:
        q = rest.exact_div(F)
        if q is None:
            return delta, rest
        delta, rest = delta + 1, q


def implicit_equation(M: RepMatrix, seed: int = 42, fs: Sequence[ParamPoly] | None = None,
                      max_minors: int = 8) -> ImplicitResult:
    """gcd of maximal minors of M, grown until stable for two rounds.

    The first input is an honest maximal minor (reported as ``D``); further
    inputs are random column mixtures, which keep cofactors from sharing
    spurious factors (e.g. a power of one coordinate common to most minors).
    """
    rng = random.Random(seed)
    if fs is None:
        fs = [g.to_param_poly() for g in M.g]
    cols = select_max_cols(M, seed=rng.randrange(2**31))
    D = minor_determinant(M, cols)
    if D.is_zero():
        raise ImplicitizationError("selected minor vanishes identically")
    minors = [D]
    history: list[TPoly] = []
    F = D.normalized()
    if M.shape[0] < M.shape[1]:
        while len(minors) < max_minors:
            Dk = mixed_minor_determinant(M, rng)
            if Dk.is_zero():
                continue
            minors.append(Dk)
            F = homogeneous_gcd(minors, seed=rng.randrange(2**31))
            if F.total_degree() <= 0:
                raise ImplicitizationError("gcd of maximal minors is constant; no surface is represented")
            history.append(F)
            if len(history) >= 2 and history[-1] == history[-2]:
                break
    if F.total_degree() <= 0:
        raise ImplicitizationError("gcd of maximal minors is constant; no surface is represented")
    delta, rest = _multiplicity(D, F)
    G = None if rest.total_degree() <= 0 else rest.normalized()
    return ImplicitResult(F, D, delta if delta else None, G, verify_implicit(F, fs),
                          cols, len(minors))


def interpolation_oracle(fs: Sequence[ParamPoly], e: int, seed: int = 42,
                         bound: int = 10**4) -> TPoly | None:
    """The unique (up to scale) degree-e form vanishing on sampled image
    points, or None when the solution space is not one-dimensional."""
    if e < 1:
        raise ValueError("degree must be positive")
    rng = random.Random(seed)
    monos = [m for m in simplex_points(4, e) if sum(m) == e]
    n_samples = 2 * comb(e + 3, 3)
    rows = []
    while len(rows) < n_samples:
        st = (random_rational(rng, bound), random_rational(rng, bound))
        vals = [f.evaluate(st) for f in fs]
        if all(v == 0 for v in vals):
            continue
        m = lcm(*(v.denominator for v in vals))
        p = [int(v * m) for v in vals]
        rows.append([p[0] ** m0 * p[1] ** m1 * p[2] ** m2 * p[3] ** m3 for m0, m1, m2, m3 in monos])
    kernel = nullspace_basis_modular(rows, _prime_stream(rng))
    if len(kernel) != 1:
        return None
    return TPoly({m: c for m, c in zip(monos, kernel[0])}).normalized()


def _prime_stream(rng: random.Random, count: int = 64):
    for _ in range(count):
        yield session_prime(rng.randrange(2**31))
