"""Graded toric coordinate ring of a lattice polygon, modelled on lattice points.

The degree-n piece ``A_n`` has the lattice points of ``n*Q`` as a monomial
basis and multiplication is addition of points.  Lattice polygons are normal,
so this agrees with the subring of k[s,t,z] generated by the degree-one
monomials ``z * s^a * t^b`` for ``(a, b)`` in ``Q``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .arith import ParamPoly
from .linalg import QMatrix
from .polytope import LatticePolytope, Point, lattice_points


class ContainmentError(ValueError):
    """A parametrizing monomial lies outside d*Q."""


@dataclass(frozen=True)
class GradedBasis:
    degree: int
    points: tuple[Point, ...]

    def __len__(self):
        return len(self.points)

    def index(self) -> dict[Point, int]:
        return {p: i for i, p in enumerate(self.points)}


class ToricAlgebra:
    """The graded semigroup ring of a lattice polygon ``Q``."""

    def __init__(self, polytope: LatticePolytope):
        self.polytope = polytope
        self._bases: dict[int, GradedBasis] = {}
        self._index: dict[int, dict[Point, int]] = {}
        self._lock = threading.Lock()

    def basis(self, n: int) -> GradedBasis:
        b = self._bases.get(n)
        if b is None:
            pts = tuple(lattice_points(self.polytope, n)) if n >= 0 else ()
            with self._lock:
                b = self._bases.setdefault(n, GradedBasis(n, pts))
        return b

    def index(self, n: int) -> dict[Point, int]:
        ix = self._index.get(n)
        if ix is None:
            ix = self.basis(n).index()
            with self._lock:
                self._index[n] = ix
        return ix

    def dim(self, n: int) -> int:
        return len(self.basis(n))

    def variable_names(self) -> dict[str, list[int]]:
        """Degree-one variables ``X_i`` and their lattice points."""
        return {f"X_{i}": list(p) for i, p in enumerate(self.basis(1).points)}


@dataclass(frozen=True)
class GVector:
    """An element of ``A_d`` as coefficients on lattice points of ``d*Q``."""

    degree: int
    coeffs: Mapping[Point, Fraction] = field(hash=False)

    def support(self) -> list[Point]:
        return sorted(self.coeffs)

    def to_param_poly(self) -> ParamPoly:
        return ParamPoly({p: c for p, c in self.coeffs.items()})

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*x{p}" for p, c in sorted(self.coeffs.items()))


def reparametrize(fs: Sequence[ParamPoly], Q: LatticePolytope, d: int) -> list[GVector]:
    """Reinterpret each ``f_i`` (already normalized) as a degree-d element of A.

    A term ``c * s^a * t^b`` becomes coefficient ``c`` on the point ``(a, b)``
    of ``d*Q``.
    """
    if len(fs) != 4:
        raise ValueError("need four parametrizing polynomials")
    dQ = Q.scaled(d)
    for i, f in enumerate(fs):
        for e in f.terms:
            if not dQ.contains(e):
                raise ContainmentError(
                    f"exponent {e} of f{i + 1} lies outside {d}*Q = {dQ}")
    return [GVector(d, dict(f.terms)) for f in fs]


def mult_matrix(g: GVector, nu: int, alg: ToricAlgebra) -> QMatrix:
    """Matrix of multiplication by ``g``: ``A_nu -> A_{nu+d}``."""
    src = alg.basis(nu).points
    tgt = alg.index(nu + g.degree)
    rows = [[Fraction(0)] * len(src) for _ in range(len(tgt))]
    for j, m in enumerate(src):
        for p, c in g.coeffs.items():
            rows[tgt[(m[0] + p[0], m[1] + p[1])]][j] += c
    return QMatrix(len(tgt), len(src), tuple(tuple(r) for r in rows))


def is_sum_of_points(P: LatticePolytope, n: int) -> bool:
    """Brute-force normality check: every point of n*P is a sum of n points of P."""
    base = lattice_points(P, 1)
    reach = {(0, 0)}
    for _ in range(n):
        reach = {(a[0] + b[0], a[1] + b[1]) for a in reach for b in base}
    return set(lattice_points(P, n)) <= reach
