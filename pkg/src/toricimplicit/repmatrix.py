"""Representation matrix as a linear pencil and the drop-of-rank test."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arith import as_rational, rational_str
from .complex import ComplexContext, koszul_matrix
from .linalg import QMatrix, nullspace_basis, rank
from .polytope import LatticePolytope
from .toric import GradedBasis, GVector, mult_matrix


class DegenerateParametrizationError(RuntimeError):
    """No syzygies in the requested degree."""


@dataclass(frozen=True)
class P3Point:
    """Point of P^3, scaled so that its first nonzero coordinate is 1."""

    coords: tuple[Fraction, Fraction, Fraction, Fraction]

    def __init__(self, coords: Sequence):
        cs = [as_rational(c) for c in coords]
        if len(cs) != 4:
            raise ValueError("a point of P^3 has four coordinates")
        lead = next((c for c in cs if c != 0), None)
        if lead is None:
            raise ValueError("(0:0:0:0) is not a point of P^3")
        object.__setattr__(self, "coords", tuple(c / lead for c in cs))

    def __iter__(self):
        return iter(self.coords)

    def __str__(self):
        return "(" + " : ".join(rational_str(c) for c in self.coords) + ")"


@dataclass(frozen=True, eq=False)
class RepMatrix:
    """``M(T) = T1*M1 + T2*M2 + T3*M3 + T4*M4``; rows indexed by ``A_nu0``."""

    rows: GradedBasis
    pencil: tuple[QMatrix, QMatrix, QMatrix, QMatrix]
    nu0: int
    d: int
    polytope: LatticePolytope
    g: tuple[GVector, ...]

    @property
    def shape(self) -> tuple[int, int]:
        return self.pencil[0].shape

    def __eq__(self, other):
        return (isinstance(other, RepMatrix) and self.nu0 == other.nu0 and self.d == other.d
                and self.rows == other.rows and self.pencil == other.pencil)

    def to_json(self) -> dict:
        return {
            "nu0": self.nu0,
            "d": self.d,
            "rows": [list(p) for p in self.rows.points],
            "cols": self.shape[1],
            "M": {f"T{i + 1}": [[rational_str(a) for a in r] for r in Mi.data]
                  for i, Mi in enumerate(self.pencil)},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, obj, polytope: LatticePolytope | None = None,
                  g: Sequence[GVector] = ()) -> "RepMatrix":
        if isinstance(obj, str):
            obj = json.loads(obj)
        rows = GradedBasis(obj["nu0"], tuple(tuple(p) for p in obj["rows"]))
        mats = []
        for i in range(4):
            data = obj["M"][f"T{i + 1}"]
            mats.append(QMatrix(len(data), obj["cols"],
                                tuple(tuple(Fraction(a) for a in r) for r in data)))
        return cls(rows, tuple(mats), obj["nu0"], obj["d"], polytope, tuple(g))

    def column_syzygy(self, j: int) -> list[list[Fraction]]:
        """Column j split into its four blocks (coefficients over ``A_nu0``)."""
        return [Mi.column(j) for Mi in self.pencil]


def build_rep_matrix(ctx: ComplexContext, nu0: int) -> RepMatrix:
    d = ctx.d
    K = koszul_matrix(ctx, 1, nu0 + d)
    basis = nullspace_basis(K)
    if not basis:
        raise DegenerateParametrizationError(f"no linear syzygies in degree {nu0 + d}")
    rows = ctx.algebra.basis(nu0)
    n = len(rows)
    mats = []
    for i in range(4):
        block = [[v[i * n + m] for v in basis] for m in range(n)]
        mats.append(QMatrix(n, len(basis), tuple(tuple(r) for r in block)))
    return RepMatrix(rows, tuple(mats), nu0, d, ctx.algebra.polytope, tuple(ctx.g))


def evaluate(M: RepMatrix, p) -> QMatrix:
    p = p if isinstance(p, P3Point) else P3Point(p)
    r, c = M.shape
    out = [[Fraction(0)] * c for _ in range(r)]
    for coef, Mi in zip(p.coords, M.pencil):
        if coef == 0:
            continue
        for i, row in enumerate(Mi.data):
            orow = out[i]
            for j, a in enumerate(row):
                if a:
                    orow[j] += coef * a
    return QMatrix(r, c, tuple(tuple(row) for row in out))


def rank_at(M: RepMatrix, p) -> tuple[int, bool]:
    """Rank of M(p) and whether it drops below the row count."""
    rk = rank(evaluate(M, p))
    return rk, rk < M.shape[0]


def random_p3_point(rng: random.Random, bound: int = 10**4) -> P3Point:
    return P3Point([Fraction(rng.randint(1, bound), rng.randint(1, bound)) for _ in range(4)])


def syzygy_residual(M: RepMatrix, ctx: ComplexContext, j: int) -> list[Fraction]:
    """``sum_i g_i * block_i(column j)`` in ``A_{nu0+d}`` (zero for a syzygy)."""
    total = [Fraction(0)] * ctx.algebra.dim(M.nu0 + M.d)
    for gi, block in zip(ctx.g, M.column_syzygy(j)):
        for k, v in enumerate(mult_matrix(gi, M.nu0, ctx.algebra) @ block):
            total[k] += v
    return total


def image_point(fs, st: Sequence) -> P3Point | None:
    """``(f1(s,t) : ... : f4(s,t))`` or None if all four vanish."""
    vals = [f.evaluate(st) for f in fs]
    if all(v == 0 for v in vals):
        return None
    return P3Point(vals)


