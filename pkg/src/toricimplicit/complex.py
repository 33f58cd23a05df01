"""Graded strands of the Koszul complex on g = (g1, g2, g3, g4) over A.

Only finite-dimensional graded pieces are ever built: the differential
``kappa_p`` in internal degree ``mu`` maps

    (A_{mu - p*d}) ^ C(4, p)  ->  (A_{mu - (p-1)*d}) ^ C(4, p-1)

with ``e_I (x) a  |->  sum_j (-1)^j  g_{i_j} a  e_{I minus i_j}``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .linalg import QMatrix, rank
from .toric import GVector, ToricAlgebra

SUBSETS = {p: list(combinations(range(4), p)) for p in range(5)}


class NuSearchError(RuntimeError):
    """The Euler characteristic never vanished below the cap."""

    def __init__(self, message: str, table: list):
        super().__init__(message)
        self.table = table


@dataclass
class ComplexContext:
    algebra: ToricAlgebra
    g: Sequence[GVector]
    prime: int | None = None  # rank over GF(prime) instead of Q when set
    _cache: dict = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def __post_init__(self):
        if len(self.g) != 4:
            raise ValueError("need exactly four g's")
        degs = {gi.degree for gi in self.g}
        if len(degs) != 1:
            raise ValueError("all g_i must have the same degree")
        if not any(gi.coeffs for gi in self.g):
            raise ValueError("all g_i are zero")

    @property
    def d(self) -> int:
        return self.g[0].degree


def koszul_matrix(ctx: ComplexContext, p: int, mu: int) -> QMatrix:
    if p not in (1, 2, 3):
        raise ValueError(f"Koszul differential index must be 1..3, got {p}")
    key = ("K", p, mu)
    cached = ctx._cache.get(key)
    if cached is not None:
        return cached
    alg, d = ctx.algebra, ctx.d
    src_deg, tgt_deg = mu - p * d, mu - (p - 1) * d
    src_pts = alg.basis(src_deg).points if src_deg >= 0 else ()
    tgt_ix = alg.index(tgt_deg) if tgt_deg >= 0 else {}
    n_src, n_tgt = len(src_pts), len(tgt_ix)
    src_sets, tgt_sets = SUBSETS[p], SUBSETS[p - 1]
    tgt_pos = {J: k for k, J in enumerate(tgt_sets)}
    rows = [[0] * (n_src * len(src_sets)) for _ in range(n_tgt * len(tgt_sets))]
    for s_idx, I in enumerate(src_sets):
        for j, i in enumerate(I):
            sign = -1 if j % 2 else 1
            J = I[:j] + I[j + 1:]
            row0 = tgt_pos[J] * n_tgt
            for col, m in enumerate(src_pts):
                c_idx = s_idx * n_src + col
                for q, c in ctx.g[i].coeffs.items():
                    rows[row0 + tgt_ix[(m[0] + q[0], m[1] + q[1])]][c_idx] += sign * c
    M = QMatrix(len(rows), n_src * len(src_sets),
                tuple(tuple(Fraction(x) for x in r) for r in rows))
    with ctx._lock:
        ctx._cache.setdefault(key, M)
    return M


def cycle_dim(ctx: ComplexContext, p: int, mu: int) -> int:
    """Dimension of the cycles Z_p in degree mu (Z_0 = A)."""
    if p == 0:
        return ctx.algebra.dim(mu) if mu >= 0 else 0
    key = ("Z", p, mu)
    if key not in ctx._cache:
        K = koszul_matrix(ctx, p, mu)
        value = K.cols - rank(K, ctx.prime) if K.cols else 0
        with ctx._lock:
            ctx._cache.setdefault(key, value)
    return ctx._cache[key]


@dataclass(frozen=True)
class NuRow:
    nu: int
    dim_a: int
    z1: int
    z2: int
    z3: int

    @property
    def chi(self) -> int:
        return self.dim_a - self.z1 + self.z2 - self.z3


@dataclass(frozen=True)
class NuReport:
    nu0: int
    d: int
    table: tuple[NuRow, ...]

    @property
    def row(self) -> NuRow:
        return self.table[-1]

    def to_json(self) -> dict:
        return {
            "nu0": self.nu0,
            "d": self.d,
            "nu0_equals_2d": self.nu0 == 2 * self.d,
            "table": [
                {"nu": r.nu, "dim_A_nu": r.dim_a, "z1": r.z1, "z2": r.z2, "z3": r.z3, "chi": r.chi}
                for r in self.table
            ],
        }


def nu_row(ctx: ComplexContext, nu: int) -> NuRow:
    d = ctx.d
    return NuRow(nu, cycle_dim(ctx, 0, nu), cycle_dim(ctx, 1, nu + d),
                 cycle_dim(ctx, 2, nu + 2 * d), cycle_dim(ctx, 3, nu + 3 * d))


def default_nu_cap(d: int) -> int:
    return 4 * d + 8


def find_nu0(ctx: ComplexContext, cap: int | None = None) -> NuReport:
    """Smallest nu >= 0 at which the Euler characteristic of the strand is zero."""
    cap = default_nu_cap(ctx.d) if cap is None else cap
    if cap < 1:
        raise ValueError("cap must be positive")
    table = []
    for nu in range(cap + 1):
        row = nu_row(ctx, nu)
        table.append(row)
        if row.chi == 0:
            return NuReport(nu, ctx.d, tuple(table))
    raise NuSearchError(f"Euler characteristic nonzero for all nu <= {cap}", table)


def expected_degree(ctx: ComplexContext, nu0: int) -> int:
    """Degree of the determinant of the degree-nu0 strand."""
    d = ctx.d
    return (cycle_dim(ctx, 1, nu0 + d) - 2 * cycle_dim(ctx, 2, nu0 + 2 * d)
            + 3 * cycle_dim(ctx, 3, nu0 + 3 * d))
