"""Dense exact linear algebra over Q, with an opt-in prime-field fast path.

Matrices hold :class:`fractions.Fraction` (or int) entries.  Rank and
determinant run fraction-free (Bareiss) on integer matrices obtained by
clearing row denominators; the nullspace is returned in canonical reduced
echelon form so results are reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import Iterable, Sequence

import numpy as np


@dataclass(frozen=True, eq=False)
class QMatrix:
    rows: int
    cols: int
    data: tuple  # tuple of row tuples

    def __post_init__(self):
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise ValueError("entries do not match the declared shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "QMatrix":
        data = tuple(tuple(Fraction(x) for x in r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(len(data), cols, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        z = Fraction(0)
        return cls(rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other):
        return isinstance(other, QMatrix) and self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash((self.shape, self.data))

    def row_list(self) -> list[list[Fraction]]:
        return [list(r) for r in self.data]

    def transpose(self) -> "QMatrix":
        return QMatrix(self.cols, self.rows, tuple(zip(*self.data)) if self.rows else tuple(() for _ in range(self.cols)))

    def column(self, j: int) -> list[Fraction]:
        return [r[j] for r in self.data]

    def select_columns(self, cols: Sequence[int]) -> "QMatrix":
        return QMatrix(self.rows, len(cols), tuple(tuple(r[j] for j in cols) for r in self.data))

    def __matmul__(self, other):
        if isinstance(other, QMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            oc = other.transpose().data
            return QMatrix(self.rows, other.cols, tuple(
                tuple(sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)) for c in oc)
                for r in self.data
            ))
        v = list(other)
        if len(v) != self.cols:
            raise ValueError("shape mismatch")
        return [sum((a * b for a, b in zip(r, v) if a and b), Fraction(0)) for r in self.data]

    def __add__(self, other: "QMatrix") -> "QMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return QMatrix(self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.data, other.data)))

    def scale(self, c) -> "QMatrix":
        c = Fraction(c)
        return QMatrix(self.rows, self.cols, tuple(tuple(c * a for a in r) for r in self.data))

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.data for a in r)


def _integer_rows(rows) -> list[list[int]]:
    """Clear denominators row by row (rank-preserving)."""
    out = []
    for r in rows:
        m = 1
        for a in r:
            if isinstance(a, Fraction) and a.denominator != 1:
                m = lcm(m, a.denominator)
        if m == 1:
            out.append([int(a) for a in r])
        else:
            out.append([int(a * m) for a in r])
    return out


def _bareiss_echelon(A: list[list[int]], ncols: int) -> int:
    """In-place fraction-free forward elimination; returns the rank."""
    m = len(A)
    r = 0
    prev = 1
    for c in range(ncols):
        if r == m:
            break
        piv = None
        for i in range(r, m):
            if A[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            A[r], A[piv] = A[piv], A[r]
        pr = A[r]
        p = pr[c]
        for i in range(r + 1, m):
            row = A[i]
            f = row[c]
            if f:
                for j in range(c + 1, ncols):
                    row[j] = (p * row[j] - f * pr[j]) // prev
            elif p != prev:
                for j in range(c + 1, ncols):
                    if row[j]:
                        row[j] = (p * row[j]) // prev
            row[c] = 0
        prev = p
        r += 1
    return r


def _rank_mod_p(rows: list[list[int]], ncols: int, p: int) -> int:
    if not rows or ncols == 0:
        return 0
    A = np.array([[a % p for a in r] for r in rows], dtype=np.int64)
    m = A.shape[0]
    r = 0
    for c in range(ncols):
        if r == m:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r, c:] = (A[r, c:] * inv) % p
        below = r + 1 + np.nonzero(A[r + 1:, c])[0]
        if below.size:
            f = A[below, c][:, None]
            A[np.ix_(below, np.arange(c, ncols))] = (
                A[np.ix_(below, np.arange(c, ncols))] - (f * A[r, c:][None, :]) % p
            ) % p
        r += 1
    return r


def rref_mod_p(rows: list[list[int]], ncols: int, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(p) and its pivot columns."""
    A = np.array([[a % p for a in r] for r in rows], dtype=np.int64).reshape(len(rows), ncols)
    m = A.shape[0]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = (A[r] * pow(int(A[r, c]), -1, p)) % p
        others = np.nonzero(A[:, c])[0]
        others = others[others != r]
        if others.size:
            f = A[others, c][:, None]
            A[others] = (A[others] - (f * A[r][None, :]) % p) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def _rational_reconstruction(a: int, m: int) -> Fraction | None:
    """n/d congruent to a mod m with |n|, d <= sqrt(m/2), if one exists."""
    bound = isqrt(m // 2)
    r0, r1 = m, a % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


def _is_kernel_vector(A: list[list[int]], v: list[Fraction]) -> bool:
    den = lcm(*(x.denominator for x in v))
    nz = [(i, int(x * den)) for i, x in enumerate(v) if x]
    return all(sum(row[i] * x for i, x in nz) == 0 for row in A)


def nullspace_basis_modular(M, primes: Iterable[int]) -> list[list[Fraction]]:
    """Same result as :func:`nullspace_basis`, via reduction modulo ``primes``,
    CRT and rational reconstruction.

    Certified: reconstructed vectors must lie in the kernel exactly, and their
    number is a modular nullity, which bounds the rational one from above.
    Falls back to exact elimination when the primes run out.
    """
    rows, ncols = _entries(M)
    A = _integer_rows(rows)
    if not A:
        return nullspace_basis(M)
    pivots: list[int] | None = None
    residues: list[list[int]] = []
    modulus = 1
    for p in primes:
        R, piv_p = rref_mod_p(A, ncols, p)
        if pivots is not None and piv_p != pivots:
            if len(piv_p) < len(pivots):
                continue  # unlucky prime
            residues, modulus = [], 1  # the earlier primes were the unlucky ones
        pivots = piv_p
        pivset = set(pivots)
        free = [c for c in range(ncols) if c not in pivset]
        if not free:
            return []
        vecs = []
        for f in free:
            v = [0] * ncols
            v[f] = 1
            for row, pc in zip(R, pivots):
                v[pc] = (-int(row[f])) % p
            vecs.append(v)
        if not residues:
            residues = vecs
        else:
            inv = pow(modulus, -1, p)
            for acc, v in zip(residues, vecs):
                for i in range(ncols):
                    acc[i] += modulus * (((v[i] - acc[i]) * inv) % p)
        modulus *= p
        candidate = []
        for acc in residues:
            vec = [_rational_reconstruction(a, modulus) for a in acc]
            if any(x is None for x in vec):
                break
            candidate.append(vec)
        else:
            if all(_is_kernel_vector(A, v) for v in candidate):
                return candidate
    return nullspace_basis(M)


def _entries(M) -> tuple[list, int]:
    if isinstance(M, QMatrix):
        return list(M.data), M.cols
    rows = [list(r) for r in M]
    return rows, (len(rows[0]) if rows else 0)


def rank(M, prime: int | None = None) -> int:
    """Rank over Q, or over GF(prime) when ``prime`` is given (probabilistic
    as a statement about Q: it can only under-estimate)."""
    rows, ncols = _entries(M)
    if not rows or ncols == 0:
        return 0
    # eliminate along the shorter dimension
    if len(rows) > ncols:
        rows = [list(c) for c in zip(*rows)]
        ncols = len(rows[0])
    A = _integer_rows(rows)
    if prime is not None:
        return _rank_mod_p(A, ncols, prime)
    return _bareiss_echelon(A, ncols)


def det(M) -> Fraction:
    """Exact determinant by Bareiss elimination."""
    rows, ncols = _entries(M)
    n = len(rows)
    if n != ncols:
        raise ValueError(f"determinant of non-square {n}x{ncols} matrix")
    if n == 0:
        return Fraction(1)
    scale = 1
    A = []
    for r in rows:
        m = 1
        for a in r:
            if isinstance(a, Fraction) and a.denominator != 1:
                m = lcm(m, a.denominator)
        scale *= m
        A.append([int(a * m) for a in r])
    return Fraction(det_int(A), scale)


def det_int(A: list[list[int]]) -> int:
    """Bareiss determinant of an integer matrix (the input is copied)."""
    A = [list(r) for r in A]
    n = len(A)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = A[k]
        p = pk[k]
        for i in range(k + 1, n):
            row = A[i]
            f = row[k]
            for j in range(k + 1, n):
                row[j] = (p * row[j] - f * pk[j]) // prev
        prev = p
    return sign * A[n - 1][n - 1]


def rref(M) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q and the pivot columns."""
    rows, ncols = _entries(M)
    A = [[Fraction(a) for a in r] for r in rows]
    pivots: list[int] = []
    r = 0
    m = len(A)
    for c in range(ncols):
        if r == m:
            break
        piv = None
        for i in range(r, m):
            if A[i][c]:
                piv = i
                break
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        pr = A[r]
        inv = 1 / pr[c]
        if inv != 1:
            for j in range(c, ncols):
                if pr[j]:
                    pr[j] *= inv
        nzc = [j for j in range(c + 1, ncols) if pr[j]]
        for i in range(m):
            if i == r:
                continue
            row = A[i]
            f = row[c]
            if f:
                row[c] = Fraction(0)
                for j in nzc:
                    row[j] -= f * pr[j]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def nullspace_basis(M) -> list[list[Fraction]]:
    """Canonical kernel basis: one vector per free column (increasing), equal
    to 1 on that column, 0 on the other free columns."""
    _, ncols = _entries(M)
    R, pivots = rref(M)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(R, pivots):
            if row[f]:
                v[pc] = -row[f]
        basis.append(v)
    return basis


def nullity(M, prime: int | None = None) -> int:
    _, ncols = _entries(M)
    return ncols - rank(M, prime)
