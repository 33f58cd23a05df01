"""Two-dimensional lattice polytopes: hulls, dilates, lattice points."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

from .arith import ParamPoly

Point = tuple[int, int]


class DegeneratePolytopeError(ValueError):
    """The polytope is not two-dimensional."""


def _cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: Iterable[Point]) -> list[Point]:
    """Andrew's monotone chain; counterclockwise, collinear points dropped."""
    pts = sorted(set((int(x), int(y)) for x, y in points))
    if len(pts) <= 2:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 and hull[0] == hull[1]:
        return hull[:1]
    return hull


@dataclass(frozen=True)
class LatticePolytope:
    """Convex lattice polygon given by its counterclockwise minimal vertex list.

    Lower-dimensional hulls (a point or a segment) are representable and carry
    ``degenerate=True``; most operations refuse them.
    """

    vertices: tuple[Point, ...]
    degenerate: bool = False

    @classmethod
    def from_points(cls, points: Iterable[Point]) -> "LatticePolytope":
        hull = convex_hull(points)
        if not hull:
            raise ValueError("empty point set")
        return cls(_canonical_start(hull), degenerate=len(hull) < 3)

    @classmethod
    def from_json(cls, text_or_obj) -> "LatticePolytope":
        obj = json.loads(text_or_obj) if isinstance(text_or_obj, str) else text_or_obj
        verts = obj["vertices"] if isinstance(obj, dict) else obj
        for v in verts:
            if len(v) != 2 or not all(isinstance(c, int) and not isinstance(c, bool) for c in v):
                raise ValueError(f"polytope vertices must be integer pairs, got {v!r}")
        return cls.from_points(tuple(v) for v in verts)

    def to_json(self) -> dict:
        return {"vertices": [list(v) for v in self.vertices]}

    def scaled(self, n: int) -> "LatticePolytope":
        return LatticePolytope(tuple((n * x, n * y) for x, y in self.vertices), self.degenerate)

    def translated(self, v: Point) -> "LatticePolytope":
        return LatticePolytope(tuple((x + v[0], y + v[1]) for x, y in self.vertices), self.degenerate)

    def twice_area(self) -> int:
        vs = self.vertices
        n = len(vs)
        return abs(sum(vs[i][0] * vs[(i + 1) % n][1] - vs[(i + 1) % n][0] * vs[i][1] for i in range(n)))

    def boundary_points(self) -> int:
        vs = self.vertices
        n = len(vs)
        if n == 1:
            return 1
        edges = [(vs[(i + 1) % n][0] - vs[i][0], vs[(i + 1) % n][1] - vs[i][1]) for i in range(n)]
        if n == 2:
            return gcd(*edges[0]) + 1
        return sum(gcd(abs(dx), abs(dy)) for dx, dy in edges)

    def ehrhart(self, n: int) -> int:
        """Lattice-point count of the n-th dilate from Pick's theorem."""
        if self.degenerate:
            if n == 0 or len(self.vertices) == 1:
                return 1
            return n * (self.boundary_points() - 1) + 1
        a2 = self.twice_area()
        b = self.boundary_points()
        return (a2 * n * n + b * n) // 2 + 1

    def contains(self, p: Point) -> bool:
        vs = self.vertices
        if len(vs) == 1:
            return tuple(p) == vs[0]
        if len(vs) == 2:
            a, b = vs
            return (_cross(a, b, p) == 0
                    and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
                    and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))
        n = len(vs)
        return all(_cross(vs[i], vs[(i + 1) % n], p) >= 0 for i in range(n))

    def __str__(self):
        return "conv{" + ", ".join(f"({x},{y})" for x, y in self.vertices) + "}"


def _canonical_start(hull: list[Point]) -> tuple[Point, ...]:
    k = hull.index(min(hull))
    return tuple(hull[k:] + hull[:k])


def normalization_shift(fs: Sequence[ParamPoly]) -> Point:
    """Translation making every exponent nonnegative with minimum zero per axis."""
    support = [e for f in fs for e in f.terms]
    if not support:
        raise ValueError("all parametrizing polynomials are zero")
    return (-min(a for a, _ in support), -min(b for _, b in support))


def normalize_params(fs: Sequence[ParamPoly]) -> tuple[list[ParamPoly], Point]:
    shift = normalization_shift(fs)
    return [f.shifted(shift) for f in fs], shift


def newton_polytope(fs: Sequence[ParamPoly]) -> LatticePolytope:
    """Convex hull of the union of supports, after the normalization shift."""
    shift = normalization_shift(fs)
    pts = [(a + shift[0], b + shift[1]) for f in fs for (a, b) in f.terms]
    return LatticePolytope.from_points(pts)


def lattice_points(P: LatticePolytope, n: int = 1) -> list[Point]:
    """Integer points of ``n * P`` in lexicographic order (row sweep over x)."""
    if n < 0:
        return []
    if n == 0:
        return [(0, 0)]
    vs = [(n * x, n * y) for x, y in P.vertices]
    if len(vs) == 1:
        return [vs[0]]
    xs = [v[0] for v in vs]
    out = []
    edges = [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]
    for x in range(min(xs), max(xs) + 1):
        lo = None
        hi = None
        for (x0, y0), (x1, y1) in edges:
            if x0 == x1:
                if x == x0:
                    cand = [(min(y0, y1), max(y0, y1))]
                else:
                    continue
            elif min(x0, x1) <= x <= max(x0, x1):
                # y = y0 + (x - x0) * (y1 - y0) / (x1 - x0), exact bounds
                num = y0 * (x1 - x0) + (x - x0) * (y1 - y0)
                den = x1 - x0
                if den < 0:
                    num, den = -num, -den
                cand = [(-((-num) // den), num // den)]
            else:
                continue
            for c_lo, c_hi in cand:
                lo = c_lo if lo is None else min(lo, c_lo)
                hi = c_hi if hi is None else max(hi, c_hi)
        if lo is None:
            continue
        out.extend((x, y) for y in range(lo, hi + 1))
    return out


def homothety_factor(P: LatticePolytope) -> tuple[int, LatticePolytope]:
    """Largest k with P a lattice translate of k*Q; Q is returned translated so
    that its vertex coordinates have minimum zero when P's do."""
    if P.degenerate:
        raise DegeneratePolytopeError("homothety factor needs a 2-dimensional polytope")
    v0 = P.vertices[0]
    diffs = [c for v in P.vertices[1:] for c in (v[0] - v0[0], v[1] - v0[1])]
    k = reduce(gcd, (abs(c) for c in diffs), 0)
    base = (v0[0] - v0[0] % k, v0[1] - v0[1] % k)
    Q = LatticePolytope(tuple(((x - v0[0]) // k + base[0] // k, (y - v0[1]) // k + base[1] // k)
                              for x, y in P.vertices))
    return k, Q


def contains_scaled(P: LatticePolytope, Q: LatticePolytope, d: int) -> bool:
    """True iff every vertex of P lies in d*Q."""
    dQ = Q.scaled(d)
    return all(dQ.contains(v) for v in P.vertices)


def minimal_dilation(P: LatticePolytope, Q: LatticePolytope, cap: int = 64) -> int:
    """Smallest d >= 1 with P inside d*Q."""
    for d in range(1, cap + 1):
        if contains_scaled(P, Q, d):
            return d
    raise ValueError(f"{P} is not contained in d*{Q} for any d <= {cap}")


def unit_simplex() -> LatticePolytope:
    return LatticePolytope(((0, 0), (1, 0), (0, 1)))


def rectangle(a: int, b: int) -> LatticePolytope:
    return LatticePolytope(((0, 0), (a, 0), (a, b), (0, b)))
