"""Toric ideal of a lattice polygon by binomial Buchberger plus elimination.

The configuration variables ``x_i`` correspond to the lattice points of Q in
lexicographic order.  The ideal

    (x_i - z * s^a_i * t^b_i  for each point)  +  (w * x_0 ... x_l - 1)

is Groebner-reduced in a block order that eliminates ``w, z, s, t``; what is
left in the ``x`` variables generates J.  Only pure difference binomials
``x^u - x^v`` ever occur, so S-polynomials and reductions stay binomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Sequence

from .polytope import DegeneratePolytopeError, LatticePolytope, Point, lattice_points

Exp = tuple[int, ...]
DEFAULT_POINT_CAP = 24


class PointCapExceeded(ValueError):
    pass


def grevlex_key(e: Exp):
    return (sum(e), tuple(-a for a in reversed(e)))


def block_key(n_elim: int) -> Callable[[Exp], tuple]:
    """Elimination order: grevlex on the first ``n_elim`` variables, ties
    broken by grevlex on the rest."""
    def key(e: Exp):
        return (grevlex_key(e[:n_elim]), grevlex_key(e[n_elim:]))
    return key


@dataclass(frozen=True)
class Binomial:
    """``x^lead - x^trail`` with disjoint supports."""

    lead: Exp
    trail: Exp

    @classmethod
    def make(cls, u: Exp, v: Exp, key=grevlex_key) -> "Binomial | None":
        g = tuple(min(a, b) for a, b in zip(u, v))
        u = tuple(a - c for a, c in zip(u, g))
        v = tuple(b - c for b, c in zip(v, g))
        if u == v:
            return None
        return cls(u, v) if key(u) > key(v) else cls(v, u)

    @property
    def degree(self) -> int:
        return max(sum(self.lead), sum(self.trail))

    def is_homogeneous(self) -> bool:
        return sum(self.lead) == sum(self.trail)

    def format(self, names: Sequence[str]) -> str:
        def mono(e):
            parts = []
            for n, k in zip(names, e):
                if k == 1:
                    parts.append(n)
                elif k:
                    parts.append(f"{n}^{k}")
            return "*".join(parts) or "1"
        return f"{mono(self.lead)} - {mono(self.trail)}"


def _divides(a: Exp, b: Exp) -> bool:
    return all(x <= y for x, y in zip(a, b))


def normal_form(m: Exp, basis: Sequence[Binomial]) -> Exp:
    """Reduce a monomial to its standard monomial modulo a binomial GB."""
    changed = True
    while changed:
        changed = False
        for g in basis:
            if _divides(g.lead, m):
                m = tuple(a - b + c for a, b, c in zip(m, g.lead, g.trail))
                changed = True
                break
    return m


def binomial_groebner(gens: Sequence[Binomial], key=grevlex_key) -> list[Binomial]:
    """Reduced Groebner basis of a pure-difference binomial ideal."""
    basis: list[Binomial] = []
    for g in gens:
        b = Binomial.make(g.lead, g.trail, key)
        if b is not None and b not in basis:
            basis.append(b)
    pairs = list(combinations(range(len(basis)), 2))
    while pairs:
        i, j = pairs.pop()
        f, g = basis[i], basis[j]
        if all(a == 0 or b == 0 for a, b in zip(f.lead, g.lead)):
            continue  # coprime leading terms
        lcm_ = tuple(max(a, b) for a, b in zip(f.lead, g.lead))
        u = tuple(l - a + b for l, a, b in zip(lcm_, f.lead, f.trail))
        v = tuple(l - a + b for l, a, b in zip(lcm_, g.lead, g.trail))
        u, v = normal_form(u, basis), normal_form(v, basis)
        s = Binomial.make(u, v, key)
        if s is None:
            continue
        basis.append(s)
        k = len(basis) - 1
        pairs.extend((m, k) for m in range(k))
    return _reduce(basis, key)


def _reduce(basis: list[Binomial], key) -> list[Binomial]:
    # drop elements whose lead is divisible by another lead, then interreduce
    minimal = []
    for i, g in enumerate(basis):
        if any(_divides(h.lead, g.lead) and (h.lead != g.lead or j < i)
               for j, h in enumerate(basis) if j != i):
            continue
        minimal.append(g)
    out = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        trail = normal_form(g.trail, others)
        b = Binomial.make(g.lead, trail, key)
        if b is not None:
            out.append(b)
    return sorted(out, key=lambda b: (key(b.lead), key(b.trail)))


def toric_generators(Q: LatticePolytope, cap: int = DEFAULT_POINT_CAP) -> list[Binomial]:
    """Reduced grevlex Groebner basis of the toric ideal of ``Q``'s lattice points."""
    if Q.degenerate:
        raise DegeneratePolytopeError("toric ideal needs a 2-dimensional polytope")
    pts = lattice_points(Q, 1)
    n = len(pts)
    if n > cap:
        raise PointCapExceeded(f"{n} lattice points exceed the cap of {cap}")
    # variables: w, z, s, t, x_0..x_{n-1}
    n_elim = 4
    key = block_key(n_elim)
    width = n_elim + n
    gens = []
    for i, (a, b) in enumerate(pts):
        x = [0] * width
        x[n_elim + i] = 1
        param = [0] * width
        param[1], param[2], param[3] = 1, a, b
        gens.append(Binomial(tuple(x), tuple(param)))
    inv = [1, 0, 0, 0] + [1] * n
    gens.append(Binomial(tuple(inv), (0,) * width))
    gb = binomial_groebner(gens, key)
    out = []
    for g in gb:
        if any(g.lead[:n_elim]) or any(g.trail[:n_elim]):
            continue
        b = Binomial.make(g.lead[n_elim:], g.trail[n_elim:], grevlex_key)
        if b is not None:
            out.append(b)
    return binomial_groebner(out, grevlex_key)


def is_in_ideal(b: Binomial, gens: Sequence[Binomial]) -> bool:
    """Membership of ``x^lead - x^trail`` given a Groebner basis."""
    return normal_form(b.lead, gens) == normal_form(b.trail, gens)


def point_dictionary(Q: LatticePolytope) -> dict[str, Point]:
    return {f"X_{i}": p for i, p in enumerate(lattice_points(Q, 1))}


def is_lattice_relation(b: Binomial, pts: Sequence[Point]) -> bool:
    def image(e):
        return (sum(k * p[0] for k, p in zip(e, pts)), sum(k * p[1] for k, p in zip(e, pts)), sum(e))
    return image(b.lead) == image(b.trail)


def binomial_from_points(lhs: Sequence[Point], rhs: Sequence[Point], Q: LatticePolytope) -> Binomial:
    """``prod x_p (p in lhs) - prod x_p (p in rhs)`` over Q's variables."""
    index = {p: i for i, p in enumerate(lattice_points(Q, 1))}

    def exp(ps):
        e = [0] * len(index)
        for p in ps:
            e[index[tuple(p)]] += 1
        return tuple(e)

    return Binomial(exp(lhs), exp(rhs))


def ideals_equal(A: Sequence[Binomial], B: Sequence[Binomial]) -> bool:
    """Equality of binomial ideals via mutual reduction against reduced GBs."""
    ga, gb = binomial_groebner(A), binomial_groebner(B)
    return all(is_in_ideal(b, ga) for b in gb) and all(is_in_ideal(a, gb) for a in ga)
