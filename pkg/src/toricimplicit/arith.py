"""Exact scalars and sparse polynomials.

Coefficients are :class:`fractions.Fraction` throughout (always reduced, with a
positive denominator).  Two polynomial flavours are used by the pipeline:

* :class:`ParamPoly` in the parameters ``s, t``;
* :class:`TPoly` in the target coordinates ``T1..T4``.

Both are immutable maps from exponent tuples to nonzero coefficients.
"""

from __future__ import annotations

import random
import re
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

Rational = Fraction


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def rational_str(x: Fraction) -> str:
    """Serialize as ``"num/den"`` (or ``"num"`` when the denominator is 1)."""
    x = as_rational(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def random_rational(rng: random.Random, bound: int = 10**4) -> Fraction:
    return Fraction(rng.randint(1, bound), rng.randint(1, bound))


# ---------------------------------------------------------------------------
# prime field


def _is_prime(n: int) -> bool:
    # deterministic Miller-Rabin for n < 3.3e9
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13):
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def session_prime(seed: int = 42) -> int:
    """A random prime in [2**30, 2**31), reproducible from ``seed``."""
    rng = random.Random(seed)
    while True:
        n = rng.randrange(2**30, 2**31) | 1
        if _is_prime(n):
            return n


class PrimeScalar:
    """Residue class modulo a fixed prime."""

    __slots__ = ("residue", "modulus")

    def __init__(self, value, modulus: int):
        if isinstance(value, Fraction):
            den = value.denominator % modulus
            if den == 0:
                raise ZeroDivisionError("denominator not invertible mod p")
            value = value.numerator * pow(den, -1, modulus)
        self.residue = int(value) % modulus
        self.modulus = modulus

    def _coerce(self, other) -> int:
        if isinstance(other, PrimeScalar):
            if other.modulus != self.modulus:
                raise ValueError("mixed moduli")
            return other.residue
        return PrimeScalar(as_rational(other), self.modulus).residue

    def __add__(self, other):
        return PrimeScalar(self.residue + self._coerce(other), self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        return PrimeScalar(self.residue - self._coerce(other), self.modulus)

    def __rsub__(self, other):
        return PrimeScalar(self._coerce(other) - self.residue, self.modulus)

    def __mul__(self, other):
        return PrimeScalar(self.residue * self._coerce(other), self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return PrimeScalar(-self.residue, self.modulus)

    def inverse(self) -> "PrimeScalar":
        if self.residue == 0:
            raise ZeroDivisionError("zero has no inverse")
        return PrimeScalar(pow(self.residue, -1, self.modulus), self.modulus)

    def __truediv__(self, other):
        o = PrimeScalar(self._coerce(other), self.modulus)
        return self * o.inverse()

    def __eq__(self, other):
        try:
            return self.residue == self._coerce(other)
        except ZeroDivisionError:
            return False

    def __hash__(self):
        return hash((self.residue, self.modulus))

    def __repr__(self):
        return f"PrimeScalar({self.residue}, {self.modulus})"


# ---------------------------------------------------------------------------
# polynomials


class Poly:
    """Sparse polynomial with Fraction coefficients in a fixed variable list."""

    variables: tuple[str, ...] = ()

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, ...], object] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple[int, ...], Fraction] = {}
        n = len(self.variables)
        for exp, c in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != n:
                raise ValueError(f"expected {n} exponents, got {exp}")
            c = as_rational(c)
            if c:
                acc[exp] = acc.get(exp, 0) + c
        self.terms = {e: acc[e] for e in sorted(acc) if acc[e] != 0}

    @classmethod
    def _raw(cls, terms: dict) -> "Poly":
        p = object.__new__(cls)
        p.terms = {e: terms[e] for e in sorted(terms) if terms[e] != 0}
        return p

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls({(0,) * len(cls.variables): c})

    @classmethod
    def monomial(cls, exp, c=1) -> "Poly":
        return cls({tuple(exp): c})

    @classmethod
    def gen(cls, i: int) -> "Poly":
        exp = [0] * len(cls.variables)
        exp[i] = 1
        return cls({tuple(exp): 1})

    # -- basic protocol
    def __eq__(self, other):
        if isinstance(other, Poly):
            return type(self) is type(other) and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((type(self).__name__, tuple(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def coeff(self, exp) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    # -- arithmetic
    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            if type(other) is not type(self):
                raise TypeError("mixing polynomial rings")
            return other
        return type(self).constant(other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return type(self)._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return type(self)._raw({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = as_rational(other)
            return type(self)._raw({e: c * v for e, v in self.terms.items()})
        other = self._lift(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return type(self)._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = type(self).constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- structure
    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def homogeneous_degree(self) -> int | None:
        """Common degree of all terms, or None if inhomogeneous (or zero)."""
        degs = {sum(e) for e in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self) -> bool:
        return self.homogeneous_degree() is not None

    def leading_exponent(self):
        """Lexicographically largest exponent."""
        return max(self.terms) if self.terms else None

    def leading_coefficient(self) -> Fraction:
        return self.terms[max(self.terms)] if self.terms else Fraction(0)

    def __call__(self, *point):
        return self.evaluate(point)

    def evaluate(self, point: Sequence) -> Fraction:
        point = [as_rational(x) for x in point]
        n = len(self.variables)
        if len(point) != n:
            raise ValueError(f"expected {n} coordinates")
        # cache powers per variable
        pw: list[dict[int, Fraction]] = [dict() for _ in range(n)]
        total = Fraction(0)
        for exp, c in self.terms.items():
            v = c
            for i, k in enumerate(exp):
                if k:
                    p = pw[i].get(k)
                    if p is None:
                        p = pw[i][k] = point[i] ** k
                    v *= p
            total += v
        return total

    def content(self) -> Fraction:
        """Positive rational c with self/c primitive with integer coefficients."""
        if not self.terms:
            return Fraction(0)
        nums = [c.numerator for c in self.terms.values()]
        dens = [c.denominator for c in self.terms.values()]
        return Fraction(reduce(gcd, nums), reduce(lcm, dens)).__abs__()

    def normalized(self) -> "Poly":
        """Primitive integer form, positive coefficient on the lex-largest term."""
        if not self.terms:
            return self
        c = self.content()
        if self.leading_coefficient() < 0:
            c = -c
        return self * (1 / c)

    def divmod(self, divisor: "Poly") -> tuple["Poly", "Poly"]:
        """Multivariate division by a single polynomial under lex order."""
        if not divisor.terms:
            raise ZeroDivisionError("division by zero polynomial")
        lead = max(divisor.terms)
        lc = divisor.terms[lead]
        rem = dict(self.terms)
        quot: dict = {}
        remainder: dict = {}
        while rem:
            e = max(rem)
            c = rem.pop(e)
            if all(a >= b for a, b in zip(e, lead)):
                qe = tuple(a - b for a, b in zip(e, lead))
                qc = c / lc
                quot[qe] = qc
                for de, dc in divisor.terms.items():
                    if de == lead:
                        continue
                    te = tuple(a + b for a, b in zip(qe, de))
                    v = rem.get(te, 0) - qc * dc
                    if v:
                        rem[te] = v
                    else:
                        rem.pop(te, None)
            else:
                remainder[e] = c
        return type(self)._raw(quot), type(self)._raw(remainder)

    def exact_div(self, divisor: "Poly") -> "Poly | None":
        q, r = self.divmod(divisor)
        return None if r.terms else q

    # -- text
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"{type(self).__name__}({format_poly(self)!r})"


class ParamPoly(Poly):
    """Polynomial in the parameters ``s, t`` (exponents may be negative)."""

    variables = ("s", "t")
    __slots__ = ()

    def support(self) -> list[tuple[int, int]]:
        return list(self.terms)

    def shifted(self, shift: tuple[int, int]) -> "ParamPoly":
        """Multiply by the monomial ``s^shift[0] * t^shift[1]``."""
        return ParamPoly._raw({(a + shift[0], b + shift[1]): c for (a, b), c in self.terms.items()})


class TPoly(Poly):
    """Polynomial in the target coordinates ``T1..T4``."""

    variables = ("T1", "T2", "T3", "T4")
    __slots__ = ()

    @property
    def degree(self) -> int | None:
        return self.homogeneous_degree()

    def linear_substitute(self, images: Sequence["TPoly"]) -> "TPoly":
        """Compose with four homogeneous polynomials ``Ti -> images[i]``."""
        return _compose(self, images, TPoly)


def _compose(F: Poly, images: Sequence[Poly], target: type) -> Poly:
    if len(images) != len(F.variables):
        raise ValueError("wrong number of substitution images")
    cache: list[dict[int, Poly]] = [{0: target.constant(1), 1: img} for img in images]

    def power(i: int, k: int) -> Poly:
        p = cache[i].get(k)
        if p is None:
            p = cache[i][k] = power(i, k - 1) * images[i]
        return p

    out: dict = {}
    for exp, c in F.terms.items():
        term = target.constant(c)
        for i, k in enumerate(exp):
            if k:
                term = term * power(i, k)
        for e, v in term.terms.items():
            out[e] = out.get(e, 0) + v
    return target._raw(out)


def eval_param_poly(f: ParamPoly, point: Sequence) -> Fraction:
    return f.evaluate(point)


def substitute_params(F: TPoly, fs: Sequence[ParamPoly]) -> ParamPoly:
    """Expand ``F(f1(s,t), ..., f4(s,t))`` exactly."""
    if len(fs) != 4:
        raise ValueError("need four parametrizing polynomials")
    if F.terms and not F.is_homogeneous():
        raise ValueError("F must be homogeneous")
    return _compose(F, list(fs), ParamPoly)


# ---------------------------------------------------------------------------
# text format


def _format_monomial(exp, names) -> str:
    parts = []
    for name, k in zip(names, exp):
        if k == 1:
            parts.append(name)
        elif k != 0:
            parts.append(f"{name}^{k}" if k > 0 else f"{name}^({k})")
    return "*".join(parts)


def format_poly(p: Poly) -> str:
    if not p.terms:
        return "0"
    out = []
    for exp, c in sorted(p.terms.items(), reverse=True):
        mono = _format_monomial(exp, p.variables)
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{rational_str(mag)}*{mono}"
        else:
            body = rational_str(mag)
        sign = "-" if c < 0 else "+"
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


class PolySyntaxError(ValueError):
    """Raised on malformed polynomial text; carries the offending offset."""

    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.pos = pos
        self.text = text


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<var>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))"
)


def _tokenize(text: str):
    pos = 0
    tokens = []
    text_len = len(text)
    while pos < text_len:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolySyntaxError("unexpected character", text, pos)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def parse_poly(text: str, cls: type = None) -> Poly:
    """Parse a signed sum of monomial terms over ``cls.variables``.

    A term is an optional rational coefficient followed by ``*``-separated
    variable powers, e.g. ``-3/2*s^2*t``.  Exponents must be integers; a
    negative exponent is written ``s^-1`` or ``s^(-1)``.
    """
    cls = cls or ParamPoly
    names = {v: i for i, v in enumerate(cls.variables)}
    tokens = _tokenize(text)
    i = 0

    def peek():
        return tokens[i]

    def take(kind=None, value=None):
        nonlocal i
        tok = tokens[i]
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind
            raise PolySyntaxError(f"expected {want!r}", text, tok[2])
        i += 1
        return tok

    def integer(signed: bool) -> int:
        sign = 1
        paren = False
        if peek() == ("op", "(", peek()[2]):
            take("op", "(")
            paren = True
        if signed and peek()[0] == "op" and peek()[1] in "+-":
            sign = -1 if take()[1] == "-" else 1
        tok = peek()
        if tok[0] != "num":
            raise PolySyntaxError("exponent must be an integer", text, tok[2])
        take()
        if peek()[0] == "op" and peek()[1] == "/":
            raise PolySyntaxError("exponent must be an integer", text, peek()[2])
        if paren:
            take("op", ")")
        return sign * int(tok[1])

    terms: list = []
    first = True
    while True:
        tok = peek()
        if tok[0] == "end":
            if first:
                raise PolySyntaxError("empty polynomial", text, tok[2])
            break
        sign = 1
        if tok[0] == "op" and tok[1] in "+-":
            take()
            sign = -1 if tok[1] == "-" else 1
        elif not first:
            raise PolySyntaxError("expected '+' or '-'", text, tok[2])
        first = False
        coeff = Fraction(1)
        exp = [0] * len(names)
        seen_factor = False
        while True:
            tok = peek()
            if tok[0] == "num":
                take()
                val = Fraction(int(tok[1]))
                if peek()[0] == "op" and peek()[1] == "/":
                    take()
                    den = take("num")
                    if int(den[1]) == 0:
                        raise PolySyntaxError("zero denominator", text, den[2])
                    val /= int(den[1])
                coeff *= val
            elif tok[0] == "var":
                if tok[1] not in names:
                    raise PolySyntaxError(f"unknown variable {tok[1]!r}", text, tok[2])
                take()
                k = 1
                if peek()[0] == "op" and peek()[1] == "^":
                    take()
                    k = integer(signed=True)
                exp[names[tok[1]]] += k
            else:
                raise PolySyntaxError("expected coefficient or variable", text, tok[2])
            seen_factor = True
            if peek()[0] == "op" and peek()[1] == "*":
                take()
                continue
            if peek()[0] == "var":  # juxtaposition "s t"
                continue
            break
        assert seen_factor
        terms.append((tuple(exp), sign * coeff))
    return cls(terms)


def parse_param_poly(text: str) -> ParamPoly:
    return parse_poly(text, ParamPoly)


def parse_tpoly(text: str) -> TPoly:
    return parse_poly(text, TPoly)
