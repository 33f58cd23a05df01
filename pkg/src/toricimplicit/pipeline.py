"""Job description and the end-to-end pipeline used by the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .arith import ParamPoly, PolySyntaxError, parse_param_poly, session_prime
from .complex import ComplexContext, NuReport, expected_degree, find_nu0
from .implicit import ImplicitResult, implicit_equation
from .polytope import (DegeneratePolytopeError, LatticePolytope, Point, contains_scaled, minimal_dilation,
                       newton_polytope, normalize_params, rectangle, unit_simplex)
from .repmatrix import RepMatrix, build_rep_matrix
from .toric import ContainmentError, ToricAlgebra, reparametrize

MODELS = ("toric", "dense-homogeneous", "bihomogeneous")


class InputError(ValueError):
    """Malformed or inconsistent job description (exit code 1)."""


@dataclass
class JobSpec:
    f: Sequence[str]
    polytope: LatticePolytope | None = None
    d: int | None = None
    seed: int = 42
    field: str | int = "rational"  # "rational", "prime", or an explicit prime
    nu_cap: int | None = None
    model: str = "toric"
    bidegree: tuple[int, int] | None = None

    @classmethod
    def from_json(cls, obj) -> "JobSpec":
        if isinstance(obj, (str, Path)):
            obj = json.loads(Path(obj).read_text())
        try:
            f = obj["f"]
        except (KeyError, TypeError):
            raise InputError('job file needs an "f" list of four polynomials') from None
        poly = obj.get("polytope")
        fld = obj.get("field", "rational")
        if isinstance(fld, dict):
            fld = int(fld["prime"])
        bideg = obj.get("bidegree")
        return cls(
            f=list(f),
            polytope=LatticePolytope.from_json(poly) if poly is not None else None,
            d=obj.get("d"),
            seed=int(obj.get("seed", 42)),
            field=fld,
            nu_cap=obj.get("nu_cap"),
            model=obj.get("model", "toric"),
            bidegree=tuple(bideg) if bideg else None,
        )

    @property
    def prime(self) -> int | None:
        if self.field == "rational":
            return None
        if self.field == "prime":
            return session_prime(self.seed)
        return int(self.field)


@dataclass
class Setup:
    job: JobSpec
    fs: list[ParamPoly]  # normalized
    shift: Point
    newton: LatticePolytope
    Q: LatticePolytope
    d: int
    _ctx: ComplexContext | None = field(default=None, repr=False)
    _nu: NuReport | None = field(default=None, repr=False)
    _M: RepMatrix | None = field(default=None, repr=False)

    @property
    def ctx(self) -> ComplexContext:
        if self._ctx is None:
            self._ctx = ComplexContext(ToricAlgebra(self.Q), reparametrize(self.fs, self.Q, self.d),
                                       prime=self.job.prime)
        return self._ctx

    @property
    def nu_report(self) -> NuReport:
        if self._nu is None:
            self._nu = find_nu0(self.ctx, self.job.nu_cap)
        return self._nu

    @property
    def nu0(self) -> int:
        return self.nu_report.nu0

    def expected_degree(self) -> int:
        return expected_degree(self.ctx, self.nu0)

    @property
    def rep_matrix(self) -> RepMatrix:
        if self._M is None:
            self._M = build_rep_matrix(self.ctx, self.nu0)
        return self._M

    def implicit(self) -> ImplicitResult:
        return implicit_equation(self.rep_matrix, seed=self.job.seed, fs=self.fs)


def model_polytope(model: str, newton: LatticePolytope, bidegree=None) -> LatticePolytope:
    if model == "dense-homogeneous":
        return unit_simplex()
    if model == "bihomogeneous":
        if not bidegree:
            raise InputError("the bihomogeneous model needs a bidegree (e1, e2)")
        return rectangle(*bidegree)
    return newton


def prepare(job: JobSpec) -> Setup:
    if len(job.f) != 4:
        raise InputError(f"need exactly four polynomials, got {len(job.f)}")
    if job.model not in MODELS:
        raise InputError(f"unknown model {job.model!r}; choose from {', '.join(MODELS)}")
    try:
        raw = [parse_param_poly(t) for t in job.f]
    except PolySyntaxError as exc:
        raise InputError(str(exc)) from None
    if not any(f.terms for f in raw):
        raise InputError("all four polynomials are zero")
    fs, shift = normalize_params(raw)
    newton = newton_polytope(fs)
    if newton.degenerate:
        raise DegeneratePolytopeError(f"Newton polytope {newton} is not 2-dimensional; "
                                      "the method needs a 2-dimensional toric variety")
    if job.d is not None and job.d < 1:
        raise InputError("d must be a positive integer")
    if job.polytope is not None:
        Q = job.polytope
        if Q.degenerate:
            raise DegeneratePolytopeError(f"polytope {Q} is not 2-dimensional")
    else:
        Q = model_polytope(job.model, newton, job.bidegree)
    if job.d is not None:
        d = job.d
        if not contains_scaled(newton, Q, d):
            raise ContainmentError(f"Newton polytope {newton} is not contained in {d}*{Q}")
    elif job.polytope is None and job.model == "toric":
        d = 1
    else:
        try:
            d = minimal_dilation(newton, Q)
        except ValueError as exc:
            raise ContainmentError(str(exc)) from None
    return Setup(job, fs, shift, newton, Q, d)
