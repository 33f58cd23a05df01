"""Implicitization of parametrized surfaces in P^3 via toric representation matrices."""

from .arith import ParamPoly, TPoly, format_poly, parse_param_poly, parse_tpoly, substitute_params
from .implicit import ImplicitResult, implicit_equation, interpolation_oracle
from .pipeline import JobSpec, prepare
from .polytope import LatticePolytope, newton_polytope
from .repmatrix import RepMatrix, build_rep_matrix, rank_at

__all__ = [
    "ParamPoly", "TPoly", "format_poly", "parse_param_poly", "parse_tpoly", "substitute_params",
    "ImplicitResult", "implicit_equation", "interpolation_oracle", "JobSpec", "prepare",
    "LatticePolytope", "newton_polytope", "RepMatrix", "build_rep_matrix", "rank_at",
]
