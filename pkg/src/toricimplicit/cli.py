"""Command-line front end.

Every subcommand builds a :class:`JobSpec`, runs the pipeline up to the stage
it needs and prints a report (JSON by default).  Exit codes: 0 on success,
1 on bad input, 2 when the mathematics fails (no nu0 below the cap, constant
gcd of minors, ...).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .arith import PolySyntaxError, format_poly, parse_tpoly, rational_str
from .complex import NuSearchError
from .implicit import ImplicitizationError, tpoly_from_json, tpoly_to_json, verify_implicit
from .pipeline import MODELS, InputError, JobSpec, Setup, prepare
from .polytope import DegeneratePolytopeError, LatticePolytope, homothety_factor, lattice_points
from .repmatrix import DegenerateParametrizationError, P3Point, rank_at
from .toric import ContainmentError
from .toric_ideal import PointCapExceeded, point_dictionary, toric_generators

COMMANDS = ("polytope", "ideal", "complex", "repmat", "implicit", "member", "verify")

# what each stage computes, used to label errors
STAGES = {
    "input": "parsing the job and the four polynomials",
    "polytope": "Newton polytope and the containment N(f) in d*Q",
    "ideal": "toric ideal J by elimination",
    "complex": "search for nu0 where the Euler characteristic of the cycle strand vanishes",
    "repmat": "linear syzygies in degree nu0+d as a matrix of linear forms",
    "implicit": "gcd of maximal minors of the representation matrix",
    "member": "rank of the representation matrix at a point",
    "verify": "substitution of the parametrization into F",
}

MATH_ERRORS = (NuSearchError, ImplicitizationError, DegenerateParametrizationError, PointCapExceeded)
INPUT_ERRORS = (InputError, PolySyntaxError, ContainmentError, DegeneratePolytopeError,
                json.JSONDecodeError, OSError, KeyError, ValueError)


class StageError(Exception):
    def __init__(self, stage: str, exc: Exception, code: int):
        super().__init__(f"[{stage}] {STAGES[stage]}: {exc}")
        self.code = code


def _stage(stage, fn, *args):
    try:
        return fn(*args)
    except MATH_ERRORS as exc:
        raise StageError(stage, exc, 2) from exc
    except (ContainmentError, DegeneratePolytopeError) as exc:
        raise StageError("polytope", exc, 1) from exc
    except INPUT_ERRORS as exc:
        raise StageError(stage, exc, 1) from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_argument_group("input")
    src.add_argument("--input", metavar="FILE", help="JSON job file")
    for i in range(1, 5):
        src.add_argument(f"--f{i}", metavar="POLY", help=f"f{i}(s,t), e.g. 's*t^6+2'")
    common.add_argument("--polytope", metavar="FILE", help='JSON {"vertices": [[x,y],...]} for Q')
    common.add_argument("--d", type=int, help="degree d with N(f) inside d*Q")
    common.add_argument("--seed", type=int, help="random seed (default 42)")
    common.add_argument("--field", choices=("rational", "prime"),
                        help="rank computations over Q or modulo a seeded prime")
    common.add_argument("--model", choices=MODELS, help="polytope model (default toric)")
    common.add_argument("--bidegree", type=int, nargs=2, metavar=("E1", "E2"),
                        help="rectangle for the bihomogeneous model")
    common.add_argument("--nu-cap", type=int, help="largest nu tried in the nu0 search")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json")
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text")

    parser = argparse.ArgumentParser(
        prog="toricimplicit",
        description="Implicitize a parametrized surface in P^3 with toric representation matrices.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in [
        ("polytope", "Newton polytope, Q, d and the lattice points of Q"),
        ("ideal", "toric ideal of Q"),
        ("complex", "nu0 search table and expected degree"),
        ("repmat", "representation matrix in degree nu0"),
        ("implicit", "implicit equation from the maximal minors"),
    ]:
        sub.add_parser(name, parents=[common], help=help_)
    m = sub.add_parser("member", parents=[common], help="rank test at a point of P^3")
    m.add_argument("point", nargs=4, metavar="T", help="rational coordinate, e.g. 1/2")
    m.add_argument("--equation", metavar="FILE", help="implicit report used to label the result")
    v = sub.add_parser("verify", parents=[common], help="check F(f1,...,f4) = 0")
    v.add_argument("--equation", metavar="FILE", help="implicit report to check (else recomputed)")
    return parser


def job_from_args(args) -> JobSpec:
    inline = [getattr(args, f"f{i}") for i in range(1, 5)]
    if args.input:
        if any(inline):
            raise InputError("use either --input or --f1..--f4, not both")
        job = JobSpec.from_json(Path(args.input))
    else:
        if not all(inline):
            raise InputError("give --input FILE or all of --f1 --f2 --f3 --f4")
        job = JobSpec(f=inline)
    if args.polytope:
        job.polytope = LatticePolytope.from_json(Path(args.polytope).read_text())
    for attr in ("d", "seed", "field", "model", "nu_cap"):
        val = getattr(args, attr)
        if val is not None:
            setattr(job, attr, val)
    if args.bidegree:
        job.bidegree = tuple(args.bidegree)
    if job.model == "bihomogeneous" and not job.bidegree and job.polytope is None:
        raise InputError("--model bihomogeneous needs --bidegree E1 E2")
    return job


def _setup_json(S: Setup) -> dict:
    return {
        "f": [format_poly(f) for f in S.fs],
        "shift": list(S.shift),
        "newton": S.newton.to_json()["vertices"],
        "Q": S.Q.to_json()["vertices"],
        "d": S.d,
    }


def _load_equation(path: str):
    obj = json.loads(Path(path).read_text())
    if isinstance(obj, dict) and "implicit" in obj:
        obj = obj["implicit"]
    if isinstance(obj, str):
        return parse_tpoly(obj)
    return tpoly_from_json(obj)


def run(command: str, job: JobSpec, extra: dict | None = None) -> dict:
    """Run one subcommand and return its report."""
    extra = extra or {}
    S = _stage("input", prepare, job)
    field = "rational" if job.prime is None else {"prime": job.prime, "probabilistic": True}
    report = {"command": command, "seed": job.seed, "model": job.model, "field": field,
              "setup": _setup_json(S)}
    if command == "polytope":
        k, base = _stage("polytope", homothety_factor, S.Q)
        report["homothety"] = {"k": k, "base": base.to_json()["vertices"]}
        report["lattice_points"] = [list(p) for p in lattice_points(S.Q, 1)]
        report["contained"] = True
        return report
    if command == "ideal":
        gens = _stage("ideal", toric_generators, S.Q)
        names = list(point_dictionary(S.Q))
        report["variables"] = {n: list(p) for n, p in point_dictionary(S.Q).items()}
        report["generators"] = [b.format(names) for b in gens]
        return report
    nu = _stage("complex", lambda: S.nu_report)
    report["complex"] = nu.to_json()
    report["expected_degree"] = _stage("complex", S.expected_degree)
    if command == "complex":
        return report
    M = _stage("repmat", lambda: S.rep_matrix)
    report["shape"] = list(M.shape)
    if command == "repmat":
        report["matrix"] = M.to_json()
        return report
    if command == "member":
        p = _stage("member", P3Point, [Fraction(c) for c in extra["point"]])
        rk, drops = _stage("member", rank_at, M, p)
        report["point"] = [rational_str(c) for c in p]
        report["rank"] = rk
        report["rows"] = M.shape[0]
        report["is_member"] = drops
        if extra.get("equation"):
            F = _stage("member", _load_equation, extra["equation"])
            on_F = F.evaluate(p.coords) == 0
            report["label"] = ("on surface" if on_F else "on the extraneous locus") if drops \
                else "off surface"
        else:
            report["label"] = "on surface or on the extraneous locus" if drops else "off surface"
        return report
    if command == "verify" and extra.get("equation"):
        F = _stage("verify", _load_equation, extra["equation"])
        report["F"] = tpoly_to_json(F)
        report["verified"] = _stage("verify", verify_implicit, F, S.fs)
        return report
    res = _stage("implicit", S.implicit)
    if command == "verify":
        report["F"] = tpoly_to_json(res.F)
        report["verified"] = res.verified
        return report
    report["implicit"] = res.to_json()
    report["F_text"] = format_poly(res.F)
    return report


def render_text(report: dict) -> str:
    lines = [f"{report['command']}  (model {report['model']}, seed {report['seed']})"]
    s = report["setup"]
    lines.append("f = (" + ", ".join(s["f"]) + ")")
    lines.append(f"N(f) = {s['newton']}   Q = {s['Q']}   d = {s['d']}")
    if "homothety" in report:
        h = report["homothety"]
        lines.append(f"Q = {h['k']} * {h['base']} up to translation")
        lines.append(f"{len(report['lattice_points'])} lattice points: {report['lattice_points']}")
    if "generators" in report:
        for n, p in report["variables"].items():
            lines.append(f"  {n} <-> {tuple(p)}")
        lines.append("J = (" + ", ".join(report["generators"]) + ")")
    if "complex" in report:
        c = report["complex"]
        lines.append("nu  dim A  z1  z2  z3  chi")
        for r in c["table"]:
            lines.append(f"{r['nu']:>2} {r['dim_A_nu']:>6} {r['z1']:>3} {r['z2']:>3} {r['z3']:>3} {r['chi']:>4}")
        lines.append(f"nu0 = {c['nu0']}, expected degree = {report['expected_degree']}")
    if "shape" in report:
        lines.append(f"matrix shape = {report['shape'][0]} x {report['shape'][1]}")
    if "matrix" in report:
        lines.append("rows (A_nu0 monomials): " + str(report["matrix"]["rows"]))
    if "rank" in report:
        lines.append(f"rank at {report['point']} = {report['rank']} of {report['rows']}: {report['label']}")
    if "implicit" in report:
        im = report["implicit"]
        lines.append(f"F (degree {im['F']['degree']}) = {report['F_text']}")
        lines.append(f"deg D = {im['D_degree']}, delta = {im['delta']}, deg G = {im['G_degree']}, "
                     f"verified = {im['verified']}")
    if "verified" in report and "implicit" not in report:
        lines.append(f"verified = {report['verified']}")
    return "\n".join(lines)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        job = _stage("input", job_from_args, args)
        extra = {"point": getattr(args, "point", None), "equation": getattr(args, "equation", None)}
        report = run(args.command, job, extra)
    except StageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    if args.fmt == "text":
        print(render_text(report))
    else:
        print(json.dumps(report, indent=2))
    return 0


if __name__ == "__main__":
    sys.exit(main())
