"""Command-line front end: JSON/CSV output for every package operation.

Exit codes: 0 on success, 1 on a domain error (precondition violated,
enumeration bound exceeded, degenerate parameters), 2 on a parse error.
Domain errors print {"error": code, "message": ...} to standard error.
Rationals are serialized as "p/q" strings and large integer coefficients
as decimal strings, so no precision is lost in transit.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import admissible as adm
from . import almostkahler as ak
from . import cohomology as coh
from . import fan as bfan
from . import symplectic as sp
from . import topology3 as t3
from .config import Limits, load_limits
from .core import (
    BottMatrix,
    StageTooLarge,
    cotwist,
    equivalence_orbit,
    twist,
)

DOMAIN_ERRORS = {
    StageTooLarge: "stage_too_large",
    adm.PoleHit: "pole_hit",
    adm.DegreeTooHigh: "degree_too_high",
    adm.SingularParameters: "singular_parameters",
    adm.SingularSystem: "singular_system",
    ak.Inconclusive: "inconclusive",
    ak.SingularSample: "singular_sample",
}


@dataclass
class CommandResult:
    command: str
    inputs: dict
    payload: object
    exit_code: int
    text: Optional[str] = None   # preformatted output (CSV) when set


def _frac(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def _load_matrix(args) -> BottMatrix:
    if getattr(args, "stage3", None) is not None:
        a, b, c = args.stage3
        return BottMatrix.stage3(a, b, c)
    if getattr(args, "matrix", None):
        raw = args.matrix
        if not raw.strip().startswith("{"):
            with open(raw, encoding="utf-8") as fh:
                raw = fh.read()
        return BottMatrix.from_json(json.loads(raw))
    raise ValueError("provide a tower via --stage3 a b c or --matrix JSON/file")


def _add_matrix_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--stage3", nargs=3, type=int, metavar=("A", "B", "C"),
                        help="stage-3 shorthand for the matrix entries")
    parser.add_argument("--matrix", help='matrix as JSON {"n":..,"rows":[[..]]} or a file path')


def _orbit_json(report) -> dict:
    moves = []
    for edge in report.moves:
        entry = {"from": edge.source, "to": edge.target, "kind": edge.move.kind}
        if edge.move.index is not None:
            entry["index"] = edge.move.index
        if edge.move.permutation is not None:
            entry["permutation"] = list(edge.move.permutation)
        moves.append(entry)
    return {
        "representatives": [m.to_json() for m in report.representatives],
        "canonical": report.canonical.to_json(),
        "moves": moves,
    }


def _csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(str(x) for x in row) + "\n")
    return buf.getvalue()


def emit_plot_data(kind: str, params: dict) -> str:
    """CSV plot data for the family sweeps.

    kind "csc-family" expects {"m", "sweep", "tolerance"} and emits
    (m, r_plus, r_minus) rows over the sweep grid; "cproj-trajectory"
    expects {"data", "alpha", "beta", "steps"} and emits (step, r1, r2)
    rows along the straight parameter path from 0 to alpha.
    """
    if kind == "csc-family":
        m = int(params["m"])
        step = Fraction(params["sweep"])
        tol = Fraction(params.get("tolerance", Fraction(1, 10 ** 12)))
        rows = []
        rp = step
        while rp < 1:
            for root in adm.csc_family_solve(m, rp, tol):
                rows.append((m, float(rp), float(root)))
            rp += step
        return _csv(("m", "r_plus", "r_minus"), rows)
    if kind == "cproj-trajectory":
        data = params["data"]
        alpha = Fraction(params["alpha"])
        beta = Fraction(params.get("beta", 1))
        steps = int(params["steps"])
        F = params.get("poly") or adm.extremal_polynomial(data).F
        rows = []
        for step in range(steps + 1):
            t = Fraction(step, steps)
            if step == 0:
                r_now = data.r_list()
            else:
                _, moved = adm.cproj_transform(F, data, t * alpha, beta)
                r_now = moved.r_list()
            rows.append((step, float(r_now[0]),
                         float(r_now[1]) if len(r_now) > 1 else ""))
        return _csv(("step", "r1", "r2"), rows)
    raise ValueError(f"unknown plot kind {kind!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bott",
                                     description="Exact invariants of Bott towers")
    parser.add_argument("--config", help="path to a JSON limits file "
                                         "(default: $BOTT_CONFIG)")
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("twist", "cotwist", "orbit", "cohomology", "reductive", "roots", "fano"):
        p = sub.add_parser(name)
        _add_matrix_args(p)
        if name == "orbit":
            p.add_argument("--stage-bound", type=int, default=None)
        if name in ("reductive", "roots"):
            p.add_argument("--stage-bound", type=int, default=None)

    p = sub.add_parser("classes", help="characteristic classes")
    p.add_argument("kind", choices=["c", "p", "w2"])
    _add_matrix_args(p)

    p = sub.add_parser("classify3", help="stage-3 diffeomorphism invariants")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("c", type=int)

    p = sub.add_parser("twist1-diffeo")
    p.add_argument("--k", nargs="+", type=int, required=True)
    p.add_argument("--kprime", nargs="+", type=int, required=True)

    p = sub.add_parser("cone", help="ample-cone inequalities in a divisor basis")
    _add_matrix_args(p)
    p.add_argument("--basis", help="string of u/v per stage, first must be u")
    p.add_argument("--scan-bases", action="store_true",
                   help="report every generator basis")

    p = sub.add_parser("symplectic-count")
    p.add_argument("k1", type=_frac)
    p.add_argument("k2", type=_frac)
    p.add_argument("k3", type=_frac)
    p.add_argument("--enumerate", action="store_true", dest="enumerate_reps")

    p = sub.add_parser("compat-enumerate")
    p.add_argument("k1", type=_frac)
    p.add_argument("k2", type=_frac)
    p.add_argument("k3", type=_frac)

    p = sub.add_parser("extremal-poly")
    p.add_argument("--data", required=True,
                   help='admissible data as JSON {"components":[{"d":..,"s":..,"r":..}]} '
                        "or a file path")

    p = sub.add_parser("csc-family")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--rplus", type=_frac, help="single parameter instead of a sweep")
    p.add_argument("--sweep", type=_frac, help="sweep step over (0, 1)")
    p.add_argument("--tolerance", type=_frac, default=None)
    p.add_argument("--csv", action="store_true")

    p = sub.add_parser("cproj")
    p.add_argument("--data", required=True)
    p.add_argument("--alpha", type=_frac)
    p.add_argument("--beta", type=_frac, default=Fraction(1))
    p.add_argument("--poly", help="profile coefficients, comma separated "
                                  "(default: the extremal polynomial of the data)")
    p.add_argument("--trajectory", type=int, metavar="STEPS",
                   help="emit the parameter path from 0 to alpha in STEPS steps")
    p.add_argument("--csv", action="store_true")

    p = sub.add_parser("ak-solve")
    p.add_argument("p0", type=_frac)
    p.add_argument("p1", type=int)
    p.add_argument("p2", type=int)
    p.add_argument("--grid", type=int, default=None)

    p = sub.add_parser("scan", help="stage-3 box scan of invariants")
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--props", default="twist,cotwist,reductive,fano,p1,qtrivial,toptwist")
    p.add_argument("--csv", action="store_true")

    return parser


def _payload_for(args, limits: Limits):
    cmd = args.command

    if cmd in ("twist", "cotwist"):
        A = _load_matrix(args)
        return twist(A) if cmd == "twist" else cotwist(A)

    if cmd == "orbit":
        A = _load_matrix(args)
        bound = args.stage_bound or limits.orbit_stage_bound
        return _orbit_json(equivalence_orbit(A, bound))

    if cmd == "cohomology":
        A = _load_matrix(args)
        R = coh.ring(A)
        return {
            "n": A.n,
            "alpha": [R.alpha(k).to_json() for k in range(A.n)],
            "y": [R.y(k).to_json() for k in range(A.n)],
        }

    if cmd == "classes":
        A = _load_matrix(args)
        R = coh.ring(A)
        if args.kind == "c":
            return R.chern_total().to_json()
        if args.kind == "p":
            return R.pontrjagin_total().to_json()
        w2 = R.stiefel_whitney_2()
        return {"n": w2.n, "monomials": [[i + 1 for i in mono] for mono in w2.monomials()]}

    if cmd == "classify3":
        return t3.stage3_invariants(args.a, args.b, args.c).to_json()

    if cmd == "twist1-diffeo":
        return t3.twist1_diffeomorphic(args.k, args.kprime)

    if cmd == "cone":
        A = _load_matrix(args)
        if args.scan_bases:
            return {choice: {"inequalities": [q.to_json() for q in ineqs],
                             "first_orthant": flag}
                    for choice, (ineqs, flag) in bfan.kahler_cone_scan(A).items()}
        basis = args.basis or "u" * A.n
        ineqs, flag = bfan.kahler_cone(A, basis)
        return {"basis": basis, "inequalities": [q.to_json() for q in ineqs],
                "first_orthant": flag}

    if cmd == "roots":
        A = _load_matrix(args)
        bound = args.stage_bound or limits.root_stage_bound
        roots = bfan.demazure_roots(A, bound)
        return {"n": A.n, "roots": sorted(list(chi) for chi in roots.roots),
                "reductive": roots.is_symmetric()}

    if cmd == "reductive":
        A = _load_matrix(args)
        bound = args.stage_bound or limits.root_stage_bound
        return bfan.is_reductive(A, bound)

    if cmd == "fano":
        return bfan.is_fano(_load_matrix(args))

    if cmd == "symplectic-count":
        n_b0, n_bne0, n_b = sp.count_compatible(args.k1, args.k2, args.k3)
        payload = {"N_B0": n_b0, "N_Bne0": n_bne0, "N_B": n_b}
        if args.enumerate_reps:
            payload["representatives"] = [list(t) for t in
                                          sp.enumerate_compatible(args.k1, args.k2, args.k3)]
        return payload

    if cmd == "compat-enumerate":
        reps = sp.enumerate_compatible(args.k1, args.k2, args.k3)
        return {"count": len(reps), "representatives": [list(t) for t in reps]}

    if cmd == "extremal-poly":
        data = _load_admissible(args.data)
        profile = adm.extremal_polynomial(data)
        return {
            "data": data.to_json(),
            "profile": profile.to_json(),
            "csc": adm.is_csc(profile),
            "positive": adm.is_positive_on_interval(profile.F),
        }

    if cmd == "ak-solve":
        data = ak.SquareFiberData.make(args.p0, args.p1, args.p2)
        sol = ak.solve_ak(data)
        grid = args.grid or limits.integrability_grid
        return {
            "solution": sol.to_json(),
            "determinant": str(ak.system_determinant(data)),
            "positive": ak.check_positivity(data, sol, limits.positivity_depth),
            "integrable": ak.check_integrability(data, sol, ak.default_grid(grid)),
        }

    if cmd == "scan":
        return _scan_rows(args.radius)

    raise ValueError(f"unhandled command {cmd}")


def _load_admissible(raw: str) -> adm.AdmissibleData:
    if not raw.strip().startswith("{"):
        with open(raw, encoding="utf-8") as fh:
            raw = fh.read()
    return adm.AdmissibleData.from_json(json.loads(raw))


def _scan_rows(radius: int) -> list[dict]:
    rows = []
    rng = range(-radius, radius + 1)
    for a in rng:
        for b in rng:
            for c in rng:
                A = BottMatrix.stage3(a, b, c)
                inv = t3.stage3_invariants(a, b, c)
                rows.append({
                    "a": a, "b": b, "c": c,
                    "twist": twist(A),
                    "cotwist": cotwist(A),
                    "reductive": bfan.is_reductive(A),
                    "fano": bfan.is_fano(A),
                    "p1": inv.p,
                    "q_trivial": inv.q_trivial,
                    "topological_twist": coh.topological_twist(A),
                })
    return rows


def _csc_family_result(args, limits: Limits) -> CommandResult:
    tol = args.tolerance or limits.csc_tolerance
    inputs = {"m": args.m, "rplus": str(args.rplus) if args.rplus is not None else None,
              "sweep": str(args.sweep) if args.sweep is not None else None}
    if args.sweep is not None:
        text = emit_plot_data("csc-family",
                              {"m": args.m, "sweep": args.sweep, "tolerance": tol})
        return CommandResult("csc-family", inputs, text.splitlines()[1:], 0, text=text)
    if args.rplus is None:
        raise ValueError("provide --rplus or --sweep")
    roots = adm.csc_family_solve(args.m, args.rplus, tol)
    payload = {"m": args.m, "r_plus": str(args.rplus), "roots": [str(r) for r in roots]}
    if args.csv:
        text = _csv(("m", "r_plus", "r_minus"),
                    [(args.m, float(args.rplus), float(r)) for r in roots])
        return CommandResult("csc-family", inputs, payload, 0, text=text)
    return CommandResult("csc-family", inputs, payload, 0)


def _cproj_result(args, limits: Limits) -> CommandResult:
    data = _load_admissible(args.data)
    if args.poly:
        F = tuple(Fraction(c) for c in args.poly.split(","))
    else:
        F = adm.extremal_polynomial(data).F
    if args.alpha is None:
        raise ValueError("provide --alpha")
    inputs = {"alpha": str(args.alpha), "beta": str(args.beta)}
    if args.trajectory:
        text = emit_plot_data("cproj-trajectory",
                              {"data": data, "alpha": args.alpha, "beta": args.beta,
                               "steps": args.trajectory, "poly": F})
        return CommandResult("cproj", inputs, text.splitlines()[1:], 0, text=text)
    new_F, new_data = adm.cproj_transform(F, data, args.alpha, args.beta)
    payload = {
        "F": [str(c) for c in F],
        "F_transformed": [str(c) for c in new_F],
        "r": [str(r) for r in data.r_list()],
        "r_transformed": [str(r) for r in new_data.r_list()],
    }
    return CommandResult("cproj", inputs, payload, 0)


def run(argv: Optional[Sequence[str]] = None) -> CommandResult:
    parser = build_parser()
    args = parser.parse_args(argv)
    limits = load_limits(args.config)
    inputs = {k: v for k, v in vars(args).items() if k not in ("command", "config")}

    try:
        if args.command == "csc-family":
            return _csc_family_result(args, limits)
        if args.command == "cproj":
            return _cproj_result(args, limits)
        payload = _payload_for(args, limits)
    except tuple(DOMAIN_ERRORS) as exc:
        code = DOMAIN_ERRORS[type(exc)]
        return CommandResult(args.command, inputs, {"error": code, "message": str(exc)}, 1)
    except (ValueError, ZeroDivisionError, ArithmeticError, OSError,
            json.JSONDecodeError, KeyError) as exc:
        return CommandResult(args.command, inputs,
                             {"error": "invalid_input", "message": str(exc)}, 1)

    if args.command == "scan" and getattr(args, "csv", False):
        rows = payload
        header = list(rows[0].keys()) if rows else []
        text = _csv(header, [[row[h] for h in header] for row in rows])
        return CommandResult(args.command, inputs, payload, 0, text=text)
    return CommandResult(args.command, inputs, payload, 0)


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        result = run(argv)
    except SystemExit as exc:   # argparse reports parse errors itself
        return 2 if exc.code not in (0, None) else 0
    if result.exit_code != 0:
        print(json.dumps(result.payload), file=sys.stderr)
        return result.exit_code
    if result.text is not None:
        sys.stdout.write(result.text)
    else:
        print(json.dumps(result.payload, indent=2))
    return 0


if __name__ == "__main__":
    sys.exit(main())
