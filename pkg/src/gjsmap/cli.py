"""Command-line front end.

Every library operation is exposed as a subcommand producing deterministic
JSON on stdout (fixed field order, shortest round-trip float formatting) and
optional CSV/JSON files under ``--out``.  Exit codes: 0 on success, 1 on any
validation or construction error, 2 when a verification report fails its
tolerance.  The environment variable ``GJS_DIVERGENCE_BOUND`` overrides the
default iterate bound of 1e12.

A batch mode (``run --config jobs.json``) executes a list of jobs, each the
equivalent of one subcommand invocation with parameters given as JSON values;
all jobs are validated (including disjointness of their output paths) before
any of them runs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace
from fractions import Fraction
from pathlib import Path

import numpy as np

from .charfun import (
    DIVERGENCE_BOUND,
    CharFn,
    charfn_from_dict,
    charfn_to_dict,
    classify_region,
    discriminant,
    fixed_points,
    invertibility_boundary,
)
from .errors import GjsError, NoRealFixedPoint, NotQuadratic, UnsupportedDiscriminant
from .gha import (
    OperatorMatrix,
    build_gha,
    casimir_gha,
    gha_to_dict,
    matrix_A,
    matrix_Adag,
    matrix_H,
    matrix_N,
    verify_gha_relations,
    write_matrix_csv,
)
from .gsl2 import (
    CUT_ACCEPT_TOL,
    RepKind,
    build_gsl2,
    casimir_gsl2,
    cut_condition_solve,
    gsl2_to_dict,
    matrix_J0,
    matrix_Jminus,
    matrix_Jplus,
    periodic_condition_solve,
    verify_gsl2_relations,
)
from .jsmap import (
    FixedJ,
    FullGrid,
    build_jsmap,
    derive_pairing,
    jsmap_to_dict,
    verify_jsmap_relations,
    verify_map_equals_gsl2,
    verify_pairing_identity,
)
from .orbit import (
    WINDOW_PAD,
    cobweb,
    figure_bundle,
    report_to_dict,
    write_bundle,
    write_report_csvs,
    write_report_json,
)


class CliError(Exception):
    """Invalid invocation; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(message)


def _charfn_arg(text: str) -> CharFn:
    try:
        return charfn_from_dict(json.loads(text))
    except (json.JSONDecodeError, ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"bad characteristic function: {exc}")


def _two_j_arg(text: str) -> int:
    try:
        if "/" in text:
            num, den = text.split("/")
            value = Fraction(int(num), int(den))
        else:
            value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad rational j: {text!r}") from exc
    two_j = value * 2
    if two_j.denominator != 1 or two_j < 0:
        raise argparse.ArgumentTypeError("j must be a non-negative half-integer")
    return int(two_j)


def _window_arg(text: str) -> tuple[float, float]:
    try:
        lo_s, hi_s = text.split(",")
        return (float(lo_s), float(hi_s))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad window {text!r}, want 'lo,hi'") from exc


def _perturb_arg(text: str):
    try:
        target, index_s, amount_s = text.split(":")
        indices = tuple(int(p) for p in index_s.split(","))
        return target.lower(), indices, float(amount_s)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(
            f"bad perturbation {text!r}, want 'target:index[,index]:amount'"
        ) from exc


def _bound() -> float:
    raw = os.environ.get("GJS_DIVERGENCE_BOUND")
    if raw is None:
        return DIVERGENCE_BOUND
    try:
        return float(raw)
    except ValueError as exc:
        raise CliError(f"bad GJS_DIVERGENCE_BOUND value {raw!r}") from exc


def _perturb_sequence(values: tuple[float, ...], indices, amount) -> tuple[float, ...]:
    if len(indices) != 1 or not (0 <= indices[0] < len(values)):
        raise CliError(f"perturbation index {indices} out of range")
    out = list(values)
    out[indices[0]] += amount
    return tuple(out)


def _perturb_matrix(matrix: OperatorMatrix, indices, amount) -> OperatorMatrix:
    if len(indices) != 2:
        raise CliError("matrix perturbation needs a row,col index")
    entries = np.array(matrix.entries)
    try:
        entries[indices] += amount
    except IndexError as exc:
        raise CliError(f"perturbation index {indices} out of range") from exc
    return OperatorMatrix(entries, matrix.basis_label, matrix.state_labels)


def cmd_charfun_analyze(args) -> tuple[dict, int]:
    fn = args.fn
    payload: dict = {"fn": charfn_to_dict(fn), "degree": fn.degree}
    try:
        payload["discriminant"] = discriminant(fn)
    except NotQuadratic:
        payload["discriminant"] = None
    try:
        payload["boundary"] = invertibility_boundary(fn)
    except NotQuadratic:
        payload["boundary"] = None
    try:
        payload["fixed_points"] = [fp.to_dict() for fp in fixed_points(fn)]
    except NoRealFixedPoint:
        payload["fixed_points"] = []
    if args.x0 is not None:
        payload["x0"] = args.x0
        try:
            payload["region"] = classify_region(fn, args.x0).value
        except (NotQuadratic, UnsupportedDiscriminant):
            payload["region"] = None
    return payload, 0


def cmd_gha_build(args) -> tuple[dict, int]:
    rep = build_gha(args.fn, args.alpha0, args.dim, bound=_bound())
    payload: dict = {"rep": gha_to_dict(rep)}
    code = 0
    if args.verify:
        checked = rep
        if args.perturb is not None:
            target, indices, amount = args.perturb
            if target == "ladder":
                checked = replace(rep, ladder=_perturb_sequence(rep.ladder, indices, amount))
            elif target == "eigenvalues":
                checked = replace(
                    rep, eigenvalues=_perturb_sequence(rep.eigenvalues, indices, amount)
                )
            else:
                raise CliError(f"unknown perturbation target {target!r}")
        report = verify_gha_relations(checked, tol=args.tol)
        payload["verification"] = report.to_dict()
        code = 0 if report.passed else 2
    if args.out is not None:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        files = {
            "gha_H.csv": matrix_H(rep),
            "gha_A.csv": matrix_A(rep),
            "gha_Adag.csv": matrix_Adag(rep),
            "gha_N.csv": matrix_N(rep),
            "gha_casimir.csv": casimir_gha(rep),
        }
        for fname, matrix in files.items():
            write_matrix_csv(matrix, out / fname)
        (out / "gha_rep.json").write_text(
            json.dumps(payload["rep"], indent=2, allow_nan=False) + "\n",
            encoding="utf-8",
        )
        payload["files"] = [*files.keys(), "gha_rep.json"]
    return payload, code


def cmd_gsl2_build(args) -> tuple[dict, int]:
    kind = RepKind(args.kind)
    rep = build_gsl2(
        args.gn, args.alphaj, args.dim, kind, cut_tol=args.cut_tol, bound=_bound()
    )
    payload: dict = {"rep": gsl2_to_dict(rep)}
    code = 0
    if args.verify:
        checked = rep
        if args.perturb is not None:
            target, indices, amount = args.perturb
            if target == "weights":
                checked = replace(
                    rep, weights=_perturb_sequence(rep.weights, indices, amount)
                )
            elif target in ("ladder_sq", "ladder-sq"):
                checked = replace(
                    rep, ladder_sq=_perturb_sequence(rep.ladder_sq, indices, amount)
                )
            else:
                raise CliError(f"unknown perturbation target {target!r}")
        report = verify_gsl2_relations(checked, tol=args.tol)
        payload["verification"] = report.to_dict()
        code = 0 if report.passed else 2
    if args.out is not None:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        files = {
            "gsl2_J0.csv": matrix_J0(rep),
            "gsl2_Jplus.csv": matrix_Jplus(rep),
            "gsl2_Jminus.csv": matrix_Jminus(rep),
            "gsl2_casimir.csv": casimir_gsl2(rep),
        }
        for fname, matrix in files.items():
            write_matrix_csv(matrix, out / fname)
        (out / "gsl2_rep.json").write_text(
            json.dumps(payload["rep"], indent=2, allow_nan=False) + "\n",
            encoding="utf-8",
        )
        payload["files"] = [*files.keys(), "gsl2_rep.json"]
    return payload, code


def cmd_gsl2_cut(args) -> tuple[dict, int]:
    solutions = cut_condition_solve(
        args.gn, args.d, window=args.window_size, step=args.step
    )
    payload = {
        "gn": charfn_to_dict(args.gn),
        "d": args.d,
        "included": list(solutions.included),
        "excluded": list(solutions.excluded),
    }
    return payload, 0


def cmd_gsl2_periodic(args) -> tuple[dict, int]:
    roots = periodic_condition_solve(
        args.gn, args.d, window=args.window_size, step=args.step
    )
    payload = {
        "gn": charfn_to_dict(args.gn),
        "d": args.d,
        "roots": list(roots),
    }
    return payload, 0


def _jsmap_mode(args):
    if args.full_grid is not None and args.j is not None:
        raise CliError("give either --j or --full-grid, not both")
    if args.full_grid is not None:
        return FullGrid(args.full_grid)
    if args.j is not None:
        return FixedJ(args.j)
    raise CliError("one of --j or --full-grid is required")


def cmd_jsmap_build(args) -> tuple[dict, int]:
    rep = build_jsmap(
        args.fn, args.alpha0, args.gn, args.alphaj, _jsmap_mode(args), bound=_bound()
    )
    payload: dict = {"rep": jsmap_to_dict(rep)}
    if args.out is not None:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        files = {
            "jsmap_Sz.csv": rep.s_z,
            "jsmap_Splus.csv": rep.s_plus,
            "jsmap_Sminus.csv": rep.s_minus,
            "jsmap_Ssq.csv": rep.s_sq,
        }
        for fname, matrix in files.items():
            write_matrix_csv(matrix, out / fname)
        (out / "jsmap_rep.json").write_text(
            json.dumps(payload["rep"], indent=2, allow_nan=False) + "\n",
            encoding="utf-8",
        )
        payload["files"] = [*files.keys(), "jsmap_rep.json"]
    return payload, 0


def cmd_jsmap_verify(args) -> tuple[dict, int]:
    if args.j is None:
        raise CliError("--j is required for verification")
    jsrep = build_jsmap(
        args.fn, args.alpha0, args.gn, args.alphaj, FixedJ(args.j), bound=_bound()
    )
    if args.perturb is not None:
        target, indices, amount = args.perturb
        fields = {
            "sz": "s_z",
            "s_z": "s_z",
            "splus": "s_plus",
            "s_plus": "s_plus",
            "sminus": "s_minus",
            "s_minus": "s_minus",
            "ssq": "s_sq",
            "s_sq": "s_sq",
        }
        if target not in fields:
            raise CliError(f"unknown perturbation target {target!r}")
        field = fields[target]
        jsrep = replace(
            jsrep, **{field: _perturb_matrix(getattr(jsrep, field), indices, amount)}
        )
    direct = build_gsl2(
        args.gn,
        args.alphaj,
        args.j + 1,
        RepKind(args.kind),
        cut_tol=args.cut_tol,
        bound=_bound(),
    )
    map_report = verify_map_equals_gsl2(jsrep, direct, tol=args.tol)
    relation_report = verify_jsmap_relations(jsrep, tol=args.tol)
    passed = map_report.passed and relation_report.passed
    payload = {
        "map_vs_direct": map_report.to_dict(),
        "relations": relation_report.to_dict(),
        "passed": passed,
    }
    return payload, 0 if passed else 2


def cmd_jsmap_pairing(args) -> tuple[dict, int]:
    gn, alpha_j = derive_pairing(args.fn, args.alpha0)
    report = verify_pairing_identity(
        args.fn, args.alpha0, gn, alpha_j, args.mmax, tol=args.tol
    )
    payload = {
        "fn": charfn_to_dict(args.fn),
        "gn_derived": charfn_to_dict(gn),
        "alpha0": args.alpha0,
        "alpha_j": alpha_j,
        "report": report.to_dict(),
    }
    return payload, 0 if report.passed else 2


def cmd_orbit_figure(args) -> tuple[dict, int]:
    bundle = figure_bundle(args.name, bound=_bound())
    files = write_bundle(bundle, args.out)
    payload = {
        "figure": bundle.name,
        "series": [series for series, _ in bundle.reports],
        "out_dir": str(args.out),
        "files": files,
    }
    return payload, 0


def cmd_orbit_cobweb(args) -> tuple[dict, int]:
    fn = args.fn
    window = args.window
    if window is None:
        landmarks = [args.x0]
        try:
            landmarks.extend(fp.location for fp in fixed_points(fn))
        except (GjsError, ValueError):
            pass
        try:
            landmarks.append(invertibility_boundary(fn))
        except NotQuadratic:
            pass
        lo, hi = min(landmarks), max(landmarks)
        if hi - lo < 1e-9:
            lo, hi = lo - 1.0, hi + 1.0
        pad = WINDOW_PAD * (hi - lo)
        window = (lo - pad, hi + pad)
    report = cobweb(fn, args.x0, args.steps, window, bound=_bound())
    payload = {"report": report_to_dict(report)}
    if args.out is not None:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        write_report_json(report, out / "cobweb.json")
        write_report_csvs(report, out / "cobweb_curve.csv", out / "cobweb_cobweb.csv")
        payload["files"] = ["cobweb.json", "cobweb_curve.csv", "cobweb_cobweb.csv"]
    return payload, 0


def _job_argv(job: dict) -> list[str]:
    argv = list(str(job["command"]).split())
    for key, value in job.get("params", {}).items():
        flag = "--" + str(key).replace("_", "-")
        if isinstance(value, bool):
            if value:
                argv.append(flag)
        elif isinstance(value, dict):
            argv.extend([flag, json.dumps(value)])
        else:
            argv.extend([flag, str(value)])
    return argv


def cmd_run(args) -> tuple[dict, int]:
    try:
        config = json.loads(Path(args.config).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read run config: {exc}") from exc
    jobs = config.get("jobs")
    if not isinstance(jobs, list):
        raise CliError("run config needs a 'jobs' list")
    parser = build_parser()
    parsed = []
    declared_outputs: list[str] = []
    for pos, job in enumerate(jobs):
        if not isinstance(job, dict) or "command" not in job:
            raise CliError(f"job {pos} must be an object with a 'command'")
        name = str(job.get("name", f"job{pos}"))
        argv = _job_argv(job)
        try:
            ns = parser.parse_args(argv)
        except CliError as exc:
            raise CliError(f"job {name!r} does not validate: {exc}") from exc
        if not hasattr(ns, "handler") or ns.handler is cmd_run:
            raise CliError(f"job {name!r} does not name a runnable subcommand")
        for declared in (job.get("output"), job.get("params", {}).get("out")):
            if declared is not None:
                declared_outputs.append(os.path.abspath(str(declared)))
        parsed.append((name, job, ns))
    if len(declared_outputs) != len(set(declared_outputs)):
        raise CliError("two jobs declare the same output path")
    statuses = []
    any_error = False
    any_failure = False
    for name, job, ns in parsed:
        entry: dict = {"name": name, "command": job["command"]}
        try:
            payload, code = ns.handler(ns)
        except (CliError, GjsError, ValueError, OSError) as exc:
            entry["status"] = "error"
            entry["error"] = f"{type(exc).__name__}: {exc}"
            any_error = True
            statuses.append(entry)
            continue
        entry["status"] = "ok" if code == 0 else "verification_failed"
        entry["exit_code"] = code
        any_failure = any_failure or code == 2
        output = job.get("output")
        if output is not None:
            path = Path(output)
            if path.parent != Path(""):
                path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(
                json.dumps(payload, indent=2, allow_nan=False) + "\n",
                encoding="utf-8",
            )
            entry["output"] = str(output)
        else:
            entry["payload"] = payload
        statuses.append(entry)
    overall = 1 if any_error else (2 if any_failure else 0)
    return {"jobs": statuses}, overall


def build_parser() -> _Parser:
    parser = _Parser(
        prog="gjsmap",
        description=(
            "Matrix representations of generalized oscillator and weight "
            "algebras, and the two-oscillator map between them."
        ),
    )
    sub = parser.add_subparsers(dest="group")

    charfun_p = sub.add_parser("charfun", help="characteristic function analysis")
    charfun_sub = charfun_p.add_subparsers(dest="command")
    analyze = charfun_sub.add_parser("analyze", help="fixed points, regions, boundary")
    analyze.add_argument("--fn", type=_charfn_arg, required=True, help="CharFn JSON")
    analyze.add_argument("--x0", type=float, default=None, help="start value to classify")
    analyze.set_defaults(handler=cmd_charfun_analyze)

    gha_p = sub.add_parser("gha", help="oscillator-side representations")
    gha_sub = gha_p.add_subparsers(dest="command")
    gha_build = gha_sub.add_parser("build", help="build a truncated ladder")
    gha_build.add_argument("--fn", type=_charfn_arg, required=True)
    gha_build.add_argument("--alpha0", type=float, required=True)
    gha_build.add_argument("--dim", type=int, required=True)
    gha_build.add_argument("--verify", action="store_true")
    gha_build.add_argument("--tol", type=float, default=1e-10)
    gha_build.add_argument("--out", default=None, help="directory for CSV/JSON dumps")
    gha_build.add_argument(
        "--perturb",
        type=_perturb_arg,
        default=None,
        help="negative control: 'ladder:IDX:AMOUNT' or 'eigenvalues:IDX:AMOUNT'",
    )
    gha_build.set_defaults(handler=cmd_gha_build)

    gsl2_p = sub.add_parser("gsl2", help="weight-side representations")
    gsl2_sub = gsl2_p.add_subparsers(dest="command")
    gsl2_build = gsl2_sub.add_parser("build", help="build a highest-weight rep")
    gsl2_build.add_argument("--gn", type=_charfn_arg, required=True)
    gsl2_build.add_argument("--alphaj", type=float, required=True)
    gsl2_build.add_argument("--dim", type=int, required=True)
    gsl2_build.add_argument(
        "--kind", choices=[k.value for k in RepKind], required=True
    )
    gsl2_build.add_argument("--cut-tol", type=float, default=CUT_ACCEPT_TOL)
    gsl2_build.add_argument("--verify", action="store_true")
    gsl2_build.add_argument("--tol", type=float, default=1e-10)
    gsl2_build.add_argument("--out", default=None)
    gsl2_build.add_argument(
        "--perturb",
        type=_perturb_arg,
        default=None,
        help="negative control: 'weights:IDX:AMOUNT' or 'ladder_sq:IDX:AMOUNT'",
    )
    gsl2_build.set_defaults(handler=cmd_gsl2_build)
    gsl2_cut = gsl2_sub.add_parser("cut", help="solve the finite-cut condition")
    gsl2_cut.add_argument("--gn", type=_charfn_arg, required=True)
    gsl2_cut.add_argument("--d", type=int, required=True)
    gsl2_cut.add_argument("--window-size", type=float, default=100.0)
    gsl2_cut.add_argument("--step", type=float, default=1e-4)
    gsl2_cut.set_defaults(handler=cmd_gsl2_cut)
    gsl2_periodic = gsl2_sub.add_parser("periodic", help="solve the periodic condition")
    gsl2_periodic.add_argument("--gn", type=_charfn_arg, required=True)
    gsl2_periodic.add_argument("--d", type=int, required=True)
    gsl2_periodic.add_argument("--window-size", type=float, default=100.0)
    gsl2_periodic.add_argument("--step", type=float, default=1e-4)
    gsl2_periodic.set_defaults(handler=cmd_gsl2_periodic)

    jsmap_p = sub.add_parser("jsmap", help="two-oscillator realization")
    jsmap_sub = jsmap_p.add_subparsers(dest="command")
    jsmap_build = jsmap_sub.add_parser("build", help="build the mapped generators")
    jsmap_verify = jsmap_sub.add_parser(
        "verify", help="compare the map with the direct representation"
    )
    for p in (jsmap_build, jsmap_verify):
        p.add_argument("--fn", type=_charfn_arg, required=True)
        p.add_argument("--alpha0", type=float, required=True)
        p.add_argument("--gn", type=_charfn_arg, required=True)
        p.add_argument("--alphaj", type=float, required=True)
        p.add_argument("--j", type=_two_j_arg, default=None, help="shell spin, e.g. 1/2")
    jsmap_build.add_argument("--full-grid", type=int, default=None, metavar="DIM")
    jsmap_build.add_argument("--out", default=None)
    jsmap_build.set_defaults(handler=cmd_jsmap_build, full_grid=None)
    jsmap_verify.add_argument("--tol", type=float, default=1e-10)
    jsmap_verify.add_argument(
        "--kind", choices=[k.value for k in RepKind], default=RepKind.FINITE_CUT.value
    )
    jsmap_verify.add_argument("--cut-tol", type=float, default=CUT_ACCEPT_TOL)
    jsmap_verify.add_argument(
        "--perturb",
        type=_perturb_arg,
        default=None,
        help="negative control: 'splus:ROW,COL:AMOUNT' etc.",
    )
    jsmap_verify.set_defaults(handler=cmd_jsmap_verify)
    jsmap_pairing = jsmap_sub.add_parser(
        "pairing", help="check the reflection-pairing identity"
    )
    jsmap_pairing.add_argument("--fn", type=_charfn_arg, required=True)
    jsmap_pairing.add_argument("--alpha0", type=float, required=True)
    jsmap_pairing.add_argument("--mmax", type=int, required=True)
    jsmap_pairing.add_argument("--tol", type=float, default=1e-10)
    jsmap_pairing.set_defaults(handler=cmd_jsmap_pairing)

    orbit_p = sub.add_parser("orbit", help="cobweb traces and figure bundles")
    orbit_sub = orbit_p.add_subparsers(dest="command")
    orbit_figure = orbit_sub.add_parser("figure", help="write a stock figure bundle")
    orbit_figure.add_argument(
        "--name", choices=["fig1", "fig2", "fig3", "fig4"], required=True
    )
    orbit_figure.add_argument("--out", required=True)
    orbit_figure.set_defaults(handler=cmd_orbit_figure)
    orbit_cobweb = orbit_sub.add_parser("cobweb", help="trace one orbit")
    orbit_cobweb.add_argument("--fn", type=_charfn_arg, required=True)
    orbit_cobweb.add_argument("--x0", type=float, required=True)
    orbit_cobweb.add_argument("--steps", type=int, required=True)
    orbit_cobweb.add_argument("--window", type=_window_arg, default=None)
    orbit_cobweb.add_argument("--out", default=None)
    orbit_cobweb.set_defaults(handler=cmd_orbit_cobweb)

    run_p = sub.add_parser("run", help="batch mode from a JSON run config")
    run_p.add_argument("--config", required=True)
    run_p.set_defaults(handler=cmd_run)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not hasattr(args, "handler"):
            parser.print_help()
            return 0
        payload, code = args.handler(args)
    except CliError as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 1
    except (GjsError, ValueError, OSError) as exc:
        print(json.dumps({"error": f"{type(exc).__name__}: {exc}"}), file=sys.stderr)
        return 1
    print(json.dumps(payload, indent=2, allow_nan=False))
    return code


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
