"""Command-line front end: solve, verify, charge, sweep.

All file output is deterministic: CSV with a header row, LF line endings,
and 17-significant-digit decimals; JSON with a stable key order and a
schema_version field. Physical quantities are emitted in original units;
--rescaled switches the coordinate column to (x - x0)/L.
"""

import argparse
import json
import math
import os
import sys

import numpy as np

from . import analysis, closed_form
from ._backend import kernels
from .errors import DomainError, NumericsError, SkyrmeKinkError
from .model import KinkSign, ModelParams
from .solvers import Grid, KinkProfile, Provenance, SolverConfig, integrate_bps, solve_second_order_bvp

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_NUMERICS_ERROR = 3

PROFILE_COLUMNS = ["x", "alpha", "dalpha", "energy_density", "charge_density", "bps_residual"]

VERIFY_THRESHOLDS = {
    "bps_defect": 1e-8,
    "charge_cross_check": 1e-8,
    "closed_form_bps_residual": 1e-8,
    "second_order_residual": 1e-6,
    "bvp_pp_product": 1e-8,
    "bvp_vanishing_branch": 1e-6,
}


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def _write_output(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    out_dir = os.environ.get("SKYRMEKINK_OUTPUT_DIR")
    if out_dir and not os.path.isabs(path):
        path = os.path.join(out_dir, path)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _csv_table(header: list[str], rows: list[list]) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(c) if isinstance(c, float) else str(c) for c in row))
    return "\n".join(lines) + "\n"


def _json_text(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _add_model_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--lambda", dest="lam", type=float, default=1.0,
                   help="quartic coupling (positive)")
    p.add_argument("--L", dest="big_l", type=float, default=1.0,
                   help="period scale (positive)")
    p.add_argument("--x0", type=float, default=0.0, help="kink center")
    p.add_argument("--branch", nargs=2, type=int, default=(0, 1), metavar=("M", "N"),
                   help="boundary vacua (m, n) at -inf and +inf")


def _add_numeric_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--rel-tol", type=float, default=1e-10)
    p.add_argument("--abs-tol", type=float, default=1e-12)
    p.add_argument("--max-steps", type=int, default=500_000)
    p.add_argument("--tail-cut", type=float, default=1e-6)
    p.add_argument("--grid-points", type=int, default=2001)
    p.add_argument("--half-width", type=float, default=None,
                   help="half extent of the output grid (default: auto from tail-cut)")


def _add_output_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", default="-", help="output path, '-' for stdout")
    p.add_argument("--rescaled", action="store_true",
                   help="emit the dimensionless coordinate (x - x0)/L")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="skyrmekink",
        description="Kink profiles, charges, and cross-checks for the reduced "
                    "one-dimensional Skyrme model.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="compute a kink profile table")
    _add_model_args(p_solve)
    _add_numeric_args(p_solve)
    _add_output_args(p_solve)
    p_solve.add_argument("--method", choices=("closed_form", "ode", "bvp", "all"),
                         default="closed_form")

    p_verify = sub.add_parser("verify", help="run saturation and equivalence checks")
    _add_model_args(p_verify)
    _add_numeric_args(p_verify)
    _add_output_args(p_verify)

    p_charge = sub.add_parser("charge", help="kink charge, closed form vs quadrature")
    _add_model_args(p_charge)
    _add_numeric_args(p_charge)
    _add_output_args(p_charge)

    p_sweep = sub.add_parser("sweep", help="energy/charge reports over a kappa list")
    p_sweep.add_argument("--kappa-file", required=True,
                         help="file of positive kappa values, one per line")
    p_sweep.add_argument("--L", dest="big_l", type=float, default=1.0)
    _add_output_args(p_sweep)
    return ap


def _config(args) -> SolverConfig:
    return SolverConfig(
        rel_tol=args.rel_tol,
        abs_tol=args.abs_tol,
        max_steps=args.max_steps,
        tail_cut=args.tail_cut,
    )


def _make_grid(args, p: ModelParams) -> Grid:
    w = args.half_width
    if w is None:
        w = closed_form.transit_half_width(p, args.tail_cut)
    return Grid.uniform(args.x0 - w, args.x0 + w, args.grid_points)


def _vacuum_profile(p: ModelParams, grid: Grid, m: int) -> KinkProfile:
    const = np.full(len(grid), m * math.pi)
    return KinkProfile(
        grid=grid,
        alpha=const,
        dalpha=np.zeros(len(grid)),
        params=p,
        sign=KinkSign.MINUS,
        vacuum_base=m,
        provenance=Provenance.CLOSED_FORM,
    )


def _profile_for_method(method: str, p: ModelParams, args, cfg: SolverConfig,
                        grid: Grid, spec: closed_form.BranchSpec) -> KinkProfile:
    if method == "closed_form":
        sol = closed_form.ImplicitSolution(
            params=p, x0=args.x0, sign=spec.sign, vacuum_base=spec.vacuum_base
        )
        return sol.sample(grid)
    if method == "ode":
        prof = integrate_bps(p, args.x0, spec.sign, cfg, grid)
        return prof.shifted(spec.vacuum_base)
    prof = solve_second_order_bvp(p, cfg, grid)
    if spec.sign is KinkSign.PLUS:
        prof = prof.mirrored()
    return prof.shifted(spec.vacuum_base)


def _profile_columns(profile: KinkProfile, rescaled: bool, x0: float) -> dict[str, np.ndarray]:
    p = profile.params
    x = profile.x
    if rescaled:
        x = (x - x0) / p.big_l
    return {
        "x": x,
        "alpha": profile.alpha,
        "dalpha": profile.dalpha,
        "energy_density": kernels.energy_density_arr(
            profile.alpha, profile.dalpha, p.lam, p.big_l
        ),
        "charge_density": kernels.charge_density_arr(
            profile.alpha, profile.dalpha, p.lam, p.big_l
        ),
        "bps_residual": kernels.bps_residual_arr(
            profile.alpha, profile.dalpha, profile.sign.factor, p.lam, p.big_l
        ),
    }


def cmd_solve(args) -> int:
    p = ModelParams(lam=args.lam, big_l=args.big_l)
    cfg = _config(args)
    grid = _make_grid(args, p)
    m, n = args.branch

    if m == n:
        profiles = {args.method if args.method != "all" else "closed_form":
                    _vacuum_profile(p, grid, m)}
    else:
        spec = closed_form.branch_map(m, n)
        if not spec.valid:
            raise DomainError(
                f"branch ({m}, {n}) is not solvable: only adjacent vacua "
                f"(|m - n| = 1) admit nontrivial finite-energy kinks"
            )
        methods = ("closed_form", "ode", "bvp") if args.method == "all" else (args.method,)
        profiles = {
            name: _profile_for_method(name, p, args, cfg, grid, spec) for name in methods
        }

    summary: dict[str, float] = {}
    names = list(profiles)
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            a, b = names[i], names[j]
            summary[f"{a}|{b}"] = float(
                np.max(np.abs(profiles[a].alpha - profiles[b].alpha))
            )
    if summary:
        for key, val in summary.items():
            print(f"# sup|alpha_{key.replace('|', ' - alpha_')}| = {val:.3e}",
                  file=sys.stderr)

    tables = {name: _profile_columns(prof, args.rescaled, args.x0)
              for name, prof in profiles.items()}
    if args.format == "csv":
        rows = []
        for name, cols in tables.items():
            for k in range(len(cols["x"])):
                rows.append([name] + [float(cols[c][k]) for c in PROFILE_COLUMNS])
        text = _csv_table(["method"] + PROFILE_COLUMNS, rows)
    else:
        payload = {
            "schema_version": SCHEMA_VERSION,
            "command": "solve",
            "lambda": p.lam,
            "L": p.big_l,
            "kappa": p.kappa,
            "x0": args.x0,
            "branch": [m, n],
            "method": args.method,
            "rescaled": bool(args.rescaled),
            "columns": PROFILE_COLUMNS,
            "profiles": {
                name: {c: [float(v) for v in cols[c]] for c in PROFILE_COLUMNS}
                for name, cols in tables.items()
            },
            "summary": {"pairwise_sup_distance": summary},
        }
        text = _json_text(payload)
    _write_output(args.output, text)
    return EXIT_OK


def cmd_verify(args) -> int:
    p = ModelParams(lam=args.lam, big_l=args.big_l)
    cfg = _config(args)
    grid = _make_grid(args, p)
    m, n = args.branch

    if m == n:
        profile = _vacuum_profile(p, grid, m)
        report = analysis.EnergyChargeReport(
            energy=0.0, charge_quadrature=0.0, charge_closed_form=0.0,
            bps_defect=0.0, params=p,
        )
        diag = analysis.equivalence_diagnostics(profile)
        checks = {name: True for name in VERIFY_THRESHOLDS}
        bvp_pp_max = 0.0
        bvp_p_plus_max = 0.0
        bvp_p_minus_max = 0.0
    else:
        spec = closed_form.branch_map(m, n)
        if not spec.valid:
            raise DomainError(
                f"branch ({m}, {n}) is not solvable: only adjacent vacua "
                f"(|m - n| = 1) admit nontrivial finite-energy kinks"
            )
        sol = closed_form.ImplicitSolution(
            params=p, x0=args.x0, sign=spec.sign, vacuum_base=spec.vacuum_base
        )
        profile = sol.sample(grid)
        quad_cfg = SolverConfig(rel_tol=min(cfg.rel_tol, 1e-11), abs_tol=cfg.abs_tol)
        report = analysis.energy_charge_report(profile, quad_cfg)
        diag = analysis.equivalence_diagnostics(profile)

        bvp = solve_second_order_bvp(p, cfg, grid)
        pp, pm = kernels.p_plus_minus_arr(bvp.alpha, bvp.dalpha, p.lam, p.big_l)
        bvp_pp_max = float(np.max(np.abs(pp * pm)))
        bvp_p_plus_max = float(np.max(np.abs(pp)))
        bvp_p_minus_max = float(np.max(np.abs(pm)))

        q_scale = max(1.0, abs(report.charge_closed_form))
        checks = {
            "bps_defect": abs(report.bps_defect)
            <= VERIFY_THRESHOLDS["bps_defect"] * q_scale,
            "charge_cross_check": abs(report.charge_quadrature - report.charge_closed_form)
            <= VERIFY_THRESHOLDS["charge_cross_check"] * q_scale,
            "closed_form_bps_residual": diag.max_bps_residual
            <= VERIFY_THRESHOLDS["closed_form_bps_residual"],
            "second_order_residual": diag.max_second_order_residual
            <= VERIFY_THRESHOLDS["second_order_residual"],
            "bvp_pp_product": bvp_pp_max <= VERIFY_THRESHOLDS["bvp_pp_product"],
            "bvp_vanishing_branch": min(bvp_p_plus_max, bvp_p_minus_max)
            <= VERIFY_THRESHOLDS["bvp_vanishing_branch"],
        }

    passed = all(checks.values())
    if args.format == "csv":
        header = [
            "lambda", "L", "kappa", "energy", "charge_quadrature", "charge_closed_form",
            "bps_defect", "max_bps_residual", "max_second_order_residual",
            "pp_product_max_abs", "pp_product_variation",
            "endpoint_p_plus", "endpoint_p_minus",
            "bvp_pp_product_max_abs", "bvp_p_plus_max", "bvp_p_minus_max", "passed",
        ]
        row = [
            p.lam, p.big_l, p.kappa, report.energy, report.charge_quadrature,
            report.charge_closed_form, report.bps_defect, diag.max_bps_residual,
            diag.max_second_order_residual, diag.pp_product_max_abs,
            diag.pp_product_variation, diag.endpoint_p_values[0],
            diag.endpoint_p_values[1], bvp_pp_max, bvp_p_plus_max, bvp_p_minus_max,
            int(passed),
        ]
        text = _csv_table(header, [row])
    else:
        payload = {
            "schema_version": SCHEMA_VERSION,
            "command": "verify",
            "lambda": p.lam,
            "L": p.big_l,
            "kappa": p.kappa,
            "report": {
                "energy": report.energy,
                "charge_quadrature": report.charge_quadrature,
                "charge_closed_form": report.charge_closed_form,
                "bps_defect": report.bps_defect,
            },
            "diagnostics": {
                "max_bps_residual": diag.max_bps_residual,
                "max_second_order_residual": diag.max_second_order_residual,
                "pp_product_max_abs": diag.pp_product_max_abs,
                "pp_product_variation": diag.pp_product_variation,
                "endpoint_p_plus": diag.endpoint_p_values[0],
                "endpoint_p_minus": diag.endpoint_p_values[1],
            },
            "bvp": {
                "pp_product_max_abs": bvp_pp_max,
                "p_plus_max": bvp_p_plus_max,
                "p_minus_max": bvp_p_minus_max,
            },
            "thresholds": VERIFY_THRESHOLDS,
            "checks": checks,
            "passed": passed,
        }
        text = _json_text(payload)
    _write_output(args.output, text)
    return EXIT_OK if passed else EXIT_VERIFY_FAILED


def cmd_charge(args) -> int:
    p = ModelParams(lam=args.lam, big_l=args.big_l)
    sol = closed_form.ImplicitSolution(params=p, x0=args.x0)
    profile = sol.sample(sol.natural_grid(n=args.grid_points))
    q_closed = analysis.kink_charge_closed_form(p)
    q_quad = analysis.kink_charge_quadrature(profile)
    rel_diff = abs(q_quad - q_closed) / max(1.0, abs(q_closed))
    if args.format == "csv":
        text = _csv_table(
            ["lambda", "L", "kappa", "charge_closed_form", "charge_quadrature", "rel_diff"],
            [[p.lam, p.big_l, p.kappa, q_closed, q_quad, rel_diff]],
        )
    else:
        text = _json_text({
            "schema_version": SCHEMA_VERSION,
            "command": "charge",
            "lambda": p.lam,
            "L": p.big_l,
            "kappa": p.kappa,
            "charge_closed_form": q_closed,
            "charge_quadrature": q_quad,
            "rel_diff": rel_diff,
        })
    _write_output(args.output, text)
    return EXIT_OK


def _read_kappa_file(path: str) -> list[float]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise DomainError(f"cannot read kappa file: {exc}") from exc
    values = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            val = float(line)
        except ValueError:
            raise DomainError(f"kappa file line {lineno}: not a number: {line!r}") from None
        if not (math.isfinite(val) and val > 0.0):
            raise DomainError(f"kappa file line {lineno}: kappa must be positive, got {line!r}")
        values.append(val)
    return values


def cmd_sweep(args) -> int:
    kappas = _read_kappa_file(args.kappa_file)
    results = analysis.sweep(kappas, args.big_l)
    header = ["kappa", "L", "energy", "charge_quadrature", "charge_closed_form", "bps_defect"]
    rows = []
    for res in results:
        if res.report is None:
            print(f"# kappa={res.kappa}: {res.error}", file=sys.stderr)
            rows.append([res.kappa, args.big_l, math.nan, math.nan, math.nan, math.nan])
        else:
            r = res.report
            rows.append([res.kappa, args.big_l, r.energy, r.charge_quadrature,
                         r.charge_closed_form, r.bps_defect])
    if args.format == "csv":
        text = _csv_table(header, rows)
    else:
        text = _json_text({
            "schema_version": SCHEMA_VERSION,
            "command": "sweep",
            "L": args.big_l,
            "columns": header,
            "rows": [[float(c) for c in row] for row in rows],
        })
    _write_output(args.output, text)
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "solve": cmd_solve,
        "verify": cmd_verify,
        "charge": cmd_charge,
        "sweep": cmd_sweep,
    }
    try:
        return handlers[args.command](args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except NumericsError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICS_ERROR
    except SkyrmeKinkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
