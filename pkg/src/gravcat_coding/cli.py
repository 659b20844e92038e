"""Command-line front end.

Subcommands: ``capacity`` (one parameter point, JSON), ``sweep`` (2-D grid,
CSV/JSON), ``figure`` (built-in grid presets), ``optimize`` (best measurement
strength), ``verify`` (cross-engine report).  Exit codes are stable: 0 on
success, 1 when verification finds a deviation over threshold, 2 on bad
usage or invalid parameters (with a JSON error object on stderr).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from pathlib import Path

from .coding import capacity_closed_form, capacity_numeric
from .sweep import (
    AxisSpec,
    FIGURES,
    evaluate_sweep,
    figure_config,
    figure_grid,
    render_csv,
    render_json,
)
from .thermal import GravcatParams, InvalidParameterError, build_hamiltonian, gibbs_numeric
from .verify import verification_report
from .version import __version__
from .weak_measurement import apply_qwm, capacity_wm_closed_form, optimize_strength

JOBS_ENV_VAR = "GRAVCAT_JOBS"


def _write_output(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8")


def _emit_error(exc: BaseException) -> None:
    payload = {"schema_version": 1, "error": type(exc).__name__, "message": str(exc)}
    sys.stderr.write(json.dumps(payload) + "\n")


def _resolve_jobs(requested: int | None) -> int:
    if requested is not None:
        if requested < 1:
            raise InvalidParameterError("--jobs must be at least 1")
        return requested
    env = os.environ.get(JOBS_ENV_VAR)
    if env is not None:
        try:
            jobs = int(env)
        except ValueError:
            raise InvalidParameterError(f"{JOBS_ENV_VAR} must be an integer, got {env!r}") from None
        if jobs < 1:
            raise InvalidParameterError(f"{JOBS_ENV_VAR} must be at least 1")
        return jobs
    return os.cpu_count() or 1


def _params_from_args(args: argparse.Namespace) -> GravcatParams:
    for name, flag in (("omega", "--omega"), ("gamma", "--gamma"), ("temp", "--temp")):
        if getattr(args, name) is None:
            raise InvalidParameterError(f"{flag} is required")
    return GravcatParams(
        omega=args.omega,
        gamma=args.gamma,
        temperature=args.temp,
        allow_degenerate_omega=getattr(args, "allow_zero_omega", False),
    )


def _cmd_capacity(args: argparse.Namespace) -> int:
    params = _params_from_args(args)
    if args.engine == "closed_form":
        if args.p is None:
            report = capacity_closed_form(params)
        else:
            report = capacity_wm_closed_form(params, args.p)
    else:
        rho = gibbs_numeric(build_hamiltonian(params), params.temperature)
        if args.p is None:
            report = capacity_numeric(rho)
        else:
            selected = apply_qwm(rho, args.p)
            report = dataclasses.replace(
                capacity_numeric(selected.state),
                strength=args.p,
                success_probability=selected.success_probability,
            )
    payload = {"schema_version": 1, "engine": args.engine, **report.to_dict()}
    _write_output(json.dumps(payload, indent=2) + "\n", args.output)
    return 0


def _fixed_from_args(args: argparse.Namespace) -> dict[str, float]:
    supplied = {"omega": args.omega, "gamma": args.gamma, "T": args.temp, "p": args.p}
    return {name: value for name, value in supplied.items() if value is not None}


def _cmd_sweep(args: argparse.Namespace) -> int:
    x_axis = AxisSpec.parse(args.x)
    y_axis = AxisSpec.parse(args.y)
    fixed = _fixed_from_args(args)
    grid = evaluate_sweep(
        x_axis,
        y_axis,
        fixed,
        engine=args.engine,
        jobs=_resolve_jobs(args.jobs),
        allow_zero_omega=args.allow_zero_omega,
    )
    text = render_csv(grid) if args.format == "csv" else render_json(grid)
    _write_output(text, args.output)
    return 0


def _cmd_figure(args: argparse.Namespace) -> int:
    x_axis = AxisSpec.parse(args.x) if args.x else None
    y_axis = AxisSpec.parse(args.y) if args.y else None
    grid = figure_grid(
        args.id, engine=args.engine, jobs=_resolve_jobs(args.jobs), x_axis=x_axis, y_axis=y_axis
    )
    text = render_csv(grid) if args.format == "csv" else render_json(grid)
    _write_output(text, args.output)
    if args.output is not None:
        # sidecar with the exact configuration; skipped for stdout runs
        sidecar = Path(args.output).with_suffix(Path(args.output).suffix + ".json")
        sidecar.write_text(
            json.dumps(figure_config(args.id, grid), indent=2) + "\n", encoding="utf-8"
        )
    return 0


def _cmd_optimize(args: argparse.Namespace) -> int:
    params = _params_from_args(args)
    p_star, chi_star = optimize_strength(params)
    chi_at_zero = capacity_wm_closed_form(params, 0.0).chi
    payload = {
        "schema_version": 1,
        "p_star": p_star,
        "chi_star": chi_star,
        "chi_at_zero": chi_at_zero,
        "gain": chi_star - chi_at_zero,
    }
    _write_output(json.dumps(payload, indent=2) + "\n", args.output)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    report = verification_report(args.samples, args.seed)
    _write_output(json.dumps(report, indent=2) + "\n", args.output)
    return 0 if report["all_passed"] else 1


def _add_point_flags(parser: argparse.ArgumentParser, *, with_p: bool) -> None:
    parser.add_argument("--omega", type=float, default=None, help="level splitting (> 0)")
    parser.add_argument("--gamma", type=float, default=None, help="gravitational coupling (>= 0)")
    parser.add_argument("--temp", type=float, default=None, help="temperature (> 0, k_B = 1)")
    if with_p:
        parser.add_argument("--p", type=float, default=None, help="measurement strength in [0, 1]")
    parser.add_argument(
        "--allow-zero-omega",
        action="store_true",
        help="permit omega = 0 (degenerate level crossing)",
    )


def _add_output_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--output", default=None, help="output path (default: stdout)")


def _add_grid_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--engine", choices=("closed_form", "numeric"), default="closed_form",
        help="evaluation engine (default: closed_form)",
    )
    parser.add_argument(
        "--jobs", type=int, default=None,
        help=f"parallel worker processes (default: ${JOBS_ENV_VAR} or the CPU count)",
    )
    parser.add_argument(
        "--format", choices=("csv", "json"), default="csv", help="output format (default: csv)"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gravcat-coding",
        description="Dense-coding capacity of two-gravcat thermal states.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_cap = sub.add_parser("capacity", help="capacity at one parameter point (JSON)")
    _add_point_flags(p_cap, with_p=True)
    p_cap.add_argument(
        "--engine", choices=("closed_form", "numeric"), default="closed_form",
        help="evaluation engine (default: closed_form)",
    )
    _add_output_flag(p_cap)
    p_cap.set_defaults(handler=_cmd_capacity)

    p_sweep = sub.add_parser("sweep", help="chi over a 2-D parameter grid")
    p_sweep.add_argument("--x", required=True, help="x axis as name:start:stop:count")
    p_sweep.add_argument("--y", required=True, help="y axis as name:start:stop:count")
    _add_point_flags(p_sweep, with_p=True)
    _add_grid_flags(p_sweep)
    _add_output_flag(p_sweep)
    p_sweep.set_defaults(handler=_cmd_sweep)

    p_fig = sub.add_parser("figure", help="built-in figure grid by id")
    p_fig.add_argument("id", choices=sorted(FIGURES), help="figure id")
    p_fig.add_argument("--x", default=None, help="override the x axis (name:start:stop:count)")
    p_fig.add_argument("--y", default=None, help="override the y axis (name:start:stop:count)")
    _add_grid_flags(p_fig)
    _add_output_flag(p_fig)
    p_fig.set_defaults(handler=_cmd_figure)

    p_opt = sub.add_parser("optimize", help="best measurement strength (JSON)")
    _add_point_flags(p_opt, with_p=False)
    _add_output_flag(p_opt)
    p_opt.set_defaults(handler=_cmd_optimize)

    p_ver = sub.add_parser("verify", help="cross-engine verification report (JSON)")
    p_ver.add_argument("--samples", type=int, default=1000, help="number of random draws")
    p_ver.add_argument("--seed", type=int, default=42, help="SplitMix64 seed")
    _add_output_flag(p_ver)
    p_ver.set_defaults(handler=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ValueError, ArithmeticError, RuntimeError) as exc:
        _emit_error(exc)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
