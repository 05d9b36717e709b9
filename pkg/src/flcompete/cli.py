"""Command-line front end.

Exit codes: 0 success, 1 the scenario violates the interior-duopoly
condition (or another model error), 2 unreadable/invalid input or usage,
3 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .analysis import subsidy_report, threshold_report, welfare_report
from .model import ConditionViolation, EffectivenessSpec, ModelError, check_condition1
from .regime import ConsistencyError, decide_regime
from .scenario_io import ScenarioParseError, fmt, load_scenario, rows_to_csv
from .sweeps import FIGURE_COLUMNS, OUTPUT_COLUMNS, SweepSpec, figure3_data, sweep_rows
from .svg import render_figure_svg

EXIT_OK, EXIT_CONDITION, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


def _emit(text: str, path: str | None, stdout) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        stdout.write(text)


def _kv(prefix: str, items: dict) -> list[str]:
    return [f"{prefix}.{k} = {fmt(v)}" for k, v in items.items()]


def _jsonable(v):
    if isinstance(v, float):
        return float(fmt(v)) if math.isfinite(v) else fmt(v)
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    return v


def condition_lines(rep) -> list[str]:
    lines = [
        f"condition.part_i = {'ok' if rep.part_i_ok else 'FAIL'}",
        f"condition.part_ii = {'ok' if rep.part_ii_ok else 'FAIL'}",
        f"condition.positive_qualities = {'ok' if rep.qualities_ok else 'FAIL'}",
        f"condition.binding_margin = {fmt(rep.binding_margin)}",
        f"condition.max_quality_ratio = {fmt(rep.max_quality_ratio)}",
        f"condition.checked_points = {len(rep.checked_points)}",
    ]
    lines += [f"diagnostic = {m}" for m in rep.messages]
    return lines


def report_record(scenario) -> dict:
    """Everything ``report`` prints, as a nested dict of plain values."""
    dec = decide_regime(scenario)
    wel = welfare_report(scenario)
    sub = subsidy_report(scenario)
    thr = threshold_report(scenario)
    return {
        "scenario": {
            "v1": scenario.v1,
            "v2": scenario.v2,
            "gamma": scenario.gamma,
            "d1": scenario.d1,
            "d2": scenario.d2,
            "f": scenario.effectiveness.label(),
        },
        "regime": {
            "chosen": dec.chosen.value,
            "ratio": dec.ratio,
            "bound": dec.bound,
            "delta1": dec.delta1,
            "delta2": dec.delta2,
            "free_rider": dec.free_rider,
            "mirrored": dec.mirrored,
        },
        "ml": dec.ml.as_dict(),
        "fl": dec.fl.as_dict(),
        "welfare": {
            "cs_ml": wel.cs_ml,
            "cs_fl": wel.cs_fl,
            "sw_ml": wel.sw_ml,
            "sw_fl": wel.sw_fl,
            "all_win": wel.all_win,
        },
        "subsidy": {
            "delta1": sub.delta1,
            "delta2": sub.delta2,
            "feasible": sub.feasible,
            "min_transfer": sub.min_transfer,
        },
        "thresholds": {
            "gamma_star": thr.gamma_star,
            "d2_star": thr.d2_star,
            "gamma_hat": thr.gamma_hat,
            "gamma_max": thr.gamma_max,
            **{f"residual.{k}": v for k, v in thr.bracket_residuals.items()},
            **{f"note.{k}": v for k, v in thr.notes.items()},
        },
    }


def record_text(record: dict) -> str:
    lines = []
    for section, items in record.items():
        lines += _kv(section, items)
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------- commands


def cmd_validate(args, stdout) -> int:
    rep = check_condition1(load_scenario(args.scenario))
    stdout.write("\n".join(condition_lines(rep)) + "\n")
    stdout.write(f"valid = {'yes' if rep.ok else 'no'}\n")
    return EXIT_OK if rep.ok else EXIT_CONDITION


def cmd_report(args, stdout) -> int:
    record = report_record(load_scenario(args.scenario))
    stdout.write(record_text(record))
    if args.json:
        Path(args.json).write_text(json.dumps(_jsonable(record), indent=2, sort_keys=False) + "\n")
    return EXIT_OK


def cmd_thresholds(args, stdout) -> int:
    record = report_record(load_scenario(args.scenario))
    stdout.write("\n".join(_kv("thresholds", record["thresholds"])) + "\n")
    return EXIT_OK


def cmd_subsidy(args, stdout) -> int:
    sub = subsidy_report(load_scenario(args.scenario))
    items = {
        "delta1": sub.delta1,
        "delta2": sub.delta2,
        "surplus": sub.surplus,
        "feasible": sub.feasible,
        "min_transfer": sub.min_transfer,
    }
    stdout.write("\n".join(_kv("subsidy", items)) + "\n")
    return EXIT_OK


def cmd_sweep(args, stdout) -> int:
    outputs = tuple(o.strip() for o in args.outputs.split(",") if o.strip())
    try:
        spec = SweepSpec(args.param, args.start, args.stop, args.steps, outputs)
    except ValueError as exc:
        raise ScenarioParseError(str(exc)) from None
    scenario = load_scenario(args.scenario)
    _emit(rows_to_csv(spec.header(), sweep_rows(scenario, spec)), args.out, stdout)
    return EXIT_OK


def figure3_csv(eff, d1, d2=10.0, v1=20.0, v2=15.0, points=400):
    data = figure3_data(eff, d1, d2, v1, v2, points)
    return data, rows_to_csv(FIGURE_COLUMNS, data.rows)


def cmd_figure3(args, stdout) -> int:
    if args.family == "satexp":
        eff = EffectivenessSpec.satexp(args.a, args.b, args.c)
    else:
        eff = EffectivenessSpec(args.family)
    data, text = figure3_csv(eff, args.d1, args.d2, args.v1, args.v2, args.points)
    _emit(text, args.out, stdout)
    if args.svg:
        title = f"{eff.label()}, D1={args.d1:g}, D2={args.d2:g}"
        Path(args.svg).write_text(render_figure_svg(text, title), encoding="utf-8")
    if args.out:
        summary = {
            "gamma_star": data.gamma_star,
            "gamma_hat": data.gamma_hat,
            "gamma_max": data.gamma_max,
            "boundary_limited": data.boundary_limited,
        }
        stdout.write("\n".join(_kv("figure3", summary)) + "\n")
    return EXIT_OK


# ------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="flcompete", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    for name, fn, helptext in (
        ("validate", cmd_validate, "check that both firms stay in the market"),
        ("report", cmd_report, "regime, equilibria, welfare, subsidy and thresholds"),
        ("thresholds", cmd_thresholds, "gamma*, D2* and gamma-hat"),
        ("subsidy", cmd_subsidy, "side-payment feasibility"),
    ):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("scenario", help="scenario file (key = value lines)")
        sp.set_defaults(func=fn)
        if name == "report":
            sp.add_argument("--json", metavar="PATH", help="also write a JSON record")

    sp = sub.add_parser("sweep", help="CSV over a range of gamma, d1 or d2")
    sp.add_argument("scenario")
    sp.add_argument("--param", required=True, choices=("gamma", "d1", "d2"))
    sp.add_argument("--from", dest="start", type=float, required=True)
    sp.add_argument("--to", dest="stop", type=float, required=True)
    sp.add_argument("--steps", type=int, default=100)
    sp.add_argument("--outputs", default=",".join(OUTPUT_COLUMNS), help="comma-separated subset of %(default)s")
    sp.add_argument("--out", metavar="PATH", help="CSV destination (default stdout)")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("figure3", help="profits of both firms under ML and FL against gamma")
    sp.add_argument("--family", required=True, choices=("sqrt", "log1p", "satexp"))
    sp.add_argument("--d1", type=float, required=True)
    sp.add_argument("--d2", type=float, default=10.0)
    sp.add_argument("--v1", type=float, default=20.0)
    sp.add_argument("--v2", type=float, default=15.0)
    sp.add_argument("--a", type=float, default=1.0, help="satexp: f = a - b exp(-x/c)")
    sp.add_argument("--b", type=float, default=10.0)
    sp.add_argument("--c", type=float, default=100.0)
    sp.add_argument("--points", type=int, default=400)
    sp.add_argument("--out", metavar="PATH", help="CSV destination (default stdout)")
    sp.add_argument("--svg", metavar="PATH", help="also render an SVG figure")
    sp.set_defaults(func=cmd_figure3)
    return p


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args, stdout)
    except ScenarioParseError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except ConditionViolation as exc:
        stderr.write(f"condition violated: {exc}\n")
        return EXIT_CONDITION
    except ConsistencyError as exc:
        stderr.write(f"internal inconsistency: {exc}\n")
        return EXIT_INTERNAL
    except ModelError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_INPUT if getattr(args, "command", "") == "figure3" else EXIT_CONDITION


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
