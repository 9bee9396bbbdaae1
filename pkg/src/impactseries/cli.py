"""Command-line surface: analytic prediction, simulation, model comparison,
and validation of the amplitude tables against the splitter-network oracle.

All data emissions share one frozen column set (see ``COLUMNS``); CSV and
JSON files carry the same values, floats rounded to 6 significant digits.
Every row embeds the provenance needed to replay it (model, phases, seed,
events).  Exit codes: 0 success, 2 argument or contract error, 3 validation
failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from .amplitudes import PhaseSettings
from .bsnetwork import (
    SplitterConvention,
    default_geometry,
    load_geometry,
    validate_against_reference,
)
from .montecarlo import (
    CoincidenceTally,
    EstimateE,
    RunConfig,
    estimate_E,
    run,
    scan_phases,
    tally_marginals,
)
from .pathspace import Outcome, Subensemble, TimeOrdering
from .theories import (
    JointDistribution,
    SinglesPair,
    TheoryKind,
    TheoryModel,
    marginal_side1,
    marginal_side2,
    predict,
    qm_joint,
)

#: Frozen column order shared by every CSV/JSON emission.
COLUMNS = (
    "command",
    "model",
    "ordering",
    "subensemble",
    "axis",
    "angle",
    "alpha",
    "beta",
    "gamma",
    "events",
    "seed",
    "accepted",
    "rejected",
    "acceptance_rate",
    "r_pp",
    "r_pm",
    "r_mp",
    "r_mm",
    "joint_pp",
    "joint_pm",
    "joint_mp",
    "joint_mm",
    "p1_plus_analytic",
    "p1_minus_analytic",
    "p2_plus_analytic",
    "p2_minus_analytic",
    "p1_plus_mc",
    "p1_minus_mc",
    "p2_plus_mc",
    "p2_minus_mc",
    "e_value",
    "e_std_error",
    "e_analytic_qm",
    "e_analytic_causal",
)

_SUBENSEMBLE_BY_FLAG = {"L": Subensemble.LONG, "l": Subensemble.SHORT}
_FLAG_BY_SUBENSEMBLE = {v: k for k, v in _SUBENSEMBLE_BY_FLAG.items()}

_SQRT_HALF = 1.0 / math.sqrt(2.0)


def _sig6(value: float) -> float:
    return float(f"{value:.6g}")


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def _jsonable(value):
    if isinstance(value, float):
        return _sig6(value)
    return value


def _empty_row() -> dict:
    return dict.fromkeys(COLUMNS)


def _fill_phases(row: dict, phases: PhaseSettings) -> None:
    row["alpha"] = phases.alpha
    row["beta"] = phases.beta
    row["gamma"] = phases.gamma


def _fill_analytic(
    row: dict,
    side1: SinglesPair | None,
    side2: SinglesPair | None,
    joint: JointDistribution | None,
) -> None:
    if side1 is not None:
        row["p1_plus_analytic"] = side1.p_plus
        row["p1_minus_analytic"] = side1.p_minus
    if side2 is not None:
        row["p2_plus_analytic"] = side2.p_plus
        row["p2_minus_analytic"] = side2.p_minus
    if joint is not None:
        pp, pm, mp, mm = joint.as_tuple()
        row["joint_pp"], row["joint_pm"], row["joint_mp"], row["joint_mm"] = pp, pm, mp, mm


def _fill_tally(row: dict, tally: CoincidenceTally, estimate: EstimateE) -> None:
    row["accepted"] = tally.accepted
    row["rejected"] = tally.rejected
    row["acceptance_rate"] = tally.accepted / tally.events
    row["r_pp"], row["r_pm"], row["r_mp"], row["r_mm"] = tally.counts()
    side1, side2 = tally_marginals(tally)
    row["p1_plus_mc"], row["p1_minus_mc"] = side1.p_plus, side1.p_minus
    row["p2_plus_mc"], row["p2_minus_mc"] = side2.p_plus, side2.p_minus
    row["e_value"] = estimate.value
    row["e_std_error"] = estimate.std_error
    row["e_analytic_qm"] = estimate.analytic_qm
    row["e_analytic_causal"] = estimate.analytic_causal


def _analytic_parts(model: TheoryModel, target: Subensemble, phases: PhaseSettings):
    if model.kind is TheoryKind.QM:
        joint = qm_joint(target, phases)
        return marginal_side1(joint), marginal_side2(joint), joint
    prediction = predict(model, phases)
    return prediction.side1, prediction.side2, None


def _emit(rows: list[dict], fmt: str, out_path: str) -> None:
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(COLUMNS)
        for row in rows:
            writer.writerow([_format_cell(row[column]) for column in COLUMNS])
        text = buffer.getvalue()
    else:
        payload = {"rows": [{c: _jsonable(row[c]) for c in COLUMNS} for row in rows]}
        text = json.dumps(payload, indent=2) + "\n"
    Path(out_path).write_text(text, encoding="utf-8")


def _parse_model(args: argparse.Namespace) -> TheoryModel:
    return TheoryModel(
        kind=TheoryKind(args.model), ordering=TimeOrdering(args.ordering)
    )


def _phases_from(args: argparse.Namespace) -> PhaseSettings:
    scale = math.pi / 180.0 if args.degrees else 1.0
    return PhaseSettings(args.alpha * scale, args.beta * scale, args.gamma * scale)


def _parse_grid(text: str, degrees: bool) -> np.ndarray:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError("grid must look like start:stop:count")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise ValueError(f"cannot parse grid {text!r}: {exc}") from None
    if count < 1:
        raise ValueError("grid count must be at least 1")
    grid = np.linspace(start, stop, count)
    if degrees:
        grid = grid * math.pi / 180.0
    return grid


def _singles_line(name: str, pair: SinglesPair | None, rule: str | None) -> str:
    if pair is None:
        return f"{name}: undefined for this model (depends on the causal completion)"
    line = f"{name}: p(+)={_format_cell(pair.p_plus)} p(-)={_format_cell(pair.p_minus)}"
    if rule:
        line += f"  [p(+) = {rule}]"
    return line


def _rule_labels(model: TheoryModel, target: Subensemble) -> tuple[str | None, str | None]:
    cos_sum = "cos(alpha+beta)"
    cos_diff = "cos(beta-gamma)"
    if model.kind is TheoryKind.QM:
        if target is Subensemble.LONG:
            return f"1/2 - {cos_sum}/3", f"1/2 + {cos_diff}/3"
        return f"1/2 + {cos_sum}/3", "marginal of the three-path interference law"
    if model.kind is TheoryKind.CAUSAL:
        if model.ordering is TimeOrdering.PHOTON2_FIRST:
            return None, f"1/2 + {cos_diff}/3"
        return "1/2 exactly", None
    return "1/2 exactly", f"1/2 + {cos_diff}/3"


def cmd_predict(args: argparse.Namespace) -> int:
    model = _parse_model(args)
    phases = _phases_from(args)
    target = _SUBENSEMBLE_BY_FLAG[args.subensemble]
    side1, side2, joint = _analytic_parts(model, target, phases)
    rule1, rule2 = _rule_labels(model, target)

    print(
        f"model={model.kind.value} ordering={model.ordering.value} "
        f"subensemble={args.subensemble} alpha={_format_cell(phases.alpha)} "
        f"beta={_format_cell(phases.beta)} gamma={_format_cell(phases.gamma)}"
    )
    if joint is not None:
        cells = " ".join(
            f"p({outcome.value})={_format_cell(p)}"
            for outcome, p in zip(Outcome, joint.as_tuple())
        )
        print(f"joint: {cells}")
    else:
        print("joint: undefined for this model (singles only)")
    print(_singles_line("side1", side1, rule1))
    print(_singles_line("side2", side2, rule2))

    if args.out:
        row = _empty_row()
        row["command"] = "predict"
        row["model"] = model.kind.value
        row["ordering"] = model.ordering.value
        row["subensemble"] = args.subensemble
        _fill_phases(row, phases)
        _fill_analytic(row, side1, side2, joint)
        _emit([row], args.format, args.out)
    return 0


def _simulate_row(
    command: str,
    model: TheoryModel,
    target: Subensemble,
    config: RunConfig,
    tally: CoincidenceTally,
    estimate: EstimateE,
    axis: str | None = None,
    angle: float | None = None,
) -> dict:
    row = _empty_row()
    row["command"] = command
    row["model"] = model.kind.value
    row["ordering"] = model.ordering.value
    row["subensemble"] = _FLAG_BY_SUBENSEMBLE[target]
    row["axis"] = axis
    row["angle"] = angle
    _fill_phases(row, config.phases)
    row["events"] = config.events
    row["seed"] = config.seed
    _fill_analytic(row, *_analytic_parts(model, target, config.phases))
    _fill_tally(row, tally, estimate)
    return row


def cmd_simulate(args: argparse.Namespace) -> int:
    model = _parse_model(args)
    phases = _phases_from(args)
    target = _SUBENSEMBLE_BY_FLAG[args.subensemble]
    config = RunConfig(
        model=model, phases=phases, events=args.events, seed=args.seed, target_sub=target
    )
    tally = run(config)
    estimate = estimate_E(tally, model, phases)

    print(
        f"model={model.kind.value} ordering={model.ordering.value} "
        f"subensemble={args.subensemble} alpha={_format_cell(phases.alpha)} "
        f"beta={_format_cell(phases.beta)} gamma={_format_cell(phases.gamma)} "
        f"events={config.events} seed={config.seed}"
    )
    pp, pm, mp, mm = tally.counts()
    print(
        f"counts: R(++)={pp} R(+-)={pm} R(-+)={mp} R(--)={mm} "
        f"accepted={tally.accepted} rejected={tally.rejected}"
    )
    print(f"acceptance_rate={_format_cell(tally.accepted / tally.events)}")
    print(
        f"E={_format_cell(estimate.value)} std_error={_format_cell(estimate.std_error)} "
        f"[analytic: qm {_format_cell(estimate.analytic_qm)}, "
        f"causal {_format_cell(estimate.analytic_causal)}]"
    )

    if args.out:
        _emit([_simulate_row("simulate", model, target, config, tally, estimate)],
              args.format, args.out)
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    phases = _phases_from(args)
    grid = _parse_grid(args.grid, args.degrees)
    rows = []
    print(
        f"compare axis={args.axis} points={len(grid)} events_per_point={args.events} "
        f"seed={args.seed} base alpha={_format_cell(phases.alpha)} "
        f"beta={_format_cell(phases.beta)} gamma={_format_cell(phases.gamma)}"
    )
    for kind in (TheoryKind.QM, TheoryKind.RNL):
        model = TheoryModel(kind=kind, ordering=TimeOrdering(args.ordering))
        points = scan_phases(model, args.axis, grid, phases, args.events, args.seed)
        for point in points:
            config = RunConfig(
                model=model,
                phases=point.phases,
                events=point.events,
                seed=point.seed,
            )
            rows.append(
                _simulate_row(
                    "compare",
                    model,
                    Subensemble.LONG,
                    config,
                    point.tally,
                    point.estimate,
                    axis=args.axis,
                    angle=point.angle,
                )
            )
            side1_mc, _ = tally_marginals(point.tally)
            analytic1 = (
                _format_cell(point.analytic_side1.p_plus)
                if point.analytic_side1
                else "n/a"
            )
            print(
                f"model={kind.value} angle={_format_cell(point.angle)} "
                f"p1_plus analytic={analytic1} mc={_format_cell(side1_mc.p_plus)} "
                f"E={_format_cell(point.estimate.value)}"
                f"±{_format_cell(point.estimate.std_error)}"
            )
    if args.out:
        _emit(rows, args.format, args.out)
    return 0


def cmd_validate_oracle(args: argparse.Namespace) -> int:
    convention = SplitterConvention(t=args.splitter_t, r=args.splitter_r)
    convention.require_unitary()
    if args.geometry:
        try:
            geometry = load_geometry(args.geometry)
        except OSError as exc:
            raise ValueError(f"cannot read geometry file: {exc}") from None
    else:
        geometry = default_geometry()

    report = validate_against_reference(geometry, convention)
    for result in report.checks:
        status = "PASS" if result.passed else "FAIL"
        print(
            f"{status} {result.name}: max deviation {result.max_deviation:.3g} "
            f"(tol {result.tolerance:.3g})"
        )
        if result.first_mismatch:
            print(f"     first mismatch: {result.first_mismatch}")
    if report.passed:
        print(f"oracle validation: PASS ({len(report.checks)} checks)")
        return 0
    print("oracle validation: FAIL")
    return 3


def _add_phase_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--alpha", type=float, default=0.0, help="phase on photon 1's long arm")
    parser.add_argument("--beta", type=float, default=0.0, help="phase on photon 2's first long arm")
    parser.add_argument("--gamma", type=float, default=0.0, help="phase on photon 2's second long arm")
    parser.add_argument("--degrees", action="store_true", help="angles given in degrees instead of radians")


def _add_model_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--model", required=True, choices=[k.value for k in TheoryKind])
    parser.add_argument(
        "--ordering",
        choices=[o.value for o in TimeOrdering],
        default=TimeOrdering.SPACELIKE.value,
        help="impact time ordering: 1 (photon 2 first), 2 (photon 1 first), spacelike",
    )


def _add_output_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=["csv", "json"], default="csv")
    parser.add_argument("--out", help="write machine-readable rows to this path")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="impactseries",
        description="Predictions and Monte Carlo runs for the two-photon impact-series interferometer",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("predict", help="analytic singles/joint probabilities")
    _add_model_arguments(p)
    _add_phase_arguments(p)
    p.add_argument("--subensemble", choices=["L", "l"], default="L")
    _add_output_arguments(p)
    p.set_defaults(handler=cmd_predict)

    p = sub.add_parser("simulate", help="Monte Carlo coincidence run")
    _add_model_arguments(p)
    _add_phase_arguments(p)
    p.add_argument("--subensemble", choices=["L", "l"], default="L")
    p.add_argument("--events", type=int, default=100_000, help="photon pairs to emit")
    p.add_argument("--seed", type=int, default=0, help="64-bit run seed")
    _add_output_arguments(p)
    p.set_defaults(handler=cmd_simulate)

    p = sub.add_parser("compare", help="QM vs RNL phase scan, analytic and Monte Carlo")
    p.add_argument(
        "--ordering",
        choices=[o.value for o in TimeOrdering],
        default=TimeOrdering.SPACELIKE.value,
    )
    _add_phase_arguments(p)
    p.add_argument("--axis", choices=["alpha", "beta", "gamma"], default="alpha")
    p.add_argument(
        "--grid",
        default=f"0:{2 * math.pi}:13",
        help="swept angle as start:stop:count (inclusive endpoints)",
    )
    p.add_argument("--events", type=int, default=100_000, help="pairs emitted per grid point")
    p.add_argument("--seed", type=int, default=0)
    _add_output_arguments(p)
    p.set_defaults(handler=cmd_compare)

    p = sub.add_parser("validate-oracle", help="check amplitude tables against the splitter-network derivation")
    p.add_argument("--geometry", help="wiring description file (defaults to the built-in layout)")
    p.add_argument(
        "--splitter-t",
        type=complex,
        default=complex(_SQRT_HALF, 0.0),
        help="complex transmission amplitude, e.g. 0.7071067811865476",
    )
    p.add_argument(
        "--splitter-r",
        type=complex,
        default=complex(0.0, _SQRT_HALF),
        help="complex reflection amplitude, e.g. 0.7071067811865476j",
    )
    p.set_defaults(handler=cmd_validate_oracle)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
