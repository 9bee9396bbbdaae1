"""Acceptance gate: every shipped guarantee, one pass/fail line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
"""

import math
import time

import numpy as np

from impactseries.amplitudes import PhaseSettings
from impactseries.bsnetwork import (
    SplitterConvention,
    default_geometry,
    validate_against_reference,
)
from impactseries.cli import main
from impactseries.montecarlo import RunConfig, estimate_E, run
from impactseries.pathspace import Subensemble, TimeOrdering
from impactseries.theories import (
    Side,
    TheoryKind,
    TheoryModel,
    causal_singles_side1,
    causal_singles_side2,
    causal_singles_side2_closed_form,
    marginal_side1,
    marginal_side2,
    qm_joint,
    qm_singles_closed_form,
)

BETA = 0.37  # fixed offset so all three phases vary across the grid


def grid_13x13():
    """169 settings covering (alpha+beta, beta-gamma) over a full period."""
    sums = np.linspace(0.0, 2.0 * math.pi, 13)
    diffs = np.linspace(0.0, 2.0 * math.pi, 13)
    return [
        (s, d, PhaseSettings(alpha=s - BETA, beta=BETA, gamma=BETA - d))
        for s in sums
        for d in diffs
    ]


def report(number: int, description: str, passed: bool) -> None:
    print(f"{'PASS' if passed else 'FAIL'} criterion {number}: {description}")
    assert passed, f"criterion {number} failed: {description}"


def test_criterion_1_closed_form_reproduction():
    start = time.perf_counter()
    worst = 0.0
    for s, d, ph in grid_13x13():
        worst = max(
            worst,
            abs(qm_singles_closed_form(Subensemble.LONG, Side.SIDE2, ph).p_plus
                - (0.5 + math.cos(d) / 3.0)),
            abs(qm_singles_closed_form(Subensemble.LONG, Side.SIDE1, ph).p_plus
                - (0.5 - math.cos(s) / 3.0)),
            abs(qm_singles_closed_form(Subensemble.SHORT, Side.SIDE1, ph).p_plus
                - (0.5 + math.cos(s) / 3.0)),
            abs(causal_singles_side2_closed_form(ph).p_plus - (0.5 + math.cos(d) / 3.0)),
            abs(causal_singles_side1().p_plus - 0.5),
        )
    aligned = PhaseSettings()
    spots_ok = (
        abs(qm_singles_closed_form(Subensemble.LONG, Side.SIDE2, aligned).p_plus - 5 / 6) < 1e-12
        and abs(qm_singles_closed_form(Subensemble.LONG, Side.SIDE1, aligned).p_plus - 1 / 6) < 1e-12
        and abs(qm_singles_closed_form(Subensemble.LONG, Side.SIDE1,
                                       PhaseSettings(alpha=math.pi / 2)).p_plus - 0.5) < 1e-12
        and abs(qm_singles_closed_form(Subensemble.SHORT, Side.SIDE1,
                                       PhaseSettings(alpha=math.pi)).p_plus - 1 / 6) < 1e-12
        and abs(causal_singles_side2_closed_form(PhaseSettings(beta=math.pi)).p_plus - 1 / 6) < 1e-12
    )
    elapsed = time.perf_counter() - start
    report(
        1,
        f"closed-form singles reproduce the cosine laws on a 13x13 grid "
        f"(max dev {worst:.2e}, tol 1e-12, {elapsed:.2f}s)",
        worst <= 1e-12 and spots_ok and elapsed < 1.0,
    )


def test_criterion_2_route_equivalence():
    start = time.perf_counter()
    worst = 0.0
    for _, _, ph in grid_13x13():
        long_joint = qm_joint(Subensemble.LONG, ph)
        short_joint = qm_joint(Subensemble.SHORT, ph)
        worst = max(
            worst,
            abs(marginal_side2(long_joint).p_plus
                - qm_singles_closed_form(Subensemble.LONG, Side.SIDE2, ph).p_plus),
            abs(marginal_side1(long_joint).p_plus
                - qm_singles_closed_form(Subensemble.LONG, Side.SIDE1, ph).p_plus),
            abs(marginal_side1(short_joint).p_plus
                - qm_singles_closed_form(Subensemble.SHORT, Side.SIDE1, ph).p_plus),
            abs(causal_singles_side2(ph).p_plus
                - causal_singles_side2_closed_form(ph).p_plus),
        )
    elapsed = time.perf_counter() - start
    report(
        2,
        f"amplitude-sum route equals every closed form "
        f"(max dev {worst:.2e}, tol 1e-9, {elapsed:.2f}s)",
        worst <= 1e-9 and elapsed < 1.0,
    )


def test_criterion_3_joint_normalization():
    worst = 0.0
    for _, _, ph in grid_13x13():
        for sub in (Subensemble.LONG, Subensemble.SHORT):
            worst = max(worst, abs(sum(qm_joint(sub, ph).as_tuple()) - 1.0))
    report(
        3,
        f"joint distributions sum to 1 for both central classes "
        f"(max dev {worst:.2e}, tol 1e-9)",
        worst <= 1e-9,
    )


def test_criterion_4_no_retro_signalling_average():
    worst = 0.0
    for _, _, ph in grid_13x13():
        average = (
            qm_singles_closed_form(Subensemble.LONG, Side.SIDE1, ph).p_plus
            + qm_singles_closed_form(Subensemble.SHORT, Side.SIDE1, ph).p_plus
        ) / 2.0
        worst = max(worst, abs(average - 0.5))
    report(
        4,
        f"class-averaged side-1 singles stay at 1/2 (max dev {worst:.2e}, tol 1e-12)",
        worst <= 1e-12,
    )


def test_criterion_5_headline_discriminator():
    start = time.perf_counter()
    aligned = PhaseSettings()  # alpha + beta = 0
    qm_model = TheoryModel(TheoryKind.QM)
    rnl_model = TheoryModel(TheoryKind.RNL)

    qm_estimate = estimate_E(
        run(RunConfig(model=qm_model, phases=aligned, events=1_000_000, seed=42)),
        qm_model,
        aligned,
    )
    rnl_estimate = estimate_E(
        run(RunConfig(model=rnl_model, phases=aligned, events=1_000_000, seed=42)),
        rnl_model,
        aligned,
    )
    elapsed = time.perf_counter() - start
    qm_ok = abs(abs(qm_estimate.value) - 2 / 3) <= 0.01
    rnl_ok = abs(rnl_estimate.value) <= 4.0 * rnl_estimate.std_error
    report(
        5,
        f"|E| = {abs(qm_estimate.value):.4f} (superposition rule, target 2/3 +/- 0.01) "
        f"and |E| = {abs(rnl_estimate.value):.4f} (RNL, within 4 sigma of 0) "
        f"at 1e6 pairs ({elapsed:.2f}s)",
        qm_ok and rnl_ok and elapsed < 10.0,
    )


def test_criterion_6_acceptance_rate_for_every_model():
    models = [
        TheoryModel(TheoryKind.QM),
        TheoryModel(TheoryKind.CAUSAL, TimeOrdering.PHOTON2_FIRST),
        TheoryModel(TheoryKind.CAUSAL, TimeOrdering.PHOTON1_FIRST),
        TheoryModel(TheoryKind.RNL),
    ]
    four_sigma = 4.0 * math.sqrt(0.375 * 0.625 / 1_000_000)
    rates = []
    for index, model in enumerate(models):
        result = run(
            RunConfig(model=model, phases=PhaseSettings(), events=1_000_000,
                      seed=1234 + index)
        )
        rates.append(result.accepted / result.events)
    worst = max(abs(rate - 0.375) for rate in rates)
    report(
        6,
        f"accepted/emitted = 3/8 within 4 sigma ({four_sigma:.2e}) for all models "
        f"(max dev {worst:.2e})",
        worst <= four_sigma,
    )


def test_criterion_7_oracle_equivalence():
    grid = [ph for _, _, ph in grid_13x13()[::13]] + [
        PhaseSettings(0.3, 1.1, -2.2),
        PhaseSettings(-0.7, 2.9, 0.8),
    ]
    oracle_report = validate_against_reference(
        default_geometry(), SplitterConvention(), phase_grid=grid, tolerance=1e-9
    )
    worst = max(check.max_deviation for check in oracle_report.checks)
    report(
        7,
        f"network-derived tables match the hand-coded ones on probabilities and "
        f"within-class ratios (max dev {worst:.2e}, tol 1e-9)",
        oracle_report.passed,
    )


def test_criterion_8_simulate_is_byte_deterministic(tmp_path, capsys):
    flags = ["simulate", "--model", "qm", "--events", "100000", "--seed", "7",
             "--alpha", "0.5", "--beta", "-0.5", "--gamma", "1.0"]
    first = tmp_path / "first.csv"
    second = tmp_path / "second.csv"
    assert main(flags + ["--out", str(first)]) == 0
    assert main(flags + ["--out", str(second)]) == 0
    capsys.readouterr()
    identical = first.read_bytes() == second.read_bytes()
    report(8, "repeated simulate invocations write byte-identical files", identical)
