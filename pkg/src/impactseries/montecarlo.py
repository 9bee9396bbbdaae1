"""Deterministic Monte Carlo emulation of the coincidence measurement.

Each emitted pair is assigned an arrival-time class with the a-priori weights
1/8, 3/8, 3/8, 1/8 (equal splitting over the eight coarse path pairs;
interference redistributes probability only within a class).  Events outside
the target class are rejected, emulating the coincidence electronics; accepted
events draw a joint outcome from the active model's distribution and feed the
four counters.

Determinism contract: events are processed in fixed blocks of ``BLOCK_SIZE``;
block ``j`` uses the PCG64 stream seeded by ``SeedSequence(seed,
spawn_key=(j,))`` and consumes exactly two uniform doubles per event (class
draw, then outcome draw), sampled by inverse CDF over ``Generator.random()``
output only.  Per-block tallies merge by addition, so the merged result is
bit-identical for any assignment of blocks to workers and reproducible across
platforms for a given seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterable, Mapping, Sequence

import numpy as np

from .amplitudes import PhaseSettings
from .pathspace import OUTCOMES, Outcome, Subensemble
from .theories import (
    JointDistribution,
    Side,
    SinglesPair,
    TheoryKind,
    TheoryModel,
    predict,
    qm_joint,
)

#: Events per RNG block; fixed so tallies are independent of worker count.
BLOCK_SIZE = 1 << 16

#: Arrival-time classes in draw order, with their a-priori weights.
SUBENSEMBLE_ORDER: tuple[Subensemble, ...] = (
    Subensemble.SATELLITE_LONG,
    Subensemble.LONG,
    Subensemble.SHORT,
    Subensemble.SATELLITE_SHORT,
)
SUBENSEMBLE_WEIGHTS: tuple[float, ...] = (0.125, 0.375, 0.375, 0.125)

_SUB_CUMULATIVE = np.cumsum(SUBENSEMBLE_WEIGHTS)

#: Axes accepted by :func:`scan_phases`.
SCAN_AXES = ("alpha", "beta", "gamma")


@dataclass(frozen=True)
class RunConfig:
    """Full provenance of one simulated run."""

    model: TheoryModel
    phases: PhaseSettings
    events: int
    seed: int
    target_sub: Subensemble = Subensemble.LONG

    def __post_init__(self) -> None:
        if self.events < 1:
            raise ValueError("events must be at least 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")


@dataclass(frozen=True)
class CoincidenceTally:
    """The four coincidence counters plus accepted/rejected totals."""

    r: Mapping[Outcome, int]
    accepted: int
    rejected: int

    def __post_init__(self) -> None:
        if set(self.r) != set(OUTCOMES):
            raise ValueError("tally must carry all four counters")
        if any(count < 0 for count in self.r.values()):
            raise ValueError("negative counter")
        if self.accepted != sum(self.r.values()):
            raise ValueError("accepted total must equal the counter sum")
        if self.rejected < 0:
            raise ValueError("negative rejected total")

    @property
    def events(self) -> int:
        return self.accepted + self.rejected

    def counts(self) -> tuple[int, int, int, int]:
        """Counters in canonical outcome order."""
        return tuple(self.r[outcome] for outcome in OUTCOMES)


@dataclass(frozen=True)
class EstimateE:
    """Side-1 counter asymmetry with its binomial error and analytic anchors."""

    value: float
    std_error: float
    analytic_qm: float
    analytic_causal: float


@dataclass(frozen=True)
class ScanPoint:
    """One grid point of a phase scan, with enough provenance to replay it."""

    angle: float
    phases: PhaseSettings
    seed: int
    events: int
    tally: CoincidenceTally
    estimate: EstimateE
    analytic_side1: SinglesPair | None
    analytic_side2: SinglesPair | None


def outcome_distribution(
    model: TheoryModel, phases: PhaseSettings, target_sub: Subensemble
) -> JointDistribution:
    """Distribution an accepted event's outcome is drawn from.

    QM samples its joint distribution for the target class.  Causal and RNL
    define no joint law, so outcomes are drawn from the product of the
    defined singles, with any undefined side filled in uniformly; this cannot
    bias the side-1 asymmetry, but it is not a physical correlation model.
    """
    if model.kind is TheoryKind.QM:
        return qm_joint(target_sub, phases)
    prediction = predict(model, phases)
    side1 = prediction.side1 or SinglesPair(0.5, 0.5, Side.SIDE1)
    side2 = prediction.side2 or SinglesPair(0.5, 0.5, Side.SIDE2)
    p1 = {"+": side1.p_plus, "-": side1.p_minus}
    p2 = {"+": side2.p_plus, "-": side2.p_minus}
    return JointDistribution(
        {outcome: p1[outcome.sigma.value] * p2[outcome.omega.value] for outcome in OUTCOMES}
    )


def _block_sizes(events: int) -> Iterable[tuple[int, int]]:
    full, remainder = divmod(events, BLOCK_SIZE)
    for j in range(full):
        yield j, BLOCK_SIZE
    if remainder:
        yield full, remainder


def block_tallies(config: RunConfig) -> list[CoincidenceTally]:
    """Per-block tallies in block order; ``run`` is their merge."""
    distribution = outcome_distribution(config.model, config.phases, config.target_sub)
    outcome_cum = np.cumsum(distribution.as_tuple())
    outcome_cum[-1] = 1.0  # guard against rounding below the top uniform
    target_index = SUBENSEMBLE_ORDER.index(config.target_sub)

    tallies = []
    for j, size in _block_sizes(config.events):
        rng = np.random.Generator(
            np.random.PCG64(np.random.SeedSequence(config.seed, spawn_key=(j,)))
        )
        u_class = rng.random(size)
        u_outcome = rng.random(size)
        class_index = np.searchsorted(_SUB_CUMULATIVE, u_class, side="right")
        accepted_mask = class_index == target_index
        outcome_index = np.searchsorted(
            outcome_cum, u_outcome[accepted_mask], side="right"
        )
        counts = np.bincount(outcome_index, minlength=4)
        accepted = int(accepted_mask.sum())
        tallies.append(
            CoincidenceTally(
                r={outcome: int(count) for outcome, count in zip(OUTCOMES, counts)},
                accepted=accepted,
                rejected=size - accepted,
            )
        )
    return tallies


def merge_tallies(tallies: Iterable[CoincidenceTally]) -> CoincidenceTally:
    """Component-wise sum; the order of the tallies does not matter."""
    r = {outcome: 0 for outcome in OUTCOMES}
    accepted = 0
    rejected = 0
    for tally in tallies:
        for outcome in OUTCOMES:
            r[outcome] += tally.r[outcome]
        accepted += tally.accepted
        rejected += tally.rejected
    return CoincidenceTally(r=r, accepted=accepted, rejected=rejected)


def run(config: RunConfig) -> CoincidenceTally:
    """Simulate ``config.events`` pairs and tally the accepted coincidences."""
    return merge_tallies(block_tallies(config))


def estimate_E(
    tally: CoincidenceTally, model: TheoryModel, phases: PhaseSettings
) -> EstimateE:
    """Normalized side-1 counter asymmetry (R++ + R+- - R-+ - R--)/accepted.

    ``model`` is carried for provenance only; the analytic anchors are the
    superposition-rule value (2/3)*|cos(alpha+beta)| and the causal value 0,
    so any tally can be compared against both.
    """
    if tally.accepted == 0:
        raise ValueError("cannot estimate E from an empty tally")
    n = tally.accepted
    plus_side1 = tally.r[Outcome.PLUS_PLUS] + tally.r[Outcome.PLUS_MINUS]
    value = (2 * plus_side1 - n) / n
    p = plus_side1 / n
    std_error = 2.0 * math.sqrt(p * (1.0 - p) / n)
    return EstimateE(
        value=value,
        std_error=std_error,
        analytic_qm=(2.0 / 3.0) * abs(math.cos(phases.alpha + phases.beta)),
        analytic_causal=0.0,
    )


def tally_marginals(tally: CoincidenceTally) -> tuple[SinglesPair, SinglesPair]:
    """Estimated singles (side 1, side 2) from the coincidence counters."""
    if tally.accepted == 0:
        raise ValueError("cannot estimate marginals from an empty tally")
    n = tally.accepted
    side1 = SinglesPair(
        (tally.r[Outcome.PLUS_PLUS] + tally.r[Outcome.PLUS_MINUS]) / n,
        (tally.r[Outcome.MINUS_PLUS] + tally.r[Outcome.MINUS_MINUS]) / n,
        Side.SIDE1,
    )
    side2 = SinglesPair(
        (tally.r[Outcome.PLUS_PLUS] + tally.r[Outcome.MINUS_PLUS]) / n,
        (tally.r[Outcome.PLUS_MINUS] + tally.r[Outcome.MINUS_MINUS]) / n,
        Side.SIDE2,
    )
    return side1, side2


def derive_point_seed(seed: int, index: int) -> int:
    """Stable 64-bit seed for grid point ``index`` of a scan."""
    stream = np.random.SeedSequence(seed, spawn_key=(index,))
    return int(stream.generate_state(1, np.uint64)[0])


def scan_phases(
    model: TheoryModel,
    axis: str,
    grid: Sequence[float],
    base: PhaseSettings,
    events_per_point: int,
    seed: int,
) -> list[ScanPoint]:
    """One simulated run per grid angle, alongside the analytic singles.

    ``axis`` names the phase being swept; the other two stay at their ``base``
    values.  Point ``k`` runs with the derived seed
    :func:`derive_point_seed`\\ ``(seed, k)``, which is embedded in the result
    so any single point can be replayed with :func:`run`.
    """
    if axis not in SCAN_AXES:
        raise ValueError(f"axis must be one of {SCAN_AXES}")
    if len(grid) == 0:
        raise ValueError("grid must not be empty")
    points = []
    for k, angle in enumerate(grid):
        phases = replace(base, **{axis: float(angle)})
        point_seed = derive_point_seed(seed, k)
        config = RunConfig(
            model=model, phases=phases, events=events_per_point, seed=point_seed
        )
        tally = run(config)
        prediction = predict(model, phases)
        points.append(
            ScanPoint(
                angle=float(angle),
                phases=phases,
                seed=point_seed,
                events=events_per_point,
                tally=tally,
                estimate=estimate_E(tally, model, phases),
                analytic_side1=prediction.side1,
                analytic_side2=prediction.side2,
            )
        )
    return points
