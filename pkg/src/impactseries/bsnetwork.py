"""First-principles derivation of the amplitude tables from splitter cascades.

Every path amplitude is a product of elementary factors: a complex
transmission or reflection coefficient at each splitter and ``exp(i*phase)``
on each phased arm.  The wiring of the cascade is data, described by a small
plain-text format, so alternative readings of the optical layout can be tried
against the hand-coded tables in :mod:`impactseries.amplitudes`.

Network model. Each photon crosses a chain of two-port splitters with ports
``a`` and ``b``; consecutive splitters are connected by a short and a long
arm (one stage), and the long arm may carry one of the named phases.  Photon
1 has one stage; photon 2 has two, with the middle splitter shared between
them, which is the default reading of the layout (it reproduces the reference
tables; a chain with a separate exit and entrance splitter in the middle does
not).  Detectors sit on the two output ports of the last splitter.

Geometry file format (``#`` starts a comment)::

    photon1.source = a              # port the photon enters the first splitter on
    photon1.stage1.short = a->a     # leaves splitter 1 on out-port a, enters splitter 2 on in-port a
    photon1.stage1.long  = b->b phase=alpha
    photon1.detector.plus  = a      # out-port of the last splitter
    photon1.detector.minus = b
    photon2.source = a
    photon2.stage1.short = a->a
    photon2.stage1.long  = b->b phase=beta
    photon2.stage2.short = a->a
    photon2.stage2.long  = b->b phase=gamma
    photon2.detector.plus  = a
    photon2.detector.minus = b

Derived tables are compared with the reference ones on probabilities and on
within-class amplitude ratios only; absolute phases are unphysical and are
never asserted.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum, unique
from pathlib import Path
from typing import Iterable, Mapping, Sequence, Union

from .amplitudes import (
    JOINT_MAGNITUDE,
    SINGLE_MAGNITUDE,
    PhaseSettings,
    amp_joint_long,
    amp_joint_short,
    amp_single,
)
from .pathspace import (
    OUTCOMES,
    Arm,
    Arm2Path,
    Outcome,
    PathPair,
    Sign,
    Subensemble,
    members,
)

_UNITARITY_TOL = 1e-12
_INV_SQRT2 = 1.0 / math.sqrt(2.0)

PORTS = ("a", "b")
PHASE_NAMES = ("alpha", "beta", "gamma")


@dataclass(frozen=True)
class SplitterConvention:
    """Transmission/reflection amplitudes of the (identical) splitters."""

    t: complex = complex(_INV_SQRT2, 0.0)
    r: complex = complex(0.0, _INV_SQRT2)

    def is_unitary(self, tol: float = _UNITARITY_TOL) -> bool:
        norm = abs(abs(self.t) ** 2 + abs(self.r) ** 2 - 1.0)
        cross = abs(self.t * self.r.conjugate() + self.r * self.t.conjugate())
        return norm <= tol and cross <= tol

    def require_unitary(self) -> None:
        if not self.is_unitary():
            raise ValueError(
                "splitter convention is not unitary: need |t|^2+|r|^2 = 1 "
                "and t*conj(r) + r*conj(t) = 0"
            )


@unique
class SplitterAction(Enum):
    TRANSMIT = "t"
    REFLECT = "r"


@dataclass(frozen=True)
class PhaseShift:
    angle: float


Segment = Union[SplitterAction, PhaseShift]
PathTrace = tuple[Segment, ...]


def trace_amplitude(trace: PathTrace, convention: SplitterConvention) -> complex:
    """Product of the per-element factors along one path."""
    amplitude = complex(1.0, 0.0)
    for segment in trace:
        if segment is SplitterAction.TRANSMIT:
            amplitude *= convention.t
        elif segment is SplitterAction.REFLECT:
            amplitude *= convention.r
        else:
            amplitude *= complex(math.cos(segment.angle), math.sin(segment.angle))
    return amplitude


@dataclass(frozen=True)
class ArmWiring:
    """One arm: out-port it leaves on, in-port it arrives on, optional phase."""

    out_port: str
    in_port: str
    phase: str | None = None

    def __post_init__(self) -> None:
        if self.out_port not in PORTS or self.in_port not in PORTS:
            raise ValueError(f"ports must be one of {PORTS}")
        if self.phase is not None and self.phase not in PHASE_NAMES:
            raise ValueError(f"phase must be one of {PHASE_NAMES}")


@dataclass(frozen=True)
class Stage:
    short: ArmWiring
    long: ArmWiring

    def __post_init__(self) -> None:
        if self.short.out_port == self.long.out_port:
            raise ValueError(
                f"both arms leave on out-port {self.short.out_port}; "
                f"the other out-port dangles"
            )
        if self.short.in_port == self.long.in_port:
            raise ValueError(
                f"both arms arrive on in-port {self.short.in_port}; "
                f"the other in-port dangles"
            )


@dataclass(frozen=True)
class PhotonWiring:
    """A photon's splitter cascade: source port, stages, detector ports."""

    source_port: str
    stages: tuple[Stage, ...]
    detector_plus: str
    detector_minus: str

    def __post_init__(self) -> None:
        if self.source_port not in PORTS:
            raise ValueError(f"source port must be one of {PORTS}")
        if not self.stages:
            raise ValueError("a cascade needs at least one stage")
        if self.detector_plus not in PORTS or self.detector_minus not in PORTS:
            raise ValueError(f"detector ports must be one of {PORTS}")
        if self.detector_plus == self.detector_minus:
            raise ValueError("both detectors on one out-port; the other dangles")


@dataclass(frozen=True)
class Geometry:
    photon1: PhotonWiring
    photon2: PhotonWiring


def default_geometry() -> Geometry:
    """Straight wiring with the middle splitter of photon 2's chain shared."""
    straight_short = ArmWiring("a", "a")
    return Geometry(
        photon1=PhotonWiring(
            source_port="a",
            stages=(Stage(straight_short, ArmWiring("b", "b", "alpha")),),
            detector_plus="a",
            detector_minus="b",
        ),
        photon2=PhotonWiring(
            source_port="a",
            stages=(
                Stage(straight_short, ArmWiring("b", "b", "beta")),
                Stage(straight_short, ArmWiring("b", "b", "gamma")),
            ),
            detector_plus="a",
            detector_minus="b",
        ),
    )


_ARM_PATTERN = re.compile(
    r"^(?P<out>[ab])\s*->\s*(?P<in>[ab])(?:\s+phase=(?P<phase>\w+))?$"
)


def parse_geometry(text: str) -> Geometry:
    """Parse the plain-text wiring format documented in the module docstring."""
    entries: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key in entries:
            raise ValueError(f"line {lineno}: duplicate key {key!r}")
        entries[key] = value

    def take(key: str) -> str:
        if key not in entries:
            raise ValueError(f"missing geometry entry {key!r}")
        return entries.pop(key)

    def arm(key: str) -> ArmWiring:
        value = take(key)
        match = _ARM_PATTERN.match(value)
        if match is None:
            raise ValueError(f"{key}: cannot parse arm wiring {value!r}")
        return ArmWiring(match["out"], match["in"], match["phase"])

    def photon(prefix: str) -> PhotonWiring:
        source = take(f"{prefix}.source")
        stages = []
        index = 1
        while f"{prefix}.stage{index}.short" in entries or f"{prefix}.stage{index}.long" in entries:
            stages.append(
                Stage(arm(f"{prefix}.stage{index}.short"), arm(f"{prefix}.stage{index}.long"))
            )
            index += 1
        return PhotonWiring(
            source_port=source,
            stages=tuple(stages),
            detector_plus=take(f"{prefix}.detector.plus"),
            detector_minus=take(f"{prefix}.detector.minus"),
        )

    geometry = Geometry(photon1=photon("photon1"), photon2=photon("photon2"))
    if entries:
        raise ValueError(f"unrecognized geometry entries: {sorted(entries)}")
    return geometry


def load_geometry(path: str | Path) -> Geometry:
    return parse_geometry(Path(path).read_text(encoding="utf-8"))


def path_trace(
    wiring: PhotonWiring,
    arms: Sequence[Arm],
    detector: Sign,
    phases: PhaseSettings,
) -> PathTrace:
    """Element sequence for one choice of arms ending at one detector."""
    if len(arms) != len(wiring.stages):
        raise ValueError("one arm choice is needed per stage")
    segments: list[Segment] = []
    port = wiring.source_port
    for stage, arm in zip(wiring.stages, arms):
        chosen = stage.short if arm is Arm.SHORT else stage.long
        segments.append(
            SplitterAction.TRANSMIT if chosen.out_port == port else SplitterAction.REFLECT
        )
        if chosen.phase is not None:
            segments.append(PhaseShift(getattr(phases, chosen.phase)))
        port = chosen.in_port
    detector_port = wiring.detector_plus if detector is Sign.PLUS else wiring.detector_minus
    segments.append(
        SplitterAction.TRANSMIT if detector_port == port else SplitterAction.REFLECT
    )
    return tuple(segments)


@dataclass(frozen=True)
class DerivedTables:
    """Network-derived amplitudes, renormalized like the reference tables."""

    joint: Mapping[tuple[PathPair, Outcome], complex]
    single: Mapping[tuple[Arm2Path, Sign], complex]


def _renormalize(raw: dict, keys: Iterable) -> None:
    total = sum(abs(raw[key]) ** 2 for key in keys)
    if total <= 0.0:
        raise ValueError("cascade yields zero total probability; cannot renormalize")
    scale = 1.0 / math.sqrt(total)
    for key in keys:
        raw[key] = raw[key] * scale


def derive_tables(
    geometry: Geometry,
    convention: SplitterConvention,
    phases: PhaseSettings,
) -> DerivedTables:
    """Path-by-path amplitudes of the cascade at the given phase settings.

    Joint entries cover the six pairs of the two central arrival-time
    classes, renormalized within each class; single-path entries cover
    photon 2's paths Ll, lL, LL, renormalized over those three.
    """
    convention.require_unitary()
    if len(geometry.photon1.stages) != 1 or len(geometry.photon2.stages) != 2:
        raise ValueError(
            "reference tables need one stage for photon 1 and two for photon 2"
        )

    amp1 = {
        (arm, sign): trace_amplitude(
            path_trace(geometry.photon1, (arm,), sign, phases), convention
        )
        for arm in Arm
        for sign in Sign
    }
    amp2 = {
        (path, sign): trace_amplitude(
            path_trace(geometry.photon2, (path.first, path.second), sign, phases),
            convention,
        )
        for path in Arm2Path
        for sign in Sign
    }

    joint: dict[tuple[PathPair, Outcome], complex] = {}
    for sub in (Subensemble.LONG, Subensemble.SHORT):
        for pair in members(sub):
            for outcome in OUTCOMES:
                joint[(pair, outcome)] = (
                    amp1[(pair.photon1, outcome.sigma)]
                    * amp2[(pair.photon2, outcome.omega)]
                )
        _renormalize(
            joint, [(pair, outcome) for pair in members(sub) for outcome in OUTCOMES]
        )

    single_paths = (Arm2Path.LONG_SHORT, Arm2Path.SHORT_LONG, Arm2Path.LONG_LONG)
    single = {(path, sign): amp2[(path, sign)] for path in single_paths for sign in Sign}
    _renormalize(single, list(single))

    return DerivedTables(joint=joint, single=single)


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one validation check, aggregated over a phase grid."""

    name: str
    max_deviation: float
    tolerance: float
    passed: bool
    first_mismatch: str | None = None


@dataclass(frozen=True)
class OracleReport:
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)


# Grid intentionally mixes symmetric and incommensurate angles.
_DEFAULT_GRID_VALUES = (0.0, 0.7, 1.9, math.pi, 4.4)


def default_phase_grid() -> tuple[PhaseSettings, ...]:
    return tuple(
        PhaseSettings(a, b, g)
        for a in _DEFAULT_GRID_VALUES
        for b in _DEFAULT_GRID_VALUES
        for g in _DEFAULT_GRID_VALUES
    )


class _Check:
    """Accumulates deviations and remembers the first point past tolerance."""

    def __init__(self, name: str, tolerance: float) -> None:
        self.name = name
        self.tolerance = tolerance
        self.max_deviation = 0.0
        self.first_mismatch: str | None = None

    def record(self, deviation: float, description: str) -> None:
        if deviation > self.max_deviation:
            self.max_deviation = deviation
        if deviation > self.tolerance and self.first_mismatch is None:
            self.first_mismatch = description

    def result(self) -> CheckResult:
        return CheckResult(
            name=self.name,
            max_deviation=self.max_deviation,
            tolerance=self.tolerance,
            passed=self.max_deviation <= self.tolerance,
            first_mismatch=self.first_mismatch,
        )


_REFERENCE_JOINT = {Subensemble.LONG: amp_joint_long, Subensemble.SHORT: amp_joint_short}


def _phase_label(phases: PhaseSettings) -> str:
    return f"alpha={phases.alpha:.6g} beta={phases.beta:.6g} gamma={phases.gamma:.6g}"


def validate_against_reference(
    geometry: Geometry,
    convention: SplitterConvention,
    phase_grid: Sequence[PhaseSettings] | None = None,
    tolerance: float = 1e-9,
) -> OracleReport:
    """Compare the cascade-derived tables against the hand-coded ones.

    Checks, per arrival-time class: entry magnitudes, within-class amplitude
    ratios relative to the class's first member, and the joint outcome
    probabilities obtained by superposing the class members.  The single-path
    table is checked the same way, plus the sequential-impact singles law
    built from it.  Ratios and probabilities are global-phase-free, so a
    cascade matching them reproduces the tables in every physical respect.
    """
    if phase_grid is None:
        phase_grid = default_phase_grid()

    checks: dict[str, _Check] = {}

    def check(name: str) -> _Check:
        if name not in checks:
            checks[name] = _Check(name, tolerance)
        return checks[name]

    for phases in phase_grid:
        tables = derive_tables(geometry, convention, phases)

        for sub in (Subensemble.LONG, Subensemble.SHORT):
            reference = _REFERENCE_JOINT[sub]
            pairs = members(sub)
            anchor = pairs[0]
            magnitude_check = check(f"joint magnitudes, difference-{sub.value} class")
            ratio_check = check(f"joint amplitude ratios, difference-{sub.value} class")
            prob_check = check(f"joint probabilities, difference-{sub.value} class")

            for pair in pairs:
                for outcome in OUTCOMES:
                    derived = tables.joint[(pair, outcome)]
                    magnitude_check.record(
                        abs(abs(derived) - JOINT_MAGNITUDE),
                        f"|A{outcome.value}{pair.label}| = {abs(derived):.12g}, "
                        f"expected {JOINT_MAGNITUDE:.12g} at {_phase_label(phases)}",
                    )
                    if pair is anchor:
                        continue
                    derived_ratio = derived / tables.joint[(anchor, outcome)]
                    reference_ratio = reference(pair, outcome, phases) / reference(
                        anchor, outcome, phases
                    )
                    ratio_check.record(
                        abs(derived_ratio - reference_ratio),
                        f"A{outcome.value}{pair.label}/A{outcome.value}{anchor.label}: "
                        f"derived {derived_ratio:.9g}, reference {reference_ratio:.9g} "
                        f"at {_phase_label(phases)}",
                    )

            for outcome in OUTCOMES:
                derived_p = abs(sum(tables.joint[(pair, outcome)] for pair in pairs)) ** 2
                reference_p = abs(sum(reference(pair, outcome, phases) for pair in pairs)) ** 2
                prob_check.record(
                    abs(derived_p - reference_p),
                    f"P({outcome.value}): derived {derived_p:.12g}, "
                    f"reference {reference_p:.12g} at {_phase_label(phases)}",
                )

        single_paths = (Arm2Path.LONG_SHORT, Arm2Path.SHORT_LONG, Arm2Path.LONG_LONG)
        anchor_path = single_paths[0]
        magnitude_check = check("single-path magnitudes")
        ratio_check = check("single-path amplitude ratios")
        singles_check = check("sequential-impact singles probabilities")

        for path in single_paths:
            for sign in Sign:
                derived = tables.single[(path, sign)]
                magnitude_check.record(
                    abs(abs(derived) - SINGLE_MAGNITUDE),
                    f"|A{sign.value}({path.value})| = {abs(derived):.12g}, "
                    f"expected {SINGLE_MAGNITUDE:.12g} at {_phase_label(phases)}",
                )
                if path is anchor_path:
                    continue
                derived_ratio = derived / tables.single[(anchor_path, sign)]
                reference_ratio = amp_single(path, sign, phases) / amp_single(
                    anchor_path, sign, phases
                )
                ratio_check.record(
                    abs(derived_ratio - reference_ratio),
                    f"A{sign.value}({path.value})/A{sign.value}({anchor_path.value}): "
                    f"derived {derived_ratio:.9g}, reference {reference_ratio:.9g} "
                    f"at {_phase_label(phases)}",
                )

        for sign in Sign:
            derived_p = (
                abs(tables.single[(Arm2Path.LONG_LONG, sign)]) ** 2
                + abs(
                    tables.single[(Arm2Path.LONG_SHORT, sign)]
                    + tables.single[(Arm2Path.SHORT_LONG, sign)]
                )
                ** 2
            )
            reference_p = (
                abs(amp_single(Arm2Path.LONG_LONG, sign, phases)) ** 2
                + abs(
                    amp_single(Arm2Path.LONG_SHORT, sign, phases)
                    + amp_single(Arm2Path.SHORT_LONG, sign, phases)
                )
                ** 2
            )
            singles_check.record(
                abs(derived_p - reference_p),
                f"P{sign.value} (sequential impacts): derived {derived_p:.12g}, "
                f"reference {reference_p:.12g} at {_phase_label(phases)}",
            )

    return OracleReport(checks=tuple(check.result() for check in checks.values()))
