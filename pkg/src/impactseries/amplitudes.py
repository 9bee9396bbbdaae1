"""Closed-form probability amplitudes for the in-scope paths.

Joint amplitudes are tabulated for the six path pairs of the two central
arrival-time classes (difference ``L`` and difference ``l``); each table is
normalized to its own three pairs, which fixes every entry's magnitude at
``1/(2*sqrt(3))``.  Single-path amplitudes cover photon 2's three paths
``Ll``, ``lL`` and ``LL`` as if the setup carried only those paths, which
fixes their magnitude at ``1/sqrt(6)``.  The two satellite pairs ``(l,LL)``
and ``(L,ll)`` have no table; nothing in scope needs them.

Phase bookkeeping: ``alpha`` sits on photon 1's long arm, ``beta`` on the long
arm of photon 2's first interferometer, ``gamma`` on the second one.  Each
tabulated entry is a fixed unit coefficient times ``exp(i*(k_a*alpha +
k_b*beta + k_g*gamma))`` with small integer exponents; the network derivation
in :mod:`impactseries.bsnetwork` reproduces these tables independently.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .pathspace import (
    Arm,
    Arm2Path,
    Outcome,
    PathPair,
    Sign,
    Subensemble,
    classify,
)

#: Magnitude shared by every joint-table entry.
JOINT_MAGNITUDE = 1.0 / (2.0 * math.sqrt(3.0))

#: Magnitude shared by every single-path-table entry.
SINGLE_MAGNITUDE = 1.0 / math.sqrt(6.0)


@dataclass(frozen=True)
class PhaseSettings:
    """The three adjustable phases, in radians, on the long arms."""

    alpha: float = 0.0
    beta: float = 0.0
    gamma: float = 0.0

    def __post_init__(self) -> None:
        for name in ("alpha", "beta", "gamma"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"phase {name} must be finite")


# Joint tables.  Per pair: integer phase exponents (k_alpha, k_beta, k_gamma)
# and the unit coefficient per outcome, in the order ++, +-, -+, --.
_JOINT_TABLE: dict[PathPair, tuple[tuple[int, int, int], dict[Outcome, complex]]] = {
    # difference-L class
    PathPair(Arm.SHORT, Arm2Path.LONG_SHORT): (
        (0, 1, 0),
        {
            Outcome.PLUS_PLUS: -1,
            Outcome.PLUS_MINUS: -1j,
            Outcome.MINUS_PLUS: -1j,
            Outcome.MINUS_MINUS: 1,
        },
    ),
    PathPair(Arm.SHORT, Arm2Path.SHORT_LONG): (
        (0, 0, 1),
        {
            Outcome.PLUS_PLUS: -1,
            Outcome.PLUS_MINUS: 1j,
            Outcome.MINUS_PLUS: -1j,
            Outcome.MINUS_MINUS: -1,
        },
    ),
    PathPair(Arm.LONG, Arm2Path.LONG_LONG): (
        (1, 1, 1),
        {
            Outcome.PLUS_PLUS: 1,
            Outcome.PLUS_MINUS: -1j,
            Outcome.MINUS_PLUS: -1j,
            Outcome.MINUS_MINUS: -1,
        },
    ),
    # difference-l class
    PathPair(Arm.SHORT, Arm2Path.SHORT_SHORT): (
        (0, 0, 0),
        {
            Outcome.PLUS_PLUS: 1,
            Outcome.PLUS_MINUS: 1j,
            Outcome.MINUS_PLUS: 1j,
            Outcome.MINUS_MINUS: -1,
        },
    ),
    PathPair(Arm.LONG, Arm2Path.SHORT_LONG): (
        (1, 0, 1),
        {
            Outcome.PLUS_PLUS: 1,
            Outcome.PLUS_MINUS: -1j,
            Outcome.MINUS_PLUS: -1j,
            Outcome.MINUS_MINUS: -1,
        },
    ),
    PathPair(Arm.LONG, Arm2Path.LONG_SHORT): (
        (1, 1, 0),
        {
            Outcome.PLUS_PLUS: 1,
            Outcome.PLUS_MINUS: 1j,
            Outcome.MINUS_PLUS: -1j,
            Outcome.MINUS_MINUS: 1,
        },
    ),
}

# Single-path table for photon 2: exponents and coefficient per detector sign.
_SINGLE_TABLE: dict[Arm2Path, tuple[tuple[int, int, int], dict[Sign, complex]]] = {
    Arm2Path.LONG_SHORT: ((0, 1, 0), {Sign.PLUS: -1, Sign.MINUS: -1j}),
    Arm2Path.SHORT_LONG: ((0, 0, 1), {Sign.PLUS: -1, Sign.MINUS: 1j}),
    Arm2Path.LONG_LONG: ((0, 1, 1), {Sign.PLUS: -1, Sign.MINUS: 1j}),
}


def _phase_factor(exponents: tuple[int, int, int], phases: PhaseSettings) -> complex:
    k_a, k_b, k_g = exponents
    return cmath.exp(1j * (k_a * phases.alpha + k_b * phases.beta + k_g * phases.gamma))


def _joint_entry(pair: PathPair, outcome: Outcome, phases: PhaseSettings) -> complex:
    exponents, coefficients = _JOINT_TABLE[pair]
    return coefficients[outcome] * JOINT_MAGNITUDE * _phase_factor(exponents, phases)


def amp_joint_long(pair: PathPair, outcome: Outcome, phases: PhaseSettings) -> complex:
    """Joint amplitude for a pair in the difference-``L`` class.

    Raises ``ValueError`` for pairs outside that class; they belong to a
    different table (or, for the satellites, to no table at all).
    """
    if classify(pair) is not Subensemble.LONG:
        raise ValueError(f"path pair {pair.label} is not in the difference-L class")
    return _joint_entry(pair, outcome, phases)


def amp_joint_short(pair: PathPair, outcome: Outcome, phases: PhaseSettings) -> complex:
    """Joint amplitude for a pair in the difference-``l`` class."""
    if classify(pair) is not Subensemble.SHORT:
        raise ValueError(f"path pair {pair.label} is not in the difference-l class")
    return _joint_entry(pair, outcome, phases)


def amp_single(path: Arm2Path, sign: Sign, phases: PhaseSettings) -> complex:
    """Single-path amplitude for photon 2 reaching detector ``sign``.

    Defined for the three paths Ll, lL, LL that coexist with a difference-L
    coincidence selection; the path ll is not part of this table.
    """
    if path not in _SINGLE_TABLE:
        raise ValueError(f"path {path.value} has no single-path amplitude")
    exponents, coefficients = _SINGLE_TABLE[path]
    return coefficients[sign] * SINGLE_MAGNITUDE * _phase_factor(exponents, phases)
