"""Coplanar spin-measurement geometry and two-party correlations.

All measurement directions live in a single fixed plane, so a direction is
one angle. Correlations follow the sign convention in which a pair measured
along directions separated by an angle d correlates as cos(d); the matching
probability is then (1 + cos d) / 2.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

TWO_PI = 2.0 * math.pi

#: Classical CHSH bound.
CLASSICAL_BOUND = 2.0
#: Quantum-mechanical CHSH maximum, 2*sqrt(2).
TSIRELSON_BOUND = 2.0 * math.sqrt(2.0)


@dataclass(frozen=True)
class Direction:
    """A unit vector in the measurement plane, stored as an angle in radians.

    Angles are canonicalized to [0, 2*pi). Use :meth:`from_degrees` at
    external boundaries; internal arithmetic stays in radians.
    """

    angle: float

    def __post_init__(self):
        if not math.isfinite(self.angle):
            raise ValueError(f"direction angle must be finite, got {self.angle!r}")
        reduced = self.angle % TWO_PI
        # a % can round up to the modulus itself for tiny negative inputs
        if reduced >= TWO_PI:
            reduced = 0.0
        object.__setattr__(self, "angle", reduced)

    @classmethod
    def from_degrees(cls, degrees: float) -> Direction:
        return cls(math.radians(degrees))

    @property
    def degrees(self) -> float:
        return math.degrees(self.angle)

    def rotated(self, radians: float) -> Direction:
        return Direction(self.angle + radians)


@dataclass(frozen=True)
class SettingsQuad:
    """The four apparatus directions of a CHSH arrangement."""

    a: Direction
    a_prime: Direction
    b: Direction
    b_prime: Direction


def dot(d1: Direction, d2: Direction) -> float:
    """Dot product of two coplanar unit vectors: cos of the angle between."""
    return math.cos(d1.angle - d2.angle)


def correlation(alpha: Direction, beta: Direction) -> float:
    """Two-party correlation E(alpha, beta) for a shared pair.

    Equal to the dot product under the outcome-relabeling convention that
    makes parallel settings correlate perfectly (+1).
    """
    return dot(alpha, beta)


def match_probability(alpha: Direction, beta: Direction) -> float:
    """Probability that outcomes along alpha and beta agree: (1 + E) / 2."""
    return 0.5 * (1.0 + correlation(alpha, beta))


def standard_chsh_settings() -> SettingsQuad:
    """The maximally violating arrangement: a=0, a'=90, b=45, b'=135 degrees.

    Gives a.b = a'.b = a'.b' = 1/sqrt(2), a.b' = -1/sqrt(2), and a CHSH
    value of 2*sqrt(2).
    """
    return SettingsQuad(
        a=Direction.from_degrees(0.0),
        a_prime=Direction.from_degrees(90.0),
        b=Direction.from_degrees(45.0),
        b_prime=Direction.from_degrees(135.0),
    )


def modified_settings_55_35() -> SettingsQuad:
    """Standard arrangement with b' moved to 55 degrees from a (35 from a').

    This keeps a, a', b unchanged and puts the CHSH value below the
    classical bound of 2.
    """
    return SettingsQuad(
        a=Direction.from_degrees(0.0),
        a_prime=Direction.from_degrees(90.0),
        b=Direction.from_degrees(45.0),
        b_prime=Direction.from_degrees(55.0),
    )


def chsh_s(q: SettingsQuad) -> float:
    """CHSH combination |E(a,b) - E(a,b') + E(a',b) + E(a',b')|."""
    return abs(
        correlation(q.a, q.b)
        - correlation(q.a, q.b_prime)
        + correlation(q.a_prime, q.b)
        + correlation(q.a_prime, q.b_prime)
    )


class ChshClass(enum.Enum):
    """Where a CHSH value falls relative to the classical and quantum bounds."""

    LOCAL_COMPATIBLE = "local_compatible"
    QUANTUM_VIOLATING = "quantum_violating"
    SUPER_QUANTUM = "super_quantum"


def classify_chsh(s: float) -> ChshClass:
    """Classify a CHSH value S >= 0 against the bounds 2 and 2*sqrt(2).

    Comparisons are exact on the computed double; boundary values belong
    to the lower class.
    """
    if s <= CLASSICAL_BOUND:
        return ChshClass.LOCAL_COMPATIBLE
    if s <= TSIRELSON_BOUND:
        return ChshClass.QUANTUM_VIOLATING
    return ChshClass.SUPER_QUANTUM
