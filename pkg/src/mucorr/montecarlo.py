"""Seeded Monte Carlo cross-checks for the analytic results.

All randomness flows from numpy's PCG64. A run is identified by
(seed, stream index): independent quantities inside one run draw from
substreams derived via SeedSequence(seed, spawn_key=(index,)), so adding
or reordering estimates never changes any other estimate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .counterfactual import pearson_pm1
from .errors import DomainError
from .nsbox import NsBox
from .spin import Direction, match_probability


@dataclass(frozen=True)
class SampleConfig:
    """Size and seed of one Monte Carlo run."""

    n_samples: int = 1_000_000
    seed: int = 42

    def __post_init__(self):
        if not isinstance(self.n_samples, int) or self.n_samples < 1:
            raise DomainError(
                f"n_samples must be a positive integer, got {self.n_samples!r}"
            )
        if not isinstance(self.seed, int) or self.seed < 0:
            raise DomainError(
                f"seed must be a non-negative integer, got {self.seed!r}"
            )


@dataclass(frozen=True)
class EmpiricalEstimate:
    """Point estimate with its standard error and sample count."""

    value: float
    std_error: float
    n_samples: int

    def within_band(self, expected: float, width: float = 4.0) -> bool:
        """Whether expected lies inside value +/- width * std_error."""
        return abs(self.value - expected) <= width * self.std_error


def make_generator(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def substream(seed: int, index: int) -> np.random.Generator:
    """Generator for one independent quantity within a seeded run."""
    seq = np.random.SeedSequence(seed, spawn_key=(index,))
    return np.random.Generator(np.random.PCG64(seq))


def sample_signs(rng: np.random.Generator, n: int) -> np.ndarray:
    """n independent fair +/-1 outcomes."""
    return rng.integers(0, 2, size=n) * 2 - 1


def flip_to_match(
    rng: np.random.Generator, base: np.ndarray, p_match: float
) -> np.ndarray:
    """Outcomes equal to base with probability p_match, else negated."""
    agree = rng.random(base.shape[0]) < p_match
    return np.where(agree, base, -base)


def sample_pair(
    alpha: Direction, beta: Direction, n: int, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """Outcome pairs for spin measurements along two directions.

    Marginals are fair coins; the pair agrees with probability
    (1 + cos(alpha - beta)) / 2, so the sample correlation estimates
    cos(alpha - beta).
    """
    first = sample_signs(rng, n)
    second = flip_to_match(rng, first, match_probability(alpha, beta))
    return first, second


def sample_counterfactual_ci(
    theta: Direction,
    a: Direction,
    a_prime: Direction,
    n: int,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray]:
    """Measured and unmeasured outcomes under conditional independence.

    Both outcomes are tied to a shared +/-1 source aligned with theta and
    are otherwise independent, so their correlation is the product
    cos(theta - a) * cos(theta - a_prime).
    """
    source = sample_signs(rng, n)
    measured = flip_to_match(rng, source, match_probability(theta, a))
    unmeasured = flip_to_match(rng, source, match_probability(theta, a_prime))
    return measured, unmeasured


def sample_coin(n: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Fair coin tosses and the counterfactual re-toss of the same coins.

    Nothing ties a toss to its counterfactual alternative, so the
    unmeasured sequence is an independent fair sequence and the
    correlation is 0.
    """
    measured = sample_signs(rng, n)
    unmeasured = sample_signs(rng, n)
    return measured, unmeasured


def sample_shapes(
    n: int,
    rng: np.random.Generator,
    red_given_cube: float = 0.75,
    blue_given_sphere: float = 0.75,
) -> tuple[np.ndarray, np.ndarray]:
    """Object drawn from a box: shape is observed, color is not.

    Shape (cube = +1, sphere = -1) is a fair coin; color (red = +1,
    blue = -1) depends on shape through the two conditional rates.
    """
    for name, value in (
        ("red_given_cube", red_given_cube),
        ("blue_given_sphere", blue_given_sphere),
    ):
        if not 0.0 <= value <= 1.0:
            raise DomainError(f"{name} must lie in [0, 1], got {value!r}")
    shape = sample_signs(rng, n)
    u = rng.random(n)
    red = np.where(shape == 1, u < red_given_cube, u >= blue_given_sphere)
    color = np.where(red, 1, -1)
    return shape, color


def shapes_rho(red_given_cube: float = 0.75, blue_given_sphere: float = 0.75) -> float:
    """Analytic shape/color correlation for :func:`sample_shapes`."""
    cov = red_given_cube + blue_given_sphere - 1.0
    mean_color = red_given_cube - blue_given_sphere
    sd_color = math.sqrt(1.0 - mean_color ** 2)
    if sd_color == 0.0:
        raise DomainError("color is deterministic, correlation undefined")
    return cov / sd_color


def sample_nsbox(
    box: NsBox, a_in: int, b_in: int, n: int, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """Output pairs (A, B) in {0,1} drawn from one input pair of a box."""
    flat = box.joint(a_in, b_in).reshape(4)
    if (flat < 0).any():
        raise DomainError("cannot sample a box with negative entries")
    edges = np.cumsum(flat)
    if abs(float(edges[3]) - 1.0) > 1e-9:
        raise DomainError("cannot sample a box that is not normalized")
    edges[3] = 1.0
    idx = np.searchsorted(edges, rng.random(n), side="right")
    return idx >> 1, idx & 1


def estimate_correlation(
    measured: np.ndarray, unmeasured: np.ndarray
) -> EmpiricalEstimate:
    """Sample Pearson correlation with the large-n normal-theory
    standard error (1 - rho^2) / sqrt(n)."""
    value = pearson_pm1(measured, unmeasured)
    n = measured.shape[0]
    return EmpiricalEstimate(value, (1.0 - value ** 2) / math.sqrt(n), n)


def estimate_event_rate(hits: np.ndarray) -> EmpiricalEstimate:
    """Empirical event probability with the binomial standard error."""
    n = hits.shape[0]
    if n == 0:
        raise DomainError("cannot estimate a rate from zero samples")
    p = float(np.count_nonzero(hits)) / n
    return EmpiricalEstimate(p, math.sqrt(p * (1.0 - p) / n), n)


def estimate_pair_correlation(
    alpha: Direction, beta: Direction, cfg: SampleConfig, stream_index: int = 0
) -> EmpiricalEstimate:
    rng = substream(cfg.seed, stream_index)
    return estimate_correlation(*sample_pair(alpha, beta, cfg.n_samples, rng))


def estimate_ci_correlation(
    theta: Direction,
    a: Direction,
    a_prime: Direction,
    cfg: SampleConfig,
    stream_index: int = 0,
) -> EmpiricalEstimate:
    rng = substream(cfg.seed, stream_index)
    return estimate_correlation(
        *sample_counterfactual_ci(theta, a, a_prime, cfg.n_samples, rng)
    )


def estimate_coin_correlation(
    cfg: SampleConfig, stream_index: int = 0
) -> EmpiricalEstimate:
    rng = substream(cfg.seed, stream_index)
    return estimate_correlation(*sample_coin(cfg.n_samples, rng))


def estimate_shapes_correlation(
    cfg: SampleConfig,
    stream_index: int = 0,
    red_given_cube: float = 0.75,
    blue_given_sphere: float = 0.75,
) -> EmpiricalEstimate:
    rng = substream(cfg.seed, stream_index)
    return estimate_correlation(
        *sample_shapes(cfg.n_samples, rng, red_given_cube, blue_given_sphere)
    )


def estimate_ns_pair(
    box: NsBox, a_in: int, b_in: int, cfg: SampleConfig, stream_index: int = 0
) -> tuple[EmpiricalEstimate, EmpiricalEstimate]:
    """(target rate, correlator) estimates from one shared sample.

    The target rate is P(A xor B = ab); the correlator estimate is its
    linear image 2 * P(A = B) - 1.
    """
    rng = substream(cfg.seed, stream_index)
    a_out, b_out = sample_nsbox(box, a_in, b_in, cfg.n_samples, rng)
    parity = a_out ^ b_out
    rate = estimate_event_rate(parity == (a_in * b_in))
    same = estimate_event_rate(parity == 0)
    correlator = EmpiricalEstimate(
        2.0 * same.value - 1.0, 2.0 * same.std_error, same.n_samples
    )
    return rate, correlator
