"""Entanglement protection by repeated nonselective measurement.

Checking "is the register still in its initial W state?" every interval T
resets the free decay, so after N checks the survival probability is
|E(T)|^(2N) = exp(-Gamma_z(T) N T) with the effective rate
Gamma_z(T) = -log(|E(T)|^2) / T. Short intervals shrink Gamma_z (the
short-time decay is quadratic), which freezes both the survival
probability and the W-branch pairwise concurrence (2/n times survival).

Measuring exactly at a zero of the survival amplitude kills the state
outright; that case is reported as a saturating outcome (infinite rate,
zero survival) rather than an error or a NaN.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import ModelParams, survival_probability

__all__ = [
    "ZenoSchedule",
    "SATURATION_PROBABILITY",
    "effective_decay_rate",
    "zeno_survival",
    "zeno_concurrence",
]

# Below this single-interval survival probability the measurement is
# treated as having hit a node of the amplitude: |E| there is rounding
# noise (the polished zeros leave |E|^2 under 1e-20), far outside any
# physically plotted regime.
SATURATION_PROBABILITY = 1e-18


@dataclass(frozen=True)
class ZenoSchedule:
    """N nonselective checks spaced T apart, total time N*T."""

    interval_T: float
    count_N: int

    def __post_init__(self):
        if not (self.interval_T > 0.0) or not math.isfinite(self.interval_T):
            raise ValueError(f"interval_T must be finite and > 0, got {self.interval_T}")
        if self.count_N < 1:
            raise ValueError(f"count_N must be >= 1, got {self.count_N}")

    @property
    def total_time(self) -> float:
        return self.count_N * self.interval_T


def effective_decay_rate(params: ModelParams, interval_T: float) -> float:
    """Measurement-modified decay rate Gamma_z(T), kappa units.

    Always non-negative, vanishing as T -> 0; returns math.inf when the
    interval lands on a node of the survival amplitude.
    """
    if not (interval_T > 0.0) or not math.isfinite(interval_T):
        raise ValueError(f"interval_T must be finite and > 0, got {interval_T}")
    p = survival_probability(params, interval_T)
    if p <= SATURATION_PROBABILITY:
        return math.inf
    return -math.log(p) / interval_T


def zeno_survival(params: ModelParams, schedule: ZenoSchedule) -> float:
    """Survival probability after the full measurement schedule.

    |E(T)|^(2N), equivalently exp(-Gamma_z(T) N T); zero on saturation.
    """
    p = survival_probability(params, schedule.interval_T)
    if p <= SATURATION_PROBABILITY:
        return 0.0
    return p ** schedule.count_N


def zeno_concurrence(params: ModelParams, schedule: ZenoSchedule) -> float:
    """W-branch pairwise concurrence under the measurement schedule."""
    return 2.0 / params.n * zeno_survival(params, schedule)
