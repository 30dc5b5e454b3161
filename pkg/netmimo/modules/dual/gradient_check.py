"""
Central finite-difference check of the analytic dual gradient.
"""

from typing import Dict, List, Optional
from dataclasses import dataclass, field

import numpy as np

from netmimo.modules.log import getLogger
from netmimo.modules.channel_model import iid_channels
from netmimo.modules.bd import (
    PER_ANTENNA,
    PER_BASE_STATION,
    SUM_POWER,
    BDError,
    NullSpaceDecomp,
    PowerConstraint,
    effective_channels,
    per_antenna,
    per_base_station,
    sum_power,
)

log = getLogger(__name__)

from .dual_state import dual_gradient, dual_value, initial_dual

KINDS = (PER_ANTENNA, PER_BASE_STATION, SUM_POWER)


@dataclass
class GradientCheckResult:
    points: int = 0
    max_error: Dict[str, float] = field(default_factory=dict)

    @property
    def worst(self) -> float:
        return max(self.max_error.values(), default=0.0)


def finite_difference_gradient(
    lam: np.ndarray,
    decomp: NullSpaceDecomp,
    constraint: PowerConstraint,
    epsilon: float = 1e-6,
    weights: Optional[np.ndarray] = None,
) -> np.ndarray:
    lam = np.asarray(lam, dtype=float)
    grad = np.empty_like(lam)
    for i in range(lam.size):
        step = np.zeros_like(lam)
        step[i] = epsilon
        upper = dual_value(lam + step, decomp, constraint, weights)
        lower = dual_value(lam - step, decomp, constraint, weights)
        grad[i] = (upper - lower) / (2.0 * epsilon)
    return grad


def gradient_error(
    lam: np.ndarray,
    decomp: NullSpaceDecomp,
    constraint: PowerConstraint,
    epsilon: float = 1e-6,
    weights: Optional[np.ndarray] = None,
) -> float:
    """max_i |fd_i - grad_i| / (1 + |grad_i|)"""
    analytic = dual_gradient(lam, decomp, constraint, weights)
    numeric = finite_difference_gradient(lam, decomp, constraint, epsilon, weights)
    return float(np.max(np.abs(numeric - analytic) / (1.0 + np.abs(analytic))))


def random_constraint(
    kind: str, n_t: int, cluster_size: int, rng: np.random.Generator
) -> PowerConstraint:
    if kind == PER_ANTENNA:
        return per_antenna(rng.uniform(0.5, 1.5, n_t * cluster_size))
    if kind == PER_BASE_STATION:
        return per_base_station(rng.uniform(0.5, 1.5, cluster_size), n_t)
    return sum_power(rng.uniform(0.5, 1.5) * cluster_size, n_t * cluster_size)


def random_problem(kind: str, rng: np.random.Generator):
    """Random decomposition, constraint and interior dual point of a small cluster"""
    while True:
        cluster_size = int(rng.integers(1, 4))
        n_t = int(rng.integers(1, 4))
        n_r = int(rng.integers(1, 3))
        total_tx = cluster_size * n_t
        k_max = total_tx // n_r
        if k_max < 1:
            continue
        num_users = int(rng.integers(1, k_max + 1))
        channels = iid_channels(num_users, n_r, total_tx, snr=10.0 ** rng.uniform(0, 2), rng=rng)
        try:
            decomp = effective_channels(channels)
        except BDError:
            continue
        constraint = random_constraint(kind, n_t, cluster_size, rng)
        lam = initial_dual(decomp, constraint) * rng.uniform(0.5, 2.0, constraint.num_groups)
        return decomp, constraint, lam


def run_gradient_suite(seed: int = 0, points: int = 50, epsilon: float = 1e-6) -> GradientCheckResult:
    """Largest finite-difference error over `points` random problems of every constraint kind"""
    rng = np.random.default_rng(seed)
    result = GradientCheckResult()
    for kind in KINDS:
        errors: List[float] = []
        for _ in range(points):
            decomp, constraint, lam = random_problem(kind, rng)
            errors.append(gradient_error(lam, decomp, constraint, epsilon))
        result.max_error[kind] = max(errors, default=0.0)
        log.verbose1("%s: max relative error %.3g over %d points", kind, result.max_error[kind], points)
    result.points = points
    return result
