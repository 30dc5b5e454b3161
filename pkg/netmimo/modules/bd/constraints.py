from typing import Sequence
from dataclasses import dataclass

import numpy as np

from netmimo.modules.factory import Factory, UnknownComponentError

from .errors import ConstraintError

PER_ANTENNA = "per-antenna"
PER_BASE_STATION = "per-base-station"
SUM_POWER = "sum"


@dataclass
class PowerConstraint:
    """
    Linear power budgets over groups of transmit antennas:
        sum of [sum_k W_k W_k^H]_{ii} over antennas i of group l <= budgets[l]
    One group per antenna (per-antenna), per base station, or one group (sum).
    """

    kind: str
    budgets: np.ndarray  # (L,)
    groups: np.ndarray  # (N_t,) antenna -> group

    def __post_init__(self):
        self.budgets = np.asarray(self.budgets, dtype=float).ravel()
        self.groups = np.asarray(self.groups, dtype=int).ravel()
        if self.budgets.size < 1:
            raise ConstraintError("no power budgets given")
        if np.any(~np.isfinite(self.budgets)) or np.any(self.budgets <= 0):
            raise ConstraintError(f"all budgets must be positive, got {self.budgets}")
        if self.groups.size < 1:
            raise ConstraintError("no transmit antennas")
        used = np.unique(self.groups)
        if used[0] < 0 or used[-1] >= self.budgets.size or used.size != self.budgets.size:
            raise ConstraintError(
                f"antenna groups {used} don't match {self.budgets.size} budgets"
            )

    @property
    def num_groups(self) -> int:
        return self.budgets.size

    @property
    def total_tx(self) -> int:
        return self.groups.size

    @property
    def total_budget(self) -> float:
        return float(np.sum(self.budgets))

    @property
    def structure(self) -> np.ndarray:
        """0/1 matrix T of shape (N_t, L) with antenna power = T lambda"""
        t = np.zeros((self.total_tx, self.num_groups))
        t[np.arange(self.total_tx), self.groups] = 1.0
        return t

    def expand(self, lam: np.ndarray) -> np.ndarray:
        """Per-group dual variables to the diagonal of Lambda (length N_t)"""
        return np.asarray(lam, dtype=float)[self.groups]

    def reduce(self, antenna_values: np.ndarray) -> np.ndarray:
        """Sum per-antenna values over each group (partial traces)"""
        return np.bincount(
            self.groups, weights=np.asarray(antenna_values, dtype=float), minlength=self.num_groups
        )

    def group_power(self, antenna_power: np.ndarray) -> np.ndarray:
        return self.reduce(antenna_power)

    def slack(self, antenna_power: np.ndarray) -> np.ndarray:
        return self.budgets - self.group_power(antenna_power)

    def is_feasible(self, antenna_power: np.ndarray, tol: float = 1e-8) -> bool:
        return bool(np.all(self.slack(antenna_power) >= -tol))

    def feasibility_scale(self, antenna_power: np.ndarray) -> float:
        """Largest c <= 1 such that c * antenna_power is feasible"""
        used = self.group_power(antenna_power)
        with np.errstate(divide="ignore"):
            ratios = np.where(used > 0, self.budgets / np.maximum(used, 1e-300), np.inf)
        return float(min(1.0, np.min(ratios)))


def per_antenna(budgets: Sequence[float]) -> PowerConstraint:
    budgets = np.asarray(budgets, dtype=float).ravel()
    return PowerConstraint(PER_ANTENNA, budgets, np.arange(budgets.size))


def per_base_station(budgets: Sequence[float], n_t: int) -> PowerConstraint:
    budgets = np.asarray(budgets, dtype=float).ravel()
    return PowerConstraint(
        PER_BASE_STATION, budgets, np.repeat(np.arange(budgets.size), n_t)
    )


def sum_power(budget: float, total_tx: int) -> PowerConstraint:
    return PowerConstraint(SUM_POWER, [budget], np.zeros(total_tx, dtype=int))


class ConstraintFactory(Factory):
    """Builders of PowerConstraint by kind name"""

    component = "constraint kind"


class ConstraintBuilder:
    """Builds the constraint of a homogeneous cluster: every BS has total power bs_power"""

    kind = ""

    def build(self, n_t: int, cluster_size: int, bs_power: float) -> PowerConstraint:
        raise NotImplementedError


@ConstraintFactory.register(PER_ANTENNA)
class PerAntennaBuilder(ConstraintBuilder):
    kind = PER_ANTENNA

    def build(self, n_t: int, cluster_size: int, bs_power: float) -> PowerConstraint:
        return per_antenna(np.full(n_t * cluster_size, bs_power / n_t))


@ConstraintFactory.register(PER_BASE_STATION)
class PerBaseStationBuilder(ConstraintBuilder):
    kind = PER_BASE_STATION

    def build(self, n_t: int, cluster_size: int, bs_power: float) -> PowerConstraint:
        return per_base_station(np.full(cluster_size, bs_power), n_t)


@ConstraintFactory.register(SUM_POWER)
class SumPowerBuilder(ConstraintBuilder):
    kind = SUM_POWER

    def build(self, n_t: int, cluster_size: int, bs_power: float) -> PowerConstraint:
        return sum_power(bs_power * cluster_size, n_t * cluster_size)


def build_constraint(
    kind: str, n_t: int, cluster_size: int, bs_power: float
) -> PowerConstraint:
    try:
        builder: ConstraintBuilder = ConstraintFactory.create(kind)
    except UnknownComponentError as e:
        raise ConstraintError(str(e)) from e
    return builder.build(n_t, cluster_size, bs_power)
