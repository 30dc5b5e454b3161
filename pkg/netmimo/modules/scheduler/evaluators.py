from typing import Optional

import numpy as np

from netmimo.modules.factory import Factory
from netmimo.modules.bd import (
    BDError,
    PowerConstraint,
    conventional_bd_feasible,
    effective_channels,
)
from netmimo.modules.dual import SolveOptions, solve


class EvaluatorFactory(Factory):
    """Subset rate evaluators used during greedy user selection"""

    component = "selection evaluator"


class SubsetEvaluator:
    """
    Per-user rates (bits/s/Hz) of a candidate user subset, given the subset's channels.
    Returns None when the subset can't be block-diagonalized.
    """

    name = ""

    def __init__(self):
        self.constraint: Optional[PowerConstraint] = None

    def configure(self, constraint: PowerConstraint, options: Optional[SolveOptions] = None):
        self.constraint = constraint
        return self

    def rates(
        self, channels: np.ndarray, weights: Optional[np.ndarray] = None
    ) -> Optional[np.ndarray]:
        """Rates of the allocation maximizing the (weighted) subset sum rate"""
        try:
            decomp = effective_channels(channels)
        except BDError:
            return None
        return self.rates_from(decomp, weights)

    def rates_from(self, decomp, weights: Optional[np.ndarray] = None) -> np.ndarray:
        raise NotImplementedError


@EvaluatorFactory.register("conventional")
class ConventionalEvaluator(SubsetEvaluator):
    """(Weighted) water-filling BD, uniformly scaled into the configured budgets"""

    name = "conventional"

    def rates_from(self, decomp, weights: Optional[np.ndarray] = None) -> np.ndarray:
        return conventional_bd_feasible(decomp, self.constraint, weights).user_rates


@EvaluatorFactory.register("optimal")
class OptimalEvaluator(SubsetEvaluator):
    """Full dual solve for every candidate subset"""

    name = "optimal"

    def __init__(self):
        super().__init__()
        self.options = SolveOptions()

    def configure(self, constraint: PowerConstraint, options: Optional[SolveOptions] = None):
        super().configure(constraint, options)
        if options is not None:
            self.options = options
        return self

    def rates_from(self, decomp, weights: Optional[np.ndarray] = None) -> np.ndarray:
        report = solve(decomp, self.constraint, self.options, weights=weights)
        return report.precoders.user_rates
