"""
Precoding schemes compared by the simulator, selected by name from the experiment config.
"""

from typing import Optional
from dataclasses import dataclass, field

import numpy as np

from netmimo.modules.factory import Factory
from netmimo.modules.bd import (
    PER_ANTENNA,
    PER_BASE_STATION,
    SUM_POWER,
    NullSpaceDecomp,
    PowerConstraint,
    PrecoderSet,
    build_constraint,
    conventional_bd_feasible,
)
from netmimo.modules.dual import DualSolver, SolveOptions, SolveReport
from netmimo.modules.dual.optimizer import TraceSink


@dataclass
class SchemeContext:
    """Cluster geometry and budgets shared by all schemes of one experiment"""

    n_t: int
    cluster_size: int
    bs_power: float
    constraint_kind: str = PER_ANTENNA
    options: SolveOptions = field(default_factory=SolveOptions)

    def constraint(self, kind: Optional[str] = None) -> PowerConstraint:
        return build_constraint(
            kind or self.constraint_kind, self.n_t, self.cluster_size, self.bs_power
        )


@dataclass
class SchemeOutcome:
    scheme: str
    precoders: PrecoderSet
    converged: bool = True
    report: Optional[SolveReport] = None

    @property
    def sum_rate(self) -> float:
        return self.precoders.sum_rate


class SchemeFactory(Factory):
    component = "scheme"


class Scheme:
    name = ""
    optimal = False

    def run(
        self,
        decomp: NullSpaceDecomp,
        context: SchemeContext,
        trace_sink: Optional[TraceSink] = None,
        weights: Optional[np.ndarray] = None,
    ) -> SchemeOutcome:
        """Precode the scheduled users for their sum rate, or weighted sum rate with `weights`"""
        raise NotImplementedError


@SchemeFactory.register("conventional")
class ConventionalScheme(Scheme):
    """Water-filling BD under the configured constraint kind (scaled when not sum power)"""

    name = "conventional"

    def run(self, decomp, context, trace_sink=None, weights=None) -> SchemeOutcome:
        precoders = conventional_bd_feasible(decomp, context.constraint(), weights)
        return SchemeOutcome(self.name, precoders)


class OptimalScheme(Scheme):
    kind = ""
    optimal = True

    def run(self, decomp, context, trace_sink=None, weights=None) -> SchemeOutcome:
        report = DualSolver(context.options).solve(
            decomp, context.constraint(self.kind), trace_sink, weights=weights
        )
        return SchemeOutcome(self.name, report.precoders, report.converged, report)


@SchemeFactory.register("optimal-per-antenna")
class OptimalPerAntennaScheme(OptimalScheme):
    name = "optimal-per-antenna"
    kind = PER_ANTENNA


@SchemeFactory.register("optimal-per-base-station")
class OptimalPerBaseStationScheme(OptimalScheme):
    name = "optimal-per-base-station"
    kind = PER_BASE_STATION


@SchemeFactory.register("optimal-sum")
class OptimalSumScheme(OptimalScheme):
    name = "optimal-sum"
    kind = SUM_POWER
