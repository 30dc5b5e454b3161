from typing import Dict, Iterator, List, Optional
from dataclasses import dataclass, field
from functools import lru_cache
from multiprocessing import Pool

import numpy as np
from tqdm import tqdm

from netmimo.modules.log import getLogger

log = getLogger(__name__)

from netmimo.modules.channel_model import (
    CellLayout,
    build_layout,
    draw_channels,
    drop_users,
    large_scale_gains,
    whiten_interference,
)
from netmimo.modules.bd import effective_channels
from netmimo.modules.dual import TraceRecord
from netmimo.modules.scheduler import (
    EvaluatorFactory,
    ScheduleState,
    greedy_select,
    max_users,
    pf_update,
)
from netmimo.modules.schemes import Scheme, SchemeContext, SchemeFactory

from .experiment_config import ExperimentConfig, SweepPoint

# warn when more drops than this are excluded for nonconvergence
NONCONVERGED_WARN_FRACTION = 0.01


@dataclass
class DropTask:
    point: SweepPoint
    drop: int
    seed: np.random.SeedSequence
    config: ExperimentConfig


@dataclass
class SchemeDrop:
    """One scheme on one drop. Rates in bits/s/Hz, MSR runs have a single slot"""

    scheme: str
    normalized_rate: float  # cluster sum rate / B, averaged over slots
    solves: int = 0
    nonconverged: int = 0
    user_mean_rates: Optional[np.ndarray] = None  # PF runs

    @property
    def converged(self) -> bool:
        return self.nonconverged == 0


@dataclass
class DropResult:
    point: SweepPoint
    drop: int
    schemes: Dict[str, SchemeDrop]
    convergence: List[TraceRecord] = field(default_factory=list)


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    drops: List[DropResult] = field(default_factory=list)

    def groups(self) -> Iterator[tuple]:
        """(point, scheme, [SchemeDrop...]) for every group with at least one drop"""
        for point in self.config.points():
            point_drops = [d for d in self.drops if d.point == point]
            if not point_drops:
                continue
            for scheme in self.config.schemes:
                yield point, scheme, [d.schemes[scheme] for d in point_drops]

    @property
    def nonconverged_solves(self) -> int:
        return sum(s.nonconverged for d in self.drops for s in d.schemes.values())

    @property
    def excluded_drops(self) -> int:
        return sum(not s.converged for d in self.drops for s in d.schemes.values())

    def summary_rows(self) -> List[dict]:
        """Mean and sample standard deviation of normalized sum rates over converged drops"""
        rows = []
        for point, scheme, entries in self.groups():
            rates = np.array([e.normalized_rate for e in entries if e.converged])
            rows.append(
                {
                    "scheme": scheme,
                    "B": point.cluster_size,
                    "n_t": point.n_t,
                    "users_per_cell": point.users_per_cell,
                    "mean": float(np.mean(rates)) if rates.size else float("nan"),
                    "std": float(np.std(rates, ddof=1)) if rates.size > 1 else 0.0,
                    "drops": int(rates.size),
                    "nonconverged": len(entries) - int(rates.size),
                }
            )
        return rows

    def sum_rate_samples(self) -> List[tuple]:
        return [
            (point, scheme, [e.normalized_rate for e in entries if e.converged])
            for point, scheme, entries in self.groups()
        ]

    def mean_rate_samples(self) -> List[tuple]:
        """Per-user mean rates of PF runs, pooled over converged drops"""
        samples = []
        for point, scheme, entries in self.groups():
            values = [
                float(r)
                for e in entries
                if e.converged and e.user_mean_rates is not None
                for r in e.user_mean_rates
            ]
            if values:
                samples.append((point, scheme, values))
        return samples


@lru_cache(maxsize=None)
def cached_layout(cluster_size: int, cell_radius: float) -> CellLayout:
    return build_layout(cluster_size, cell_radius)


def make_tasks(config: ExperimentConfig) -> List[DropTask]:
    """Per-drop RNG streams spawned from the master seed: one child per sweep point, then per drop"""
    root = np.random.SeedSequence(config.seed)
    points = config.points()
    tasks = []
    for point, point_seed in zip(points, root.spawn(len(points))):
        for drop, drop_seed in enumerate(point_seed.spawn(config.drops)):
            tasks.append(DropTask(point=point, drop=drop, seed=drop_seed, config=config))
    return tasks


def subset_rater(evaluator, effective: np.ndarray, weights: Optional[np.ndarray] = None):
    """Greedy callback: rates of a candidate subset, evaluated with the subset's weights"""

    def subset_rates(subset):
        subset_weights = None if weights is None else weights[subset]
        return evaluator.rates(effective[subset], subset_weights)

    return subset_rates


def run_drop(task: DropTask) -> DropResult:
    """
    Drop users, fix large-scale fading, then for every slot: draw Rayleigh fading,
    whiten out-of-cluster interference, schedule and precode with every scheme.
    MSR runs have one slot and a selection shared by all schemes.
    PF runs keep separate averaged throughputs per scheme; both the selection and
    the precoders maximize the PF-weighted sum rate of the slot.
    """
    cfg = task.config
    point = task.point
    rng = np.random.default_rng(task.seed)

    layout = cached_layout(point.cluster_size, cfg.fading.cell_radius)
    users = drop_users(layout, point.users_per_cell, rng=rng)
    gains = large_scale_gains(layout, users, cfg.fading, rng)
    num_users = users.num_users

    context = SchemeContext(
        n_t=point.n_t,
        cluster_size=point.cluster_size,
        bs_power=cfg.bs_power,
        constraint_kind=cfg.constraint,
        options=cfg.solve_options(),
    )
    per_antenna_budget = np.full(point.n_t, cfg.bs_power / point.n_t)
    k_max = max_users(point.total_tx, cfg.n_r)

    evaluator = EvaluatorFactory.create(cfg.selection_evaluator)
    evaluator.configure(context.constraint(), context.options)

    schemes: List[Scheme] = [SchemeFactory.create(name) for name in cfg.schemes]
    slots = cfg.slots if cfg.is_pf else 1
    states = {s.name: ScheduleState.create(num_users, cfg.tau) for s in schemes}

    totals = {s.name: 0.0 for s in schemes}
    user_totals = {s.name: np.zeros(num_users) for s in schemes}
    solves = {s.name: 0 for s in schemes}
    nonconverged = {s.name: 0 for s in schemes}
    convergence: List[TraceRecord] = []

    for slot in range(slots):
        channels = draw_channels(gains, point.cluster_size, point.n_t, cfg.n_r, rng)
        effective = whiten_interference(channels, per_antenna_budget).effective

        shared_selection = None
        if not cfg.is_pf:
            shared_selection = greedy_select(
                range(num_users), k_max, subset_rater(evaluator, effective)
            )

        for scheme in schemes:
            weights = None
            if shared_selection is not None:
                selected = shared_selection
            else:
                weights = states[scheme.name].weights
                selected = greedy_select(
                    range(num_users), k_max, subset_rater(evaluator, effective, weights), weights
                )

            rates = np.zeros(num_users)
            if selected:
                decomp = effective_channels(effective[selected])
                outcome = scheme.run(
                    decomp, context, weights=None if weights is None else weights[selected]
                )
                rates[selected] = outcome.precoders.user_rates
                totals[scheme.name] += outcome.sum_rate
                if outcome.report is not None:
                    solves[scheme.name] += 1
                    nonconverged[scheme.name] += int(not outcome.converged)
                    if not convergence:
                        convergence = list(outcome.report.trace)

            user_totals[scheme.name] += rates
            if cfg.is_pf:
                states[scheme.name] = pf_update(states[scheme.name], rates)

        log.trace("drop %d slot %d done", task.drop, slot)

    results = {
        s.name: SchemeDrop(
            scheme=s.name,
            normalized_rate=totals[s.name] / slots / point.cluster_size,
            solves=solves[s.name],
            nonconverged=nonconverged[s.name],
            user_mean_rates=user_totals[s.name] / slots if cfg.is_pf else None,
        )
        for s in schemes
    }
    return DropResult(point=point, drop=task.drop, schemes=results, convergence=convergence)


def run_experiment(config: ExperimentConfig, show_progress: bool = False) -> ExperimentResult:
    """
    Run all drops of all sweep points, in parallel over drops when workers > 1.
    Results are collected in task order, so they don't depend on the worker count.
    """
    tasks = make_tasks(config)
    result = ExperimentResult(config=config)

    progress = dict(total=len(tasks), desc="drops", disable=not show_progress)
    if config.workers > 1 and len(tasks) > 1:
        with Pool(processes=min(config.workers, len(tasks))) as pool:
            for drop_result in tqdm(pool.imap(run_drop, tasks), **progress):
                collect(result, drop_result)
    else:
        for task in tqdm(tasks, **progress):
            collect(result, run_drop(task))

    total = len(result.drops) * len(config.schemes)
    excluded = result.excluded_drops
    if total and excluded > NONCONVERGED_WARN_FRACTION * total:
        log.warning(
            "%d of %d scheme drops excluded from summary: nonconverged solves",
            excluded,
            total,
        )
    return result


def collect(result: ExperimentResult, drop_result: DropResult):
    result.drops.append(drop_result)
    rates = ", ".join(
        f"{name}={entry.normalized_rate:.4f}" for name, entry in drop_result.schemes.items()
    )
    log.verbose1(
        "B=%d n_t=%d users/cell=%d drop %d: %s",
        drop_result.point.cluster_size,
        drop_result.point.n_t,
        drop_result.point.users_per_cell,
        drop_result.drop,
        rates,
    )
