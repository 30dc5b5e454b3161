from typing import Callable, List, Optional
from dataclasses import dataclass, field

import numpy as np

from netmimo.modules.log import getLogger
from netmimo.modules.linalg import herm, psd_factor
from netmimo.modules.bd import (
    NullSpaceDecomp,
    PowerConstraint,
    PrecoderSet,
    make_precoder_set,
    to_bits,
)

log = getLogger(__name__)

from .errors import ConvergenceQualityError, DualOptimizerError
from .dual_state import (
    DualState,
    check_weights,
    complementarity,
    evaluate,
    initial_dual,
    residual_from,
)
from .line_search import LineSearchParams, projected_backtracking

# eigenvalues of S_k below -NEGATIVE_EIG_ERROR mean lambda is not optimal enough
NEGATIVE_EIG_CLIP = 1e-9
NEGATIVE_EIG_ERROR = 1e-6


@dataclass
class SolveOptions:
    max_iter: int = 500
    tol_kkt: float = 1e-6
    tol_gap: float = 1e-5
    tol_complementarity: float = 1e-6
    max_perturbations: int = 3
    perturbation: float = 1e-8
    seed: int = 0
    line_search: LineSearchParams = field(default_factory=LineSearchParams)

    def __post_init__(self):
        if self.max_iter < 1:
            raise DualOptimizerError(f"max_iter must be >= 1, got {self.max_iter}")
        if self.tol_kkt <= 0 or self.tol_gap <= 0 or self.tol_complementarity <= 0:
            raise DualOptimizerError(
                f"tolerances must be positive, got tol_kkt={self.tol_kkt} tol_gap={self.tol_gap}"
                f" tol_complementarity={self.tol_complementarity}"
            )


@dataclass
class TraceRecord:
    """One solver iteration; rates in bits/s/Hz"""

    iteration: int
    dual_value: float
    primal: float
    gap: float
    step: float
    residual: float
    complementarity: float = 0.0


TraceSink = Callable[[TraceRecord], None]


@dataclass
class SolveReport:
    lam: np.ndarray
    precoders: PrecoderSet
    primal_rate: float  # bits/s/Hz, unweighted sum rate
    dual_value: float  # bits/s/Hz
    gap: float  # bits/s/Hz
    relative_gap: float
    kkt_residual: float
    iterations: int
    converged: bool
    constraint_kind: str
    trace: List[TraceRecord] = field(default_factory=list)
    complementarity: float = 0.0  # max |lambda_i (power_i - p_i)| of the emitted precoders
    objective: Optional[float] = None  # weighted sum rate when solved with user weights

    def summary(self) -> dict:
        return {
            "constraint": self.constraint_kind,
            "converged": self.converged,
            "iterations": self.iterations,
            "sum_rate": self.primal_rate,
            "dual_value": self.dual_value,
            "duality_gap": self.gap,
            "relative_gap": self.relative_gap,
            "kkt_residual": self.kkt_residual,
            "complementarity": self.complementarity,
            "lambda": [float(x) for x in self.lam],
            "user_rates": [float(x) for x in self.precoders.user_rates],
            "antenna_power": [float(x) for x in self.precoders.antenna_power],
        }


def covariance_factors(state: DualState) -> List[tuple]:
    """
    Eigen-factors (E_k, s_k) of S_k = w_k (M_k - Omega_k)^{-1} - I, negative eigenvalues
    clipped. Raises ConvergenceQualityError if S_k is clearly not PSD.
    """
    factors = []
    inverse = 1.0 / state.clipped
    for k in range(state.sigma.shape[0]):
        u = state.basis[k]
        s_matrix = (u * inverse[k]) @ herm(u) - np.eye(u.shape[0])
        e, s = psd_factor(s_matrix, NEGATIVE_EIG_CLIP)
        if np.min(s) < -NEGATIVE_EIG_ERROR:
            raise ConvergenceQualityError(
                f"covariance of user {k} has eigenvalue {np.min(s):.3g}"
            )
        factors.append((e, np.maximum(s, 0.0)))
    return factors


def precoders_from_state(state: DualState, decomp: NullSpaceDecomp) -> np.ndarray:
    """W_k = Q_k E_k diag(sqrt(s_k)), so W_k W_k^H = Q_k S_k Q_k^H"""
    factors = covariance_factors(state)
    return np.stack(
        [decomp.Q[k] @ (e * np.sqrt(s)) for k, (e, s) in enumerate(factors)]
    )


def recover_precoders(
    lam: np.ndarray,
    decomp: NullSpaceDecomp,
    constraint: PowerConstraint,
    weights: Optional[np.ndarray] = None,
) -> PrecoderSet:
    """Optimal BD precoders at a dual point (no rescaling)"""
    state = evaluate(lam, decomp, constraint, weights=check_weights(weights, decomp.num_users))
    return make_precoder_set(decomp.channels, precoders_from_state(state, decomp), "optimal")


class DualSolver:
    """
    Projected gradient descent on the dual function over lambda >= 0 with
    Barzilai-Borwein trial steps and backtracking line search.
    Stops when the KKT residual, the relative duality gap and the complementary
    slackness of the emitted precoders are all small.
    """

    def __init__(self, options: Optional[SolveOptions] = None):
        self.options = options or SolveOptions()

    def solve(
        self,
        decomp: NullSpaceDecomp,
        constraint: PowerConstraint,
        trace_sink: Optional[TraceSink] = None,
        initial: Optional[np.ndarray] = None,
        weights: Optional[np.ndarray] = None,
    ) -> SolveReport:
        """
        Maximize the BD sum rate, or the weighted sum rate sum_k w_k r_k when user
        `weights` are given (only their ratios matter).
        """
        if constraint.total_tx != decomp.total_tx:
            raise DualOptimizerError(
                f"constraint covers {constraint.total_tx} antennas, channels have {decomp.total_tx}"
            )
        try:
            weights = check_weights(weights, decomp.num_users)
        except ValueError as e:
            raise DualOptimizerError(str(e)) from e

        opts = self.options
        rng = np.random.default_rng(opts.seed)

        def evaluate_at(lam: np.ndarray) -> DualState:
            return evaluate(lam, decomp, constraint, weights=weights)

        lam0 = initial_dual(decomp, constraint, weights) if initial is None else initial
        state = evaluate_at(lam0)

        trace: List[TraceRecord] = []
        converged = False
        iteration = 0
        step = 0.0
        trial = None
        perturbations = 0
        previous: Optional[DualState] = None

        while True:
            residual = residual_from(state.lam, state.gradient, constraint)
            power = self._antenna_power(state, decomp)
            scale = constraint.feasibility_scale(power)
            primal = state.rate_nats(scale)
            relative_gap = (state.value - primal) / (1.0 + primal)
            slackness = complementarity(state.lam, scale * power, constraint)

            record = TraceRecord(
                iteration=iteration,
                dual_value=to_bits(state.value),
                primal=to_bits(primal),
                gap=to_bits(state.value - primal),
                step=step,
                residual=residual,
                complementarity=slackness,
            )
            trace.append(record)
            if trace_sink is not None:
                trace_sink(record)
            log.trace(
                "it %d: g=%.10g primal=%.10g gap=%.3g step=%.3g kkt=%.3g",
                iteration,
                record.dual_value,
                record.primal,
                record.gap,
                step,
                residual,
            )

            if (
                residual <= opts.tol_kkt
                and relative_gap <= opts.tol_gap
                and slackness <= opts.tol_complementarity
            ):
                converged = True
                break
            if iteration >= opts.max_iter:
                break

            trial = self._trial_step(state, previous, trial)
            result = projected_backtracking(evaluate_at, state, trial, opts.line_search)
            iteration += 1

            if not result.accepted:
                if perturbations >= opts.max_perturbations:
                    log.debug("line search stalled, no perturbations left")
                    break
                perturbations += 1
                lam = state.lam + opts.perturbation * np.mean(state.lam) * rng.uniform(
                    size=state.lam.shape
                )
                log.debug("line search stalled, perturbing lambda (%d)", perturbations)
                state = evaluate_at(lam)
                previous, trial, step = None, None, 0.0
                continue

            previous, state, step = state, result.state, result.step
            trial = result.step

        report = self._report(state, decomp, constraint, iteration, converged, trace)
        if converged:
            log.verbose2(
                "dual solve (%s) converged in %d iterations: %.6f bits/s/Hz, gap %.3g",
                constraint.kind,
                iteration,
                report.primal_rate,
                report.gap,
            )
        else:
            log.warning(
                "dual solve (%s) did not converge in %d iterations: kkt residual %.3g, relative gap %.3g",
                constraint.kind,
                iteration,
                report.kkt_residual,
                report.relative_gap,
            )
        return report

    @staticmethod
    def _antenna_power(state: DualState, decomp: NullSpaceDecomp) -> np.ndarray:
        qu = decomp.Q @ state.basis
        weights = state.covariance_eigenvalues[:, None, :]
        return np.sum(np.abs(qu) ** 2 * weights, axis=(0, 2))

    @staticmethod
    def _trial_step(
        state: DualState, previous: Optional[DualState], last_step: Optional[float]
    ) -> float:
        if previous is None or last_step is None:
            lam_norm = np.linalg.norm(state.lam)
            grad_norm = np.linalg.norm(state.gradient)
            if grad_norm == 0.0:
                return 1.0
            return float(max(lam_norm, 1e-12) / grad_norm)

        s = state.lam - previous.lam
        y = state.gradient - previous.gradient
        sy = float(np.dot(s, y))
        if sy <= 0.0:
            return 2.0 * last_step
        bb = float(np.dot(s, s)) / sy
        return bb if np.isfinite(bb) and bb > 0 else 2.0 * last_step

    @staticmethod
    def _report(
        state: DualState,
        decomp: NullSpaceDecomp,
        constraint: PowerConstraint,
        iterations: int,
        converged: bool,
        trace: List[TraceRecord],
    ) -> SolveReport:
        raw = make_precoder_set(
            decomp.channels, precoders_from_state(state, decomp), "optimal"
        )
        precoders = raw.scaled(
            decomp.channels, constraint.feasibility_scale(raw.antenna_power)
        )
        primal = precoders.weighted_rate(state.weights)
        dual = to_bits(state.value)
        return SolveReport(
            lam=state.lam.copy(),
            precoders=precoders,
            primal_rate=precoders.sum_rate,
            dual_value=dual,
            gap=dual - primal,
            relative_gap=(state.value - primal * np.log(2.0)) / (1.0 + primal * np.log(2.0)),
            kkt_residual=residual_from(state.lam, state.gradient, constraint),
            iterations=iterations,
            converged=converged,
            constraint_kind=constraint.kind,
            trace=trace,
            complementarity=complementarity(state.lam, precoders.antenna_power, constraint),
            objective=None if state.weights is None else primal,
        )


def solve(
    decomp: NullSpaceDecomp,
    constraint: PowerConstraint,
    options: Optional[SolveOptions] = None,
    trace_sink: Optional[TraceSink] = None,
    weights: Optional[np.ndarray] = None,
) -> SolveReport:
    return DualSolver(options).solve(decomp, constraint, trace_sink, weights=weights)
