from typing import Callable, Optional
from dataclasses import dataclass

import numpy as np

from netmimo.modules.log import getLogger

log = getLogger(__name__)

from .dual_state import DualState
from .errors import DomainError


@dataclass
class LineSearchParams:
    sufficient_decrease: float = 1e-4
    shrink: float = 0.5
    min_step: float = 1e-12
    # g differences below value_noise * (1 + |g|) are round-off
    value_noise: float = 1e-13


@dataclass
class LineSearchResult:
    state: DualState
    step: float
    accepted: bool
    backtracks: int


def project(lam: np.ndarray) -> np.ndarray:
    """Projection on the nonnegative orthant"""
    return np.maximum(lam, 0.0)


def projected_backtracking(
    evaluate: Callable[[np.ndarray], DualState],
    state: DualState,
    step: float,
    params: Optional[LineSearchParams] = None,
) -> LineSearchResult:
    """
    Projected gradient step lam+ = max(lam - t grad, 0) with backtracking t <- shrink * t:
    first until lam+ is inside the domain of g, then until
        g(lam+) <= g(lam) + c * grad . (lam+ - lam) + noise
    Gives up (accepted=False) once t drops below min_step.
    """
    params = params or LineSearchParams()
    backtracks = 0

    while step >= params.min_step:
        candidate = project(state.lam - step * state.gradient)
        direction = candidate - state.lam

        if not np.any(direction):
            return LineSearchResult(state, step, True, backtracks)

        try:
            new_state = evaluate(candidate)
        except DomainError:
            step *= params.shrink
            backtracks += 1
            continue

        decrease = params.sufficient_decrease * float(np.dot(state.gradient, direction))
        noise = params.value_noise * (1.0 + abs(state.value))
        if new_state.value <= state.value + decrease + noise:
            return LineSearchResult(new_state, step, True, backtracks)

        step *= params.shrink
        backtracks += 1

    log.debug("line search stalled after %d backtracks", backtracks)
    return LineSearchResult(state, step, False, backtracks)
