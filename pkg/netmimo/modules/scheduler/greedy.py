from typing import Callable, List, Optional, Sequence

import numpy as np

from netmimo.modules.log import getLogger

log = getLogger(__name__)

from .errors import SchedulerError

# candidate subset (user ids) -> per-user rates aligned with the subset, None if infeasible
SubsetRates = Callable[[List[int]], Optional[np.ndarray]]


def max_users(total_tx: int, n_r: int) -> int:
    """Largest number of users BD can serve: floor(N_t / n_r)"""
    if n_r < 1:
        raise SchedulerError(f"n_r must be >= 1, got {n_r}")
    return total_tx // n_r


def weighted_objective(
    subset: List[int], subset_rates: SubsetRates, weights: Optional[np.ndarray]
) -> float:
    rates = subset_rates(subset)
    if rates is None:
        return -np.inf
    if weights is None:
        return float(np.sum(rates))
    return float(np.dot(np.asarray(weights)[subset], rates))


def greedy_select(
    pool: Sequence[int],
    k_max: Optional[int],
    subset_rates: SubsetRates,
    weights: Optional[np.ndarray] = None,
) -> List[int]:
    """
    Greedy user selection: repeatedly add the user with the largest weighted sum-rate gain,
    lowest user id on ties. Stops when no candidate has a positive gain or k_max users
    are selected (k_max=None: no limit). Returns the selected ids in ascending order.
    """
    if k_max is not None and k_max < 0:
        raise SchedulerError(f"k_max must be >= 0, got {k_max}")

    candidates = sorted(set(pool))
    limit = len(candidates) if k_max is None else min(k_max, len(candidates))

    selected: List[int] = []
    objective = 0.0

    while len(selected) < limit:
        best_user = None
        best_gain = 0.0
        best_objective = objective

        for user in candidates:
            if user in selected:
                continue
            value = weighted_objective(selected + [user], subset_rates, weights)
            gain = value - objective
            if gain > best_gain:
                best_user, best_gain, best_objective = user, gain, value

        if best_user is None:
            break

        selected.append(best_user)
        objective = best_objective
        log.trace("greedy: added user %d, objective %.6g", best_user, objective)

    return sorted(selected)
