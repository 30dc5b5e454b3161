from typing import Optional, Tuple

import numpy as np

from .errors import BDError


def waterfill_with_level(
    gains: np.ndarray, budget: float, weights: Optional[np.ndarray] = None
) -> Tuple[np.ndarray, float]:
    """
    Maximize sum w_i log(1 + g_i q_i) subject to sum q_i = budget, q >= 0
    (w_i = 1 when `weights` is None).
    Exact: the water level is computed in closed form for each candidate active set,
    channels ordered by 1 / (w_i g_i). Non-positive gains or weights receive no power.
    Returns (q, mu) with q_i = max(0, w_i mu - 1/g_i).
    """
    gains = np.asarray(gains, dtype=float).ravel()
    if budget <= 0:
        raise BDError(f"water-filling budget must be positive, got {budget}")
    if weights is None:
        weights = np.ones_like(gains)
    else:
        weights = np.asarray(weights, dtype=float).ravel()
        if weights.shape != gains.shape:
            raise BDError(f"expected {gains.size} weights, got {weights.size}")
        if np.any(~np.isfinite(weights)) or np.any(weights < 0):
            raise BDError("water-filling weights must be finite and nonnegative")

    q = np.zeros_like(gains)
    usable = np.flatnonzero((gains > 0) & (weights > 0))
    if usable.size == 0:
        return q, 0.0

    inverse = 1.0 / gains[usable]
    w = weights[usable]
    order = np.argsort(inverse / w, kind="stable")
    levels = inverse[order]
    w = w[order]
    thresholds = levels / w
    partial = np.cumsum(levels)
    partial_w = np.cumsum(w)

    active = levels.size
    mu = (budget + partial[-1]) / partial_w[-1]
    while active > 1 and mu <= thresholds[active - 1]:
        active -= 1
        mu = (budget + partial[active - 1]) / partial_w[active - 1]

    q[usable[order[:active]]] = w[:active] * mu - levels[:active]
    return q, float(mu)


def waterfill(
    gains: np.ndarray, budget: float, weights: Optional[np.ndarray] = None
) -> np.ndarray:
    return waterfill_with_level(gains, budget, weights)[0]
