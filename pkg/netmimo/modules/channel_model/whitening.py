from dataclasses import replace

import numpy as np

from netmimo.modules.log import getLogger
from netmimo.modules.linalg import herm, inv_sqrt_hermitian

log = getLogger(__name__)

from .errors import ChannelModelError
from .channels import ChannelSet


def interference_covariance(
    channels: ChannelSet, per_antenna_budget: np.ndarray
) -> np.ndarray:
    """
    R_k = I + sum over interfering BSs of H_int S_full H_int^H, shape (K, n_r, n_r).
    Interferers transmit at full per-antenna power (worst case); `per_antenna_budget`
    is the budget vector of one base station (length n_t) or of all interfering antennas.
    """
    budget = np.asarray(per_antenna_budget, dtype=float).ravel()
    if np.any(budget <= 0):
        raise ChannelModelError("per-antenna budgets must be positive")

    n_int_tx = channels.interference.shape[-1]
    if budget.size != n_int_tx:
        if n_int_tx % budget.size:
            raise ChannelModelError(
                f"budget vector of length {budget.size} doesn't fit {n_int_tx} interfering antennas"
            )
        budget = np.tile(budget, n_int_tx // budget.size)

    g = channels.interference
    eye = np.eye(channels.n_r)
    return eye + (g * budget) @ herm(g)


def whiten_interference(
    channels: ChannelSet, per_antenna_budget: np.ndarray
) -> ChannelSet:
    """Return copy of `channels` with whitened aggregates R_k^{-1/2} H_k"""
    covariance = interference_covariance(channels, per_antenna_budget)
    aggregate = channels.aggregate

    whitened = np.empty_like(aggregate)
    for k in range(channels.num_users):
        try:
            whitened[k] = inv_sqrt_hermitian(covariance[k]) @ aggregate[k]
        except np.linalg.LinAlgError as e:
            raise ChannelModelError(
                f"interference covariance of user {k} is not positive definite"
            ) from e

    return replace(channels, whitened=whitened)
