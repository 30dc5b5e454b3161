from typing import Optional

import numpy as np

from netmimo.modules.log import getLogger
from netmimo.modules.linalg import herm

log = getLogger(__name__)

from .constraints import SUM_POWER, PowerConstraint
from .errors import BDError
from .nullspace import NullSpaceDecomp
from .precoders import PrecoderSet, make_precoder_set
from .waterfill import waterfill

CONVENTIONAL = "conventional"
UNIFORM_SCALING = "uniform-scaling"


def stream_weights(weights: Optional[np.ndarray], num_users: int, n_r: int) -> Optional[np.ndarray]:
    """Per-user weights repeated for each of the user's n_r streams"""
    if weights is None:
        return None
    weights = np.asarray(weights, dtype=float).ravel()
    if weights.size != num_users:
        raise BDError(f"expected {num_users} user weights, got {weights.size}")
    return np.repeat(weights, n_r)


def conventional_bd(
    decomp: NullSpaceDecomp, sum_budget: float, weights: Optional[np.ndarray] = None
) -> PrecoderSet:
    """
    Conventional BD: SVD of every effective channel G_k = U_k diag(s_k) Vt_k^H,
    water-filling over all squared singular values under the sum budget,
    W_k = V_k Vt_k Theta_k^{1/2}. With user `weights` the water-filling maximizes
    the weighted sum rate.
    """
    num_users, n_r = decomp.num_users, decomp.n_r

    _, s, vh = np.linalg.svd(decomp.G, full_matrices=False)
    right = herm(vh)[:, :, :n_r]  # (K, m_r, n_r)
    gains = (s[:, :n_r] ** 2).ravel()

    power = waterfill(gains, sum_budget, stream_weights(weights, num_users, n_r))
    power = power.reshape(num_users, n_r)
    precoders = (decomp.V @ right) * np.sqrt(power)[:, None, :]

    return make_precoder_set(decomp.channels, precoders, CONVENTIONAL)


def conventional_bd_feasible(
    decomp: NullSpaceDecomp,
    constraint: PowerConstraint,
    weights: Optional[np.ndarray] = None,
) -> PrecoderSet:
    """
    Conventional BD with the total budget of `constraint`. For per-antenna and per-BS
    kinds the result is scaled uniformly by the largest factor keeping every budget.
    """
    result = conventional_bd(decomp, constraint.total_budget, weights)
    if constraint.kind == SUM_POWER:
        return result

    factor = constraint.feasibility_scale(result.antenna_power)
    log.trace("conventional BD scaled by %.6g for %s budgets", factor, constraint.kind)
    return result.scaled(decomp.channels, factor, f"{CONVENTIONAL} ({UNIFORM_SCALING})")
