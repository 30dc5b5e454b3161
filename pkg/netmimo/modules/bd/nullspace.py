from typing import Tuple
from dataclasses import dataclass

import numpy as np

from netmimo.modules.log import getLogger
from netmimo.modules.linalg import RANK_TOL, herm, numerical_rank

log = getLogger(__name__)

from .errors import BDError, DegenerateChannelError


@dataclass
class NullSpaceDecomp:
    """
    Null-space decomposition of the scheduled users' channels, all arrays stacked over users:
        V[k]       N_t x m_r, orthonormal basis of the null space of the other users' channels
        G[k]       n_r x m_r, effective channel H_k V_k
        G_pinv[k]  m_r x n_r, right pseudo-inverse G_k^H (G_k G_k^H)^{-1}
        Q[k]       N_t x n_r, V_k G_k^+
    """

    channels: np.ndarray  # (K, n_r, N_t)
    V: np.ndarray
    G: np.ndarray
    G_pinv: np.ndarray
    Q: np.ndarray

    @property
    def num_users(self) -> int:
        return self.channels.shape[0]

    @property
    def n_r(self) -> int:
        return self.channels.shape[1]

    @property
    def total_tx(self) -> int:
        return self.channels.shape[2]

    @property
    def m_r(self) -> int:
        return self.V.shape[2]


def check_dimensions(channels: np.ndarray):
    if channels.ndim != 3:
        raise BDError(f"channels must have shape (K, n_r, N_t), got {channels.shape}")
    k, n_r, n_tx = channels.shape
    if k < 1:
        raise BDError("no users scheduled")
    if k * n_r > n_tx:
        raise BDError(
            f"{k} users with {n_r} receive antennas need at least {k * n_r} transmit antennas, "
            f"cluster has {n_tx}"
        )


def null_space_basis(channels: np.ndarray, k: int) -> Tuple[np.ndarray, int]:
    """
    Orthonormal basis of the null space of the other users' stacked channels,
    taken from the last m_r right singular vectors of their SVD.
    """
    check_dimensions(channels)
    num_users, n_r, n_tx = channels.shape

    if num_users == 1:
        return np.eye(n_tx, dtype=complex), n_tx

    others = np.delete(channels, k, axis=0).reshape((num_users - 1) * n_r, n_tx)
    _, s, vh = np.linalg.svd(others, full_matrices=True)

    rank = numerical_rank(s, RANK_TOL)
    if rank < others.shape[0]:
        raise DegenerateChannelError(
            f"channels of users other than {k} have rank {rank} < {others.shape[0]}"
        )

    m_r = n_tx - rank
    return herm(vh[rank:]), m_r


def effective_channels(channels: np.ndarray) -> NullSpaceDecomp:
    """Null-space bases, effective channels and their pseudo-inverses for all users"""
    channels = np.asarray(channels, dtype=complex)
    check_dimensions(channels)
    num_users, n_r, _ = channels.shape

    bases = []
    for k in range(num_users):
        v, _ = null_space_basis(channels, k)
        bases.append(v)
    v = np.stack(bases)

    g = channels @ v
    for k in range(num_users):
        s = np.linalg.svd(g[k], compute_uv=False)
        rank = numerical_rank(s, RANK_TOL)
        if rank < n_r:
            raise DegenerateChannelError(
                f"effective channel of user {k} has rank {rank} < {n_r}"
            )

    # ((G G^H)^{-1} G)^H = G^H (G G^H)^{-1}
    g_pinv = herm(np.linalg.solve(g @ herm(g), g))
    q = v @ g_pinv

    log.trace("null-space decomposition: K=%d m_r=%d", num_users, v.shape[2])
    return NullSpaceDecomp(channels=channels, V=v, G=g, G_pinv=g_pinv, Q=q)
