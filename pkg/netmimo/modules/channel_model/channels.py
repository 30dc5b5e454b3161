from typing import Optional, Sequence
from dataclasses import dataclass, replace

import numpy as np

from netmimo.modules.log import getLogger

log = getLogger(__name__)

from .errors import ChannelModelError
from .layout import CellLayout
from .users import UserDrop


@dataclass(frozen=True)
class FadingParams:
    path_loss_exponent: float = 3.8
    shadowing_std_db: float = 8.0
    reference_snr_db: float = 20.0
    cell_radius: float = 1.0  # d0, km
    min_distance: float = 0.035  # km, BS-user distance clamp

    def __post_init__(self):
        if self.path_loss_exponent <= 2:
            raise ChannelModelError(
                f"path loss exponent must be > 2, got {self.path_loss_exponent}"
            )
        if self.shadowing_std_db < 0:
            raise ChannelModelError(
                f"shadowing std must be >= 0 dB, got {self.shadowing_std_db}"
            )
        if self.cell_radius <= 0:
            raise ChannelModelError(f"cell radius must be > 0, got {self.cell_radius}")
        if self.min_distance <= 0:
            raise ChannelModelError(
                f"minimum distance must be > 0, got {self.min_distance}"
            )

    @property
    def reference_snr(self) -> float:
        return 10.0 ** (self.reference_snr_db / 10.0)


@dataclass
class ChannelSet:
    """
    Channels of the users of one drop.
        per_bs[k, b]: H_{k,b}, n_r x n_t, b over the analyzed cluster
        interference[k]: all interfering base stations side by side, n_r x (n_int * n_t)
        whitened[k]: R_k^{-1/2} H_k after whiten_interference, else None
    """

    per_bs: np.ndarray  # (K, B, n_r, n_t)
    interference: np.ndarray  # (K, n_r, n_int * n_t)
    whitened: Optional[np.ndarray] = None  # (K, n_r, N_t)

    @property
    def num_users(self) -> int:
        return self.per_bs.shape[0]

    @property
    def cluster_size(self) -> int:
        return self.per_bs.shape[1]

    @property
    def n_r(self) -> int:
        return self.per_bs.shape[2]

    @property
    def n_t(self) -> int:
        return self.per_bs.shape[3]

    @property
    def total_tx(self) -> int:
        return self.cluster_size * self.n_t

    @property
    def aggregate(self) -> np.ndarray:
        """H_k = [H_{k,1} ... H_{k,B}], shape (K, n_r, N_t)"""
        k, b, n_r, n_t = self.per_bs.shape
        return np.transpose(self.per_bs, (0, 2, 1, 3)).reshape(k, n_r, b * n_t)

    @property
    def effective(self) -> np.ndarray:
        """Channels used for precoding: whitened when available"""
        return self.whitened if self.whitened is not None else self.aggregate

    def subset(self, users: Sequence[int]) -> "ChannelSet":
        users = list(users)
        return replace(
            self,
            per_bs=self.per_bs[users],
            interference=self.interference[users],
            whitened=None if self.whitened is None else self.whitened[users],
        )


def large_scale_gains(
    layout: CellLayout,
    drop: UserDrop,
    fading: FadingParams,
    rng: np.random.Generator,
) -> np.ndarray:
    """
    Average power gain rho_{k,b} (d_kb / d0)^-beta * Gamma for every user and every
    cell of the layout, shape (K, n_cells). Shadowing is drawn once per (user, BS) pair.
    """
    diff = drop.positions[:, None, :] - layout.cell_centers[None, :, :]
    distance = np.maximum(np.linalg.norm(diff, axis=-1), fading.min_distance)

    shadow_db = rng.normal(0.0, fading.shadowing_std_db, size=distance.shape)
    shadow = 10.0 ** (shadow_db / 10.0)

    path_loss = (distance / fading.cell_radius) ** (-fading.path_loss_exponent)
    return shadow * path_loss * fading.reference_snr


def draw_channels(
    gains: np.ndarray,
    cluster_size: int,
    n_t: int,
    n_r: int,
    rng: np.random.Generator,
) -> ChannelSet:
    """
    Rayleigh fading over given large-scale gains. Columns 0..B-1 of `gains` are the
    analyzed cluster, the remaining columns the interfering cells.
    """
    k, n_cells = gains.shape
    shape = (k, n_cells, n_r, n_t)
    alpha = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)
    h = alpha * np.sqrt(gains)[:, :, None, None]

    per_bs = h[:, :cluster_size]
    n_int = n_cells - cluster_size
    interference = np.transpose(h[:, cluster_size:], (0, 2, 1, 3)).reshape(
        k, n_r, n_int * n_t
    )
    return ChannelSet(per_bs=per_bs, interference=interference)


def generate_channels(
    layout: CellLayout,
    drop: UserDrop,
    fading: FadingParams,
    n_t: int,
    n_r: int,
    seed=None,
    rng: Optional[np.random.Generator] = None,
) -> ChannelSet:
    """
    Path loss, lognormal shadowing and Rayleigh fading for one drop:
        [H_{k,b}]_{r,t} = alpha * sqrt(rho_{k,b} (d_kb / d0)^-beta * Gamma)
    """
    if n_t < 1 or n_r < 1:
        raise ChannelModelError(f"antenna counts must be >= 1, got n_t={n_t} n_r={n_r}")

    rng = rng if rng is not None else np.random.default_rng(seed)
    gains = large_scale_gains(layout, drop, fading, rng)
    channels = draw_channels(gains, layout.cluster_size, n_t, n_r, rng)
    log.trace(
        "generated channels for %d users, N_t=%d", channels.num_users, channels.total_tx
    )
    return channels


def iid_channels(
    num_users: int,
    n_r: int,
    total_tx: int,
    snr: float = 1.0,
    seed=None,
    rng: Optional[np.random.Generator] = None,
) -> np.ndarray:
    """Aggregate channels with i.i.d. CN(0, snr) entries, shape (K, n_r, N_t)"""
    if num_users < 1 or n_r < 1 or total_tx < 1:
        raise ChannelModelError(
            f"bad dimensions K={num_users} n_r={n_r} N_t={total_tx}"
        )
    if snr <= 0:
        raise ChannelModelError(f"snr must be positive, got {snr}")
    rng = rng if rng is not None else np.random.default_rng(seed)
    shape = (num_users, n_r, total_tx)
    alpha = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)
    return np.sqrt(snr) * alpha
