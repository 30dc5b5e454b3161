from dataclasses import dataclass

import numpy as np

from netmimo.modules.linalg import herm

from .constraints import PowerConstraint
from .rates import user_rates


@dataclass
class PrecoderSet:
    """BD precoders of the scheduled users with their rates (bits/s/Hz)"""

    precoders: np.ndarray  # (K, N_t, n_r)
    user_rates: np.ndarray  # (K,)
    label: str = ""

    @property
    def num_users(self) -> int:
        return self.precoders.shape[0]

    @property
    def sum_rate(self) -> float:
        return float(np.sum(self.user_rates))

    def weighted_rate(self, weights=None) -> float:
        """sum_k w_k r_k, the plain sum rate when `weights` is None"""
        if weights is None:
            return self.sum_rate
        return float(np.dot(np.asarray(weights, dtype=float), self.user_rates))

    @property
    def antenna_power(self) -> np.ndarray:
        """Diagonal of sum_k W_k W_k^H"""
        return np.sum(np.abs(self.precoders) ** 2, axis=(0, 2))

    def covariances(self) -> np.ndarray:
        return self.precoders @ herm(self.precoders)

    def leakage(self, channels: np.ndarray) -> float:
        """
        Largest ||H_j W_k||_F / (||H_j||_F ||W_k||_F) over j != k, 0 for a single user.
        """
        num_users = self.num_users
        if num_users < 2:
            return 0.0
        h_norm = np.linalg.norm(channels, axis=(1, 2))
        w_norm = np.linalg.norm(self.precoders, axis=(1, 2))
        worst = 0.0
        for j in range(num_users):
            for k in range(num_users):
                if j == k or h_norm[j] == 0 or w_norm[k] == 0:
                    continue
                cross = np.linalg.norm(channels[j] @ self.precoders[k])
                worst = max(worst, cross / (h_norm[j] * w_norm[k]))
        return float(worst)

    def is_zero_forcing(self, channels: np.ndarray, tol: float = 1e-8) -> bool:
        return self.leakage(channels) <= tol

    def is_feasible(self, constraint: PowerConstraint, tol: float = 1e-8) -> bool:
        return constraint.is_feasible(self.antenna_power, tol)

    def scaled(self, channels: np.ndarray, factor: float, label: str = None) -> "PrecoderSet":
        """Precoders multiplied by sqrt(factor) with recomputed rates"""
        precoders = self.precoders * np.sqrt(factor)
        return make_precoder_set(
            channels, precoders, self.label if label is None else label
        )


def make_precoder_set(channels: np.ndarray, precoders: np.ndarray, label: str = "") -> PrecoderSet:
    precoders = np.asarray(precoders, dtype=complex)
    return PrecoderSet(
        precoders=precoders,
        user_rates=user_rates(channels, precoders),
        label=label,
    )


def sum_rate(channels: np.ndarray, precoders: PrecoderSet) -> float:
    """sum_k log2 det(I + H_k W_k W_k^H H_k^H); refreshes the stored per-user rates"""
    precoders.user_rates = user_rates(channels, precoders.precoders)
    return precoders.sum_rate
