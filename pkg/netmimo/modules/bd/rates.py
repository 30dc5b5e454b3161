import numpy as np

from netmimo.modules.linalg import herm

LN2 = np.log(2.0)


def user_rates_nats(channels: np.ndarray, precoders: np.ndarray) -> np.ndarray:
    """log det(I + H_k W_k W_k^H H_k^H) for every user, natural log"""
    hw = channels @ precoders
    n_r = channels.shape[1]
    _, logdet = np.linalg.slogdet(np.eye(n_r) + hw @ herm(hw))
    return logdet


def user_rates(channels: np.ndarray, precoders: np.ndarray) -> np.ndarray:
    """Per-user rates in bits/s/Hz"""
    return user_rates_nats(channels, precoders) / LN2


def to_bits(rate_nats):
    return rate_nats / LN2


def to_nats(rate_bits):
    return rate_bits * LN2
