import numpy as np
import pytest
import scipy.linalg

from netmimo.modules.channel_model import (
    ChannelModelError,
    FadingParams,
    build_layout,
    drop_users,
    generate_channels,
    interference_covariance,
    whiten_interference,
)


@pytest.fixture
def channels():
    layout = build_layout(3)
    drop = drop_users(layout, 2, seed=21)
    return generate_channels(layout, drop, FadingParams(), n_t=2, n_r=2, seed=21)


def test_covariance(channels):
    budget = np.array([0.5, 0.5])
    covariance = interference_covariance(channels, budget)

    g = channels.interference[0]
    expected = np.eye(2) + 0.5 * g @ g.conj().T
    assert np.allclose(covariance[0], expected)
    assert np.all(np.linalg.eigvalsh(covariance) >= 1.0 - 1e-12)


def test_whitened_channels(channels):
    budget = np.array([0.5, 0.5])
    whitened = whiten_interference(channels, budget)
    covariance = interference_covariance(channels, budget)

    assert whitened.whitened.shape == channels.aggregate.shape
    assert whitened.effective is whitened.whitened
    for k in range(channels.num_users):
        root = scipy.linalg.sqrtm(covariance[k])
        assert np.allclose(root @ whitened.whitened[k], channels.aggregate[k])


def test_bad_budgets(channels):
    with pytest.raises(ChannelModelError):
        interference_covariance(channels, np.array([0.5, -0.5]))

    with pytest.raises(ChannelModelError):
        n_int_tx = channels.interference.shape[-1]
        interference_covariance(channels, np.full(n_int_tx + 1, 0.5))
