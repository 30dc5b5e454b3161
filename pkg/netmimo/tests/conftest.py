import os

import pytest

from netmimo.modules.bd import per_antenna, per_base_station, sum_power

from .instances import random_decomp

EXAMPLE_CONFIG = os.path.join(
    os.path.dirname(os.path.dirname(__file__)), "configs", "fig3.json"
)


@pytest.fixture
def example_config_path():
    return EXAMPLE_CONFIG


@pytest.fixture
def full_load_decomp():
    """K * n_r == N_t: every BD precoder is of the form Q_k X_k"""
    return random_decomp(seed=11, num_users=3, n_r=2, total_tx=6)


@pytest.fixture
def partial_load_decomp():
    return random_decomp(seed=12, num_users=2, n_r=2, total_tx=6)


@pytest.fixture
def constraints_b3_nt2():
    """Matched budgets for B=3 base stations with n_t=2 antennas: 1.0 per BS"""
    return {
        "per-antenna": per_antenna([0.5] * 6),
        "per-base-station": per_base_station([1.0] * 3, 2),
        "sum": sum_power(3.0, 6),
    }
