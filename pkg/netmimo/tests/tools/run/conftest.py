import json

import pytest


@pytest.fixture
def small_config_vars(tmp_path):
    """One B=1 sweep point with two single-antenna-receiver users per drop"""
    return {
        "cluster_size": 1,
        "n_t": 2,
        "n_r": 1,
        "users_per_cell": 3,
        "constraint": "per-antenna",
        "schemes": ["conventional", "optimal-per-antenna"],
        "drops": 2,
        "seed": 5,
        "workers": 1,
        "max_iter": 300,
        "output_dir": str(tmp_path / "results"),
    }


@pytest.fixture
def write_config(tmp_path):
    def writer(config_vars, name="experiment.json"):
        path = tmp_path / name
        path.write_text(json.dumps({"experiment": config_vars}), encoding="utf-8")
        return str(path)

    return writer
