import numpy as np
import pytest

from netmimo.tools.run.experiment import DropResult, ExperimentResult, SchemeDrop
from netmimo.tools.run.experiment_config import ExperimentConfig, SweepPoint
from netmimo.tools.run.outputs import emit_outputs


def make_result(scheduler: str, nonconverged: int = 0) -> ExperimentResult:
    config = ExperimentConfig.from_dict(
        {
            "cluster_size": 1,
            "n_t": 2,
            "n_r": 1,
            "users_per_cell": 2,
            "scheduler": scheduler,
            "drops": 2,
            "output_dir": "unused",
        }
    )
    point = SweepPoint(1, 2, 2)
    pf = scheduler == "pf"

    drops = []
    for index, (rate, user_rates) in enumerate([(2.0, [0.5, 1.5]), (4.0, [1.5, 2.5])]):
        drops.append(
            DropResult(
                point=point,
                drop=index,
                schemes={
                    "conventional": SchemeDrop(
                        "conventional", rate, user_mean_rates=np.array(user_rates) if pf else None
                    ),
                    "optimal-per-antenna": SchemeDrop(
                        "optimal-per-antenna",
                        rate + 0.5,
                        solves=1,
                        nonconverged=nonconverged if index == 1 else 0,
                        user_mean_rates=np.array(user_rates) + 0.25 if pf else None,
                    ),
                },
            )
        )
    return ExperimentResult(config, drops)


@pytest.fixture
def msr_results_dir(tmp_path):
    directory = str(tmp_path / "msr")
    emit_outputs(make_result("msr"), directory)
    return directory


@pytest.fixture
def pf_results_dir(tmp_path):
    directory = str(tmp_path / "pf")
    emit_outputs(make_result("pf", nonconverged=1), directory)
    return directory
