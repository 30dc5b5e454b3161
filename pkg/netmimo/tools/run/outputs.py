from typing import List, Sequence

import os

import numpy as np

from netmimo.modules.log import getLogger

log = getLogger(__name__)

from netmimo.modules.file_utils import ensure_dir, save_dict_to_json_file, write_csv
from netmimo.modules.bd import UNIFORM_SCALING

from .experiment import ExperimentResult

SUMMARY_FILE = "summary.csv"
CDF_SUMRATE_FILE = "cdf_sumrate.csv"
CDF_MEANRATE_FILE = "cdf_meanrate.csv"
CONVERGENCE_FILE = "convergence.csv"
CONFIG_ECHO_FILE = "config.echo.json"

SUMMARY_HEADER = ["scheme", "B", "n_t", "users_per_cell", "mean", "std", "drops", "nonconverged"]
CDF_HEADER = ["scheme", "B", "n_t", "users_per_cell", "rate", "cdf"]
CONVERGENCE_HEADER = [
    "B",
    "n_t",
    "users_per_cell",
    "drop",
    "iteration",
    "normalized_g",
    "primal_rate",
]


def empirical_cdf(values: Sequence[float]) -> List[tuple]:
    """(value, fraction of samples <= value) for sorted samples; last fraction is exactly 1.0"""
    ordered = np.sort(np.asarray(values, dtype=float))
    n = ordered.size
    return [(float(v), (i + 1) / n) for i, v in enumerate(ordered)]


def cdf_rows(samples: List[tuple]) -> List[list]:
    rows = []
    for point, scheme, values in samples:
        for rate, cdf in empirical_cdf(values):
            rows.append(
                [scheme, point.cluster_size, point.n_t, point.users_per_cell, rate, cdf]
            )
    return rows


def convergence_rows(result: ExperimentResult) -> List[list]:
    """Dual value of every iteration divided by the final one (first optimal solve per drop)"""
    rows = []
    for drop in result.drops:
        if not drop.convergence:
            continue
        final = drop.convergence[-1].dual_value
        point = drop.point
        for record in drop.convergence:
            rows.append(
                [
                    point.cluster_size,
                    point.n_t,
                    point.users_per_cell,
                    drop.drop,
                    record.iteration,
                    record.dual_value / final if final else float("nan"),
                    record.primal,
                ]
            )
    return rows


def config_echo(result: ExperimentResult) -> dict:
    config = result.config
    echo = {"experiment": config.to_dict()}
    if config.conventional_scaled:
        echo["conventional_power_adaptation"] = UNIFORM_SCALING
    echo["results"] = {
        "drops_completed": len(result.drops),
        "nonconverged_solves": result.nonconverged_solves,
        "excluded_scheme_drops": result.excluded_drops,
    }
    return echo


def emit_outputs(result: ExperimentResult, directory: str) -> List[str]:
    """
    Write summary, CDF, convergence CSVs and the config echo into `directory`.
    Raise OutputError with the offending path on I/O failures.
    """
    ensure_dir(directory)
    paths = []

    def path_of(name: str) -> str:
        path = os.path.join(directory, name)
        paths.append(path)
        return path

    summary = [[row[key] for key in SUMMARY_HEADER] for row in result.summary_rows()]
    write_csv(path_of(SUMMARY_FILE), SUMMARY_HEADER, summary)
    write_csv(path_of(CDF_SUMRATE_FILE), CDF_HEADER, cdf_rows(result.sum_rate_samples()))
    write_csv(path_of(CDF_MEANRATE_FILE), CDF_HEADER, cdf_rows(result.mean_rate_samples()))
    write_csv(path_of(CONVERGENCE_FILE), CONVERGENCE_HEADER, convergence_rows(result))
    save_dict_to_json_file(config_echo(result), path_of(CONFIG_ECHO_FILE))

    log.verbose1("Results saved to %s", directory)
    return paths
