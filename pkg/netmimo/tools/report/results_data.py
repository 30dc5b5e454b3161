from typing import Dict, List
from dataclasses import dataclass, field

import os
from collections import OrderedDict

from netmimo.modules.log import getLogger

log = getLogger(__name__)

from netmimo.modules.file_utils import OutputError, load_json_file, read_csv
from netmimo.tools.run.outputs import CDF_MEANRATE_FILE, CONFIG_ECHO_FILE, SUMMARY_FILE

# PF runs report the share of users above this mean rate, bits/s/Hz
MEAN_RATE_THRESHOLD = 1.0


class ResultsDataError(Exception):
    """Exception class for errors while loading a results directory"""


@dataclass
class ResultsData:
    """Contents of a results directory written by the run tool"""

    directory: str
    experiment: dict
    summary: List[dict]
    users_above_threshold: List[dict] = field(default_factory=list)
    conventional_power_adaptation: str = ""
    nonconverged_solves: int = 0
    drops_completed: int = 0

    @classmethod
    def from_directory(cls, directory: str) -> "ResultsData":
        """
        Raise OutputError if files can't be read, ResultsDataError on unexpected contents.
        """
        echo_path = os.path.join(directory, CONFIG_ECHO_FILE)
        try:
            echo = load_json_file(echo_path)
        except ValueError as e:
            raise ResultsDataError(f"malformed json in file '{echo_path}': {e}") from e

        summary = read_csv(os.path.join(directory, SUMMARY_FILE))
        mean_rates = read_csv(os.path.join(directory, CDF_MEANRATE_FILE))

        try:
            experiment = echo["experiment"]
            run_info = echo.get("results", {})
            summary = [convert_summary_row(row) for row in summary]
            above = users_above(mean_rates, MEAN_RATE_THRESHOLD)
        except (KeyError, ValueError, TypeError) as e:
            raise ResultsDataError(f"unexpected contents in '{directory}': {e}") from e

        return cls(
            directory=directory,
            experiment=experiment,
            summary=summary,
            users_above_threshold=above,
            conventional_power_adaptation=echo.get("conventional_power_adaptation", ""),
            nonconverged_solves=int(run_info.get("nonconverged_solves", 0)),
            drops_completed=int(run_info.get("drops_completed", 0)),
        )

    def to_data_dict(self) -> dict:
        return {
            "directory": self.directory,
            "experiment": self.experiment,
            "summary": self.summary,
            "users_above_threshold": self.users_above_threshold,
            "threshold": MEAN_RATE_THRESHOLD,
            "conventional_power_adaptation": self.conventional_power_adaptation,
            "nonconverged_solves": self.nonconverged_solves,
            "drops_completed": self.drops_completed,
        }


def convert_summary_row(row: Dict[str, str]) -> dict:
    return {
        "scheme": row["scheme"],
        "B": int(row["B"]),
        "n_t": int(row["n_t"]),
        "users_per_cell": int(row["users_per_cell"]),
        "mean": float(row["mean"]),
        "std": float(row["std"]),
        "drops": int(row["drops"]),
        "nonconverged": int(row["nonconverged"]),
    }


def users_above(mean_rate_rows: List[Dict[str, str]], threshold: float) -> List[dict]:
    """Fraction of per-user mean rates above `threshold` for every (scheme, B, n_t, users_per_cell)"""
    groups: Dict[tuple, List[float]] = OrderedDict()
    for row in mean_rate_rows:
        key = (row["scheme"], int(row["B"]), int(row["n_t"]), int(row["users_per_cell"]))
        groups.setdefault(key, []).append(float(row["rate"]))

    return [
        {
            "scheme": scheme,
            "B": b,
            "n_t": n_t,
            "users_per_cell": upc,
            "users": len(rates),
            "fraction": sum(r > threshold for r in rates) / len(rates),
        }
        for (scheme, b, n_t, upc), rates in groups.items()
    ]
