from typing import Any, Dict, List, Optional
from dataclasses import asdict, dataclass

import os
import itertools

from netmimo.modules.log import getLogger

log = getLogger(__name__)

from netmimo.modules.file_utils import load_json_file
from netmimo.modules.channel_model import ChannelModelError, FadingParams
from netmimo.modules.channel_model.layout import CLUSTER_SHAPES
from netmimo.modules.bd import ConstraintFactory, SUM_POWER
from netmimo.modules.dual import DualOptimizerError, SolveOptions
from netmimo.modules.scheduler import EvaluatorFactory, max_users
from netmimo.modules.schemes import SchemeFactory

CONFIG_SECTION = "experiment"

MSR = "msr"
PF = "pf"
SCHEDULERS = (MSR, PF)

DEFAULTS: Dict[str, Any] = {
    "cluster_size": 3,
    "n_t": 4,
    "n_r": 2,
    "users_per_cell": 10,
    "constraint": "per-antenna",
    "bs_power": 1.0,
    "scheduler": MSR,
    "tau": 10.0,
    "selection_evaluator": "conventional",
    "schemes": ["conventional", "optimal-per-antenna"],
    "drops": 20,
    "slots": 100,
    "seed": 0,
    "workers": 1,
    "max_iter": 500,
    "tol_kkt": 1e-6,
    "tol_gap": 1e-5,
    "path_loss_exponent": 3.8,
    "shadowing_std_db": 8.0,
    "reference_snr_db": 20.0,
    "cell_radius_km": 1.0,
    "min_distance_km": 0.035,
    "output_dir": None,
}

# keys which may hold a list of values, one sub-experiment per combination
SWEEP_KEYS = ("cluster_size", "n_t", "users_per_cell")


class ConfigError(Exception):
    """Exception class for errors in configuration reader classes."""


class ExperimentConfigError(ConfigError):
    """Exception class for errors in ExperimentConfig class."""


@dataclass(frozen=True)
class SweepPoint:
    cluster_size: int
    n_t: int
    users_per_cell: int

    @property
    def total_tx(self) -> int:
        return self.cluster_size * self.n_t

    @property
    def num_users(self) -> int:
        return self.cluster_size * self.users_per_cell


@dataclass
class ExperimentConfig:
    """
    Monte Carlo experiment settings.
    NOTE: the data validation is only happening in from_dict method.
    """

    cluster_sizes: List[int]
    n_t_values: List[int]
    n_r: int
    users_per_cell_values: List[int]
    constraint: str
    bs_power: float
    scheduler: str
    tau: float
    selection_evaluator: str
    schemes: List[str]
    drops: int
    slots: int
    seed: int
    workers: int
    max_iter: int
    tol_kkt: float
    tol_gap: float
    fading: FadingParams
    output_dir: str

    @classmethod
    def from_dict(
        cls, config_vars: Dict[str, Any], overrides: Optional[Dict[str, Any]] = None
    ) -> "ExperimentConfig":
        """
        Create new ExperimentConfig from the "experiment" object of a config file.
        Non-None values of `overrides` replace values from the file.
        Raise ExperimentConfigError naming the offending key on validation errors.
        """

        if not isinstance(config_vars, dict):
            raise ExperimentConfigError(
                f"'{CONFIG_SECTION}' must be an object, got {type(config_vars).__name__}"
            )

        unknown = sorted(set(config_vars) - set(DEFAULTS))
        if unknown:
            raise ExperimentConfigError(
                f"unknown key(s): {', '.join(unknown)}. Known keys: {', '.join(sorted(DEFAULTS))}"
            )

        cfg = dict(DEFAULTS)
        cfg.update(config_vars)
        cfg.update({k: v for k, v in (overrides or {}).items() if v is not None})

        cluster_sizes = as_int_list("cluster_size", cfg["cluster_size"])
        for b in cluster_sizes:
            if b not in CLUSTER_SHAPES:
                supported = ", ".join(str(s) for s in sorted(CLUSTER_SHAPES))
                raise ExperimentConfigError(
                    f"invalid value {b} for 'cluster_size'. Supported sizes: {supported}"
                )

        n_t_values = as_int_list("n_t", cfg["n_t"])
        n_r = as_int("n_r", cfg["n_r"])
        users_per_cell_values = as_int_list("users_per_cell", cfg["users_per_cell"])

        for b, n_t in itertools.product(cluster_sizes, n_t_values):
            if max_users(b * n_t, n_r) < 1:
                raise ExperimentConfigError(
                    f"invalid value {n_t} for 'n_t': cluster of {b} BSs can't serve "
                    f"a user with n_r={n_r}"
                )

        constraint = as_choice("constraint", cfg["constraint"], ConstraintFactory.names())
        bs_power = as_positive_float("bs_power", cfg["bs_power"])
        scheduler = as_choice("scheduler", cfg["scheduler"], SCHEDULERS)
        tau = as_positive_float("tau", cfg["tau"])
        if tau < 1:
            raise ExperimentConfigError(f"value {tau} for 'tau' must be >= 1")
        selection_evaluator = as_choice(
            "selection_evaluator", cfg["selection_evaluator"], EvaluatorFactory.names()
        )

        schemes = cfg["schemes"]
        if isinstance(schemes, str):
            schemes = [schemes]
        if not isinstance(schemes, list) or not schemes:
            raise ExperimentConfigError("'schemes' must be a nonempty list of scheme names")
        for scheme in schemes:
            as_choice("schemes", scheme, SchemeFactory.names())
        if len(set(schemes)) != len(schemes):
            raise ExperimentConfigError(f"duplicate entries in 'schemes': {schemes}")

        drops = as_int("drops", cfg["drops"])
        slots = as_int("slots", cfg["slots"])
        seed = as_int("seed", cfg["seed"], minimum=0)
        workers = as_int("workers", cfg["workers"])
        max_iter = as_int("max_iter", cfg["max_iter"])
        tol_kkt = as_positive_float("tol_kkt", cfg["tol_kkt"])
        tol_gap = as_positive_float("tol_gap", cfg["tol_gap"])

        try:
            fading = FadingParams(
                path_loss_exponent=as_positive_float(
                    "path_loss_exponent", cfg["path_loss_exponent"]
                ),
                shadowing_std_db=as_float("shadowing_std_db", cfg["shadowing_std_db"]),
                reference_snr_db=as_float("reference_snr_db", cfg["reference_snr_db"]),
                cell_radius=as_positive_float("cell_radius_km", cfg["cell_radius_km"]),
                min_distance=as_positive_float("min_distance_km", cfg["min_distance_km"]),
            )
        except ChannelModelError as e:
            raise ExperimentConfigError(f"invalid channel model parameters: {e}") from e

        output_dir = cfg["output_dir"] or os.getenv("NM_OUTPUT_DIR") or "./results"
        if not isinstance(output_dir, str):
            raise ExperimentConfigError(f"invalid value '{output_dir}' for 'output_dir'")

        config = cls(
            cluster_sizes=cluster_sizes,
            n_t_values=n_t_values,
            n_r=n_r,
            users_per_cell_values=users_per_cell_values,
            constraint=constraint,
            bs_power=bs_power,
            scheduler=scheduler,
            tau=tau,
            selection_evaluator=selection_evaluator,
            schemes=list(schemes),
            drops=drops,
            slots=slots,
            seed=seed,
            workers=workers,
            max_iter=max_iter,
            tol_kkt=tol_kkt,
            tol_gap=tol_gap,
            fading=fading,
            output_dir=output_dir,
        )
        return config

    @property
    def is_pf(self) -> bool:
        return self.scheduler == PF

    @property
    def conventional_scaled(self) -> bool:
        """Conventional BD runs under per-antenna or per-BS budgets (uniformly scaled)"""
        return "conventional" in self.schemes and self.constraint != SUM_POWER

    def points(self) -> List[SweepPoint]:
        return [
            SweepPoint(b, n_t, upc)
            for b, n_t, upc in itertools.product(
                self.cluster_sizes, self.n_t_values, self.users_per_cell_values
            )
        ]

    def solve_options(self) -> SolveOptions:
        try:
            return SolveOptions(
                max_iter=self.max_iter, tol_kkt=self.tol_kkt, tol_gap=self.tol_gap
            )
        except DualOptimizerError as e:
            raise ExperimentConfigError(str(e)) from e

    def to_dict(self) -> Dict[str, Any]:
        """Config keys and values as they would appear in a config file"""

        def scalar_or_list(values: List[int]):
            return values[0] if len(values) == 1 else list(values)

        fading = asdict(self.fading)
        return {
            "cluster_size": scalar_or_list(self.cluster_sizes),
            "n_t": scalar_or_list(self.n_t_values),
            "n_r": self.n_r,
            "users_per_cell": scalar_or_list(self.users_per_cell_values),
            "constraint": self.constraint,
            "bs_power": self.bs_power,
            "scheduler": self.scheduler,
            "tau": self.tau,
            "selection_evaluator": self.selection_evaluator,
            "schemes": list(self.schemes),
            "drops": self.drops,
            "slots": self.slots,
            "seed": self.seed,
            "workers": self.workers,
            "max_iter": self.max_iter,
            "tol_kkt": self.tol_kkt,
            "tol_gap": self.tol_gap,
            "path_loss_exponent": fading["path_loss_exponent"],
            "shadowing_std_db": fading["shadowing_std_db"],
            "reference_snr_db": fading["reference_snr_db"],
            "cell_radius_km": fading["cell_radius"],
            "min_distance_km": fading["min_distance"],
            "output_dir": self.output_dir,
        }


def load_experiment_config(
    path: str, overrides: Optional[Dict[str, Any]] = None
) -> ExperimentConfig:
    """
    Load config file with {"experiment": {...}} contents.
    Raise OutputError if the file can't be read, ExperimentConfigError on bad contents.
    """
    try:
        data = load_json_file(path)
    except ValueError as e:
        raise ExperimentConfigError(f"malformed json in file '{path}': {e}") from e

    if not isinstance(data, dict) or CONFIG_SECTION not in data:
        raise ExperimentConfigError(f"no '{CONFIG_SECTION}' object in file '{path}'")

    config = ExperimentConfig.from_dict(data[CONFIG_SECTION], overrides)
    log.verbose2("Loaded experiment config from %s", path)
    return config


def as_int(key: str, value: Any, minimum: int = 1) -> int:
    try:
        if isinstance(value, bool):
            raise ValueError("boolean given")
        if isinstance(value, float) and not value.is_integer():
            raise ValueError("not an integer")
        number = int(value)
    except (TypeError, ValueError) as e:
        raise ExperimentConfigError(f"invalid value '{value}' for '{key}': {e}") from e
    if number < minimum:
        raise ExperimentConfigError(f"value {number} for '{key}' must be >= {minimum}")
    return number


def as_int_list(key: str, value: Any) -> List[int]:
    values = value if isinstance(value, list) else [value]
    if not values:
        raise ExperimentConfigError(f"'{key}' must not be an empty list")
    return [as_int(key, v) for v in values]


def as_float(key: str, value: Any) -> float:
    try:
        if isinstance(value, bool):
            raise ValueError("boolean given")
        number = float(value)
    except (TypeError, ValueError) as e:
        raise ExperimentConfigError(f"invalid value '{value}' for '{key}': {e}") from e
    if number != number or number in (float("inf"), float("-inf")):
        raise ExperimentConfigError(f"value for '{key}' must be finite")
    return number


def as_positive_float(key: str, value: Any) -> float:
    number = as_float(key, value)
    if number <= 0:
        raise ExperimentConfigError(f"value {number} for '{key}' must be > 0")
    return number


def as_choice(key: str, value: Any, choices) -> str:
    if value not in choices:
        raise ExperimentConfigError(
            f"invalid value '{value}' for '{key}'. Supported values: {', '.join(choices)}"
        )
    return value
