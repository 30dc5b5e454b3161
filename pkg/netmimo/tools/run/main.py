import sys

from netmimo.modules.log import get_verbose_logger
from netmimo.modules.file_utils import OutputError
from netmimo.modules.channel_model import ChannelModelError
from netmimo.modules.bd import BDError
from netmimo.modules.dual import DualOptimizerError
from netmimo.modules.scheduler import SchedulerError

from netmimo.tools.common import EXIT_CONFIG, EXIT_IO, EXIT_NONCONVERGED, EXIT_OK

from .args import config_overrides, parse_args
from .experiment import run_experiment
from .experiment_config import ConfigError, load_experiment_config
from .outputs import emit_outputs


def main(argv=None):
    """
    1. Load experiment config, apply command line overrides
    2. Run all drops (optionally in worker processes)
    3. Write summary, CDF and convergence CSVs and config echo
    """

    argv = argv if argv is not None else sys.argv[1:]
    args = parse_args(argv)
    log = get_verbose_logger(__name__, args.verbose)

    log.info("[*] netmimo run tool")

    try:
        config = load_experiment_config(args.config, config_overrides(args))
    except ConfigError as e:
        log.error("bad configuration: %s", e)
        return EXIT_CONFIG
    except OutputError as e:
        log.error("wasn't able to read configuration: %s", e)
        return EXIT_IO

    log.verbose1(
        "Running %d drop(s) for %d sweep point(s), schemes: %s",
        config.drops,
        len(config.points()),
        ", ".join(config.schemes),
    )

    try:
        result = run_experiment(config, show_progress=args.progress)
    except ConfigError as e:
        log.error("bad configuration: %s", e)
        return EXIT_CONFIG
    except (ChannelModelError, BDError, DualOptimizerError, SchedulerError) as e:
        log.error("while running experiment: %s", e)
        return EXIT_CONFIG

    try:
        emit_outputs(result, config.output_dir)
    except OutputError as e:
        log.error("wasn't able to save results: %s", e)
        return EXIT_IO

    for row in result.summary_rows():
        log.info(
            "%-26s B=%d n_t=%d users/cell=%d: %.4f bits/s/Hz/cell (std %.4f, %d drops)",
            row["scheme"],
            row["B"],
            row["n_t"],
            row["users_per_cell"],
            row["mean"],
            row["std"],
            row["drops"],
        )

    if result.nonconverged_solves:
        log.warning(
            "%d solve(s) did not converge, results written to %s",
            result.nonconverged_solves,
            config.output_dir,
        )
        return EXIT_NONCONVERGED

    log.info("[+] Results written to %s", config.output_dir)
    return EXIT_OK
