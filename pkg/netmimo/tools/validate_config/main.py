import sys

from netmimo.modules.log import get_verbose_logger
from netmimo.modules.file_utils import OutputError, print_dict_as_json
from netmimo.tools.common import EXIT_CONFIG, EXIT_IO, EXIT_OK
from netmimo.tools.run.experiment_config import ConfigError, load_experiment_config

from .args import parse_args


def main(argv=None):
    argv = argv if argv is not None else sys.argv[1:]
    args = parse_args(argv)
    log = get_verbose_logger(__name__, args.verbose)

    try:
        config = load_experiment_config(args.config)
        config.solve_options()
    except ConfigError as e:
        log.error("bad configuration: %s", e)
        return EXIT_CONFIG
    except OutputError as e:
        log.error("wasn't able to read configuration: %s", e)
        return EXIT_IO

    if args.dump:
        print_dict_as_json({"experiment": config.to_dict()})

    log.info(
        "[+] %s is valid: %d sweep point(s), %d drop(s) each",
        args.config,
        len(config.points()),
        config.drops,
    )
    return EXIT_OK
