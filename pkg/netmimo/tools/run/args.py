import os
import sys
from argparse import Namespace

from netmimo.tools.common import (
    ToolArgumentParser,
    add_solver_arguments,
    add_verbose_argument,
)


def parse_args(argv):
    parser = create_argument_parser()

    if len(argv) < 1:
        parser.print_help()
        sys.exit(0)

    args = parser.parse_args(argv)
    exit_on_bad_args(args)
    return args


def create_argument_parser():
    parser = ToolArgumentParser(
        description="%(prog)s - tool to run Monte Carlo network MIMO experiments",
    )
    add_verbose_argument(parser)

    input_group = parser.add_argument_group("input options")
    input_group.add_argument(
        "-c",
        "--config",
        help="path to JSON experiment config",
        required=True,
    )
    input_group.add_argument(
        "--seed",
        help="master seed (overrides config)",
        type=int,
        default=None,
    )
    input_group.add_argument(
        "--drops",
        help="number of drops per sweep point (overrides config)",
        type=int,
        default=None,
    )
    input_group.add_argument(
        "--workers",
        help="number of worker processes (overrides config)",
        type=int,
        default=None,
    )
    add_solver_arguments(parser)

    output_group = parser.add_argument_group("output options")
    output_group.add_argument(
        "-o",
        "--out",
        help="save results to DIR (overrides config, default: $NM_OUTPUT_DIR or ./results)",
        metavar="DIR",
        default=None,
    )
    output_group.add_argument(
        "--progress",
        help="show progress bar over drops",
        action="store_true",
    )

    return parser


def exit_on_bad_args(args: Namespace):

    if not os.path.isfile(args.config):
        sys.exit(f"ERROR: config file '{args.config}' doesn't exist")


def config_overrides(args: Namespace) -> dict:
    return {
        "seed": args.seed,
        "drops": args.drops,
        "workers": args.workers,
        "max_iter": args.max_iter,
        "tol_kkt": args.tol_kkt,
        "tol_gap": args.tol_gap,
        "output_dir": args.out,
    }
