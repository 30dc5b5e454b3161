import sys
from argparse import Namespace

from netmimo.modules.bd import ConstraintFactory
from netmimo.tools.common import (
    ToolArgumentParser,
    add_solver_arguments,
    add_verbose_argument,
)


def parse_args(argv):
    parser = create_argument_parser()
    args = parser.parse_args(argv)
    exit_on_bad_args(args)
    return args


def create_argument_parser():
    parser = ToolArgumentParser(
        description="%(prog)s - tool to solve one random optimal BD instance",
    )
    add_verbose_argument(parser)

    instance_group = parser.add_argument_group("instance options")
    instance_group.add_argument(
        "--seed", help="random seed (default: 0)", type=int, default=0
    )
    instance_group.add_argument(
        "--cluster-size", help="number of base stations B (default: 3)", type=int, default=3
    )
    instance_group.add_argument(
        "--n-t", help="transmit antennas per base station (default: 4)", type=int, default=4
    )
    instance_group.add_argument(
        "--n-r", help="receive antennas per user (default: 2)", type=int, default=2
    )
    instance_group.add_argument(
        "--users",
        help="number of scheduled users (default: B * n_t // n_r)",
        type=int,
        default=None,
    )
    instance_group.add_argument(
        "--snr-db",
        help="average channel gain over noise in dB (default: 10)",
        type=float,
        default=10.0,
    )
    instance_group.add_argument(
        "--constraint",
        help="power constraint kind (default: per-antenna)",
        choices=ConstraintFactory.names(),
        default="per-antenna",
    )
    instance_group.add_argument(
        "--bs-power",
        help="total power of each base station (default: 1.0)",
        type=float,
        default=1.0,
    )
    add_solver_arguments(parser)

    output_group = parser.add_argument_group("output options")
    output_group.add_argument(
        "--json",
        help="print the solve report as JSON",
        action="store_true",
    )

    return parser


def exit_on_bad_args(args: Namespace):

    for name in ("cluster_size", "n_t", "n_r"):
        if getattr(args, name) < 1:
            sys.exit(f"ERROR in --{name.replace('_', '-')}: value must be >= 1")

    k_max = args.cluster_size * args.n_t // args.n_r
    if k_max < 1:
        sys.exit("ERROR: cluster has fewer transmit antennas than a user has receive antennas")

    if args.users is None:
        args.users = k_max
    if not 1 <= args.users <= k_max:
        sys.exit(f"ERROR in --users: value must be between 1 and {k_max}")

    if args.bs_power <= 0:
        sys.exit("ERROR in --bs-power: value must be positive")
