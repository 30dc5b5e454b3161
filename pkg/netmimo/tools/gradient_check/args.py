import sys
from argparse import Namespace

from netmimo.tools.common import ToolArgumentParser, add_verbose_argument


def parse_args(argv):
    parser = create_argument_parser()
    args = parser.parse_args(argv)
    exit_on_bad_args(args)
    return args


def create_argument_parser():
    parser = ToolArgumentParser(
        description="%(prog)s - tool to check the analytic dual gradient against finite differences",
    )
    add_verbose_argument(parser)
    parser.add_argument("--seed", help="random seed (default: 0)", type=int, default=0)
    parser.add_argument(
        "--points",
        help="random points per constraint kind (default: 50)",
        type=int,
        default=50,
    )
    parser.add_argument(
        "--epsilon",
        help="finite difference step (default: 1e-6)",
        type=float,
        default=1e-6,
    )
    parser.add_argument(
        "--tolerance",
        help="largest allowed relative error (default: 1e-5)",
        type=float,
        default=1e-5,
    )
    return parser


def exit_on_bad_args(args: Namespace):

    if args.points < 1:
        sys.exit("ERROR in --points: value must be >= 1")

    if args.epsilon <= 0 or args.tolerance <= 0:
        sys.exit("ERROR in --epsilon/--tolerance: values must be positive")
