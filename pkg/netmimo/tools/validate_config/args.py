import sys

from netmimo.tools.common import ToolArgumentParser, add_verbose_argument


def parse_args(argv):
    parser = create_argument_parser()

    if len(argv) < 1:
        parser.print_help()
        sys.exit(0)

    return parser.parse_args(argv)


def create_argument_parser():
    parser = ToolArgumentParser(
        description="%(prog)s - tool to validate experiment config files",
    )
    add_verbose_argument(parser)
    parser.add_argument("config", help="path to JSON experiment config")
    parser.add_argument(
        "--dump",
        help="print the config with defaults applied as JSON",
        action="store_true",
    )
    return parser
