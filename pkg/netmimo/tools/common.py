import sys
import argparse


class ToolArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that exits with code 1 on usage errors"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def add_verbose_argument(parser: argparse.ArgumentParser):
    parser.add_argument(
        "-v",
        "--verbose",
        help="print more informational messages (specify up to 5 times)",
        action="count",
        default=0,
    )


def add_solver_arguments(parser: argparse.ArgumentParser):
    solver_group = parser.add_argument_group("solver options")
    solver_group.add_argument(
        "--max-iter",
        help="iteration limit of the dual solver",
        type=int,
        default=None,
    )
    solver_group.add_argument(
        "--tol-kkt",
        help="KKT residual tolerance of the dual solver",
        type=float,
        default=None,
    )
    solver_group.add_argument(
        "--tol-gap",
        help="relative duality gap tolerance of the dual solver",
        type=float,
        default=None,
    )


EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_IO = 2
EXIT_NONCONVERGED = 3
