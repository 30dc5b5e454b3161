"""Common entry point for all the tools"""

import sys
import argparse

from netmimo.tools.run.main import main as run_main
from netmimo.tools.solve_one.main import main as solve_one_main
from netmimo.tools.gradient_check.main import main as gradient_check_main
from netmimo.tools.validate_config.main import main as validate_config_main
from netmimo.tools.report.main import main as report_main

tool_mapping = {
    "run": run_main,
    "solve-one": solve_one_main,
    "gradient-check": gradient_check_main,
    "validate-config": validate_config_main,
    "report": report_main,
}


def main(argv=None):
    argv = argv if argv is not None else sys.argv[1:]
    if len(argv) < 1:
        parser = argparse.ArgumentParser(
            prog="netmimo",
            description="%(prog)s - common entry point for all the netmimo tools",
            add_help=False,
        )
        parser.add_argument(
            "tool",
            help="name of the tool to run",
            choices=tool_mapping,
        )
        parser.add_argument(
            "arg", help="arguments for the tool", nargs=argparse.REMAINDER
        )
        parser.print_help()
        return 0

    tool = argv[0]
    args = argv[1:]
    if tool not in tool_mapping:
        print(
            f"ERROR: unknown tool '{tool}'. Tools supported:\n\t"
            + "\n\t".join(k for k in tool_mapping),
            file=sys.stderr,
        )
        return 1

    return tool_mapping[tool](args)


if __name__ == "__main__":
    sys.exit(main())
