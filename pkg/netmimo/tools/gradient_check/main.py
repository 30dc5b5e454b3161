import sys

from netmimo.modules.log import get_verbose_logger
from netmimo.modules.dual import run_gradient_suite
from netmimo.tools.common import EXIT_CONFIG, EXIT_OK

from .args import parse_args


def main(argv=None):
    """
    Compare analytic dual gradients with central finite differences
    at random points for every constraint kind.
    """

    argv = argv if argv is not None else sys.argv[1:]
    args = parse_args(argv)
    log = get_verbose_logger(__name__, args.verbose)

    log.info("[*] netmimo gradient check")
    result = run_gradient_suite(seed=args.seed, points=args.points, epsilon=args.epsilon)

    for kind, error in result.max_error.items():
        log.info("%-18s max relative error %.3e", kind, error)
    log.info("max relative error: %.3e", result.worst)

    if result.worst > args.tolerance:
        log.error("gradient check failed: %.3e > %.3e", result.worst, args.tolerance)
        return EXIT_CONFIG

    log.info("[+] Gradient check passed")
    return EXIT_OK
