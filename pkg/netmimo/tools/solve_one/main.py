import sys

import numpy as np

from netmimo.modules.log import get_verbose_logger
from netmimo.modules.file_utils import print_dict_as_json
from netmimo.modules.channel_model import iid_channels
from netmimo.modules.bd import BDError, build_constraint, conventional_bd_feasible, effective_channels
from netmimo.modules.dual import DualOptimizerError, DualSolver, SolveOptions, TraceRecord
from netmimo.tools.common import EXIT_CONFIG, EXIT_NONCONVERGED, EXIT_OK

from .args import parse_args


def main(argv=None):
    """
    1. Draw i.i.d. Rayleigh channels for one cluster
    2. Solve optimal BD with the dual solver, print per-iteration trace at -vvvvv
    3. Print the solve report next to conventional BD
    """

    argv = argv if argv is not None else sys.argv[1:]
    args = parse_args(argv)
    log = get_verbose_logger(__name__, args.verbose)

    total_tx = args.cluster_size * args.n_t
    rng = np.random.default_rng(args.seed)

    try:
        options = SolveOptions(
            max_iter=SolveOptions.max_iter if args.max_iter is None else args.max_iter,
            tol_kkt=SolveOptions.tol_kkt if args.tol_kkt is None else args.tol_kkt,
            tol_gap=SolveOptions.tol_gap if args.tol_gap is None else args.tol_gap,
        )
        constraint = build_constraint(args.constraint, args.n_t, args.cluster_size, args.bs_power)
        channels = iid_channels(
            args.users, args.n_r, total_tx, snr=10.0 ** (args.snr_db / 10.0), rng=rng
        )
        decomp = effective_channels(channels)
    except (BDError, DualOptimizerError) as e:
        log.error("bad instance: %s", e)
        return EXIT_CONFIG

    def print_record(record: TraceRecord):
        log.trace(
            "iteration %d: g=%.8f primal=%.8f step=%.3g residual=%.3g",
            record.iteration,
            record.dual_value,
            record.primal,
            record.step,
            record.residual,
        )

    try:
        report = DualSolver(options).solve(decomp, constraint, trace_sink=print_record)
    except DualOptimizerError as e:
        log.error("while solving: %s", e)
        return EXIT_CONFIG

    conventional = conventional_bd_feasible(decomp, constraint)

    if args.json:
        summary = report.summary()
        summary["conventional_sum_rate"] = conventional.sum_rate
        print_dict_as_json(summary)
    else:
        log.info("[*] netmimo solve-one: K=%d N_t=%d n_r=%d, %s", args.users, total_tx, args.n_r, args.constraint)
        log.info("converged:        %s", report.converged)
        log.info("iterations:       %d", report.iterations)
        log.info("sum rate:         %.6f bits/s/Hz", report.primal_rate)
        log.info("dual value:       %.6f bits/s/Hz", report.dual_value)
        log.info("duality gap:      %.3g bits/s/Hz", report.gap)
        log.info("kkt residual:     %.3g", report.kkt_residual)
        log.info("conventional BD:  %.6f bits/s/Hz (%s)", conventional.sum_rate, conventional.label)

    return EXIT_OK if report.converged else EXIT_NONCONVERGED
