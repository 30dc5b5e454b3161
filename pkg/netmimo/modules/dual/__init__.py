from .errors import ConvergenceQualityError, DomainError, DualOptimizerError
from .dual_state import (
    DualState,
    complementarity,
    dual_gradient,
    dual_value,
    evaluate,
    initial_dual,
    kkt_residual,
)
from .line_search import LineSearchParams, projected_backtracking
from .optimizer import (
    DualSolver,
    SolveOptions,
    SolveReport,
    TraceRecord,
    recover_precoders,
    solve,
)
from .gradient_check import GradientCheckResult, gradient_error, run_gradient_suite
