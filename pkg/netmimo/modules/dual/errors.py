class DualOptimizerError(Exception):
    """Exception class for errors in the dual solver"""


class DomainError(DualOptimizerError):
    """Dual variables outside the domain of g: some Q_k^H Lambda Q_k is not positive definite"""


class ConvergenceQualityError(DualOptimizerError):
    """Dual point too far from optimal to recover PSD precoder covariances"""
