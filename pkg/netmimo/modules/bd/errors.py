class BDError(Exception):
    """Base class for errors in block diagonalization kernels"""


class DegenerateChannelError(BDError):
    """Channel matrices are rank deficient within the rank tolerance"""


class ConstraintError(BDError):
    """Exception class for invalid power constraints"""
