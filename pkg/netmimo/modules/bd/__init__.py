from .errors import BDError, ConstraintError, DegenerateChannelError
from .constraints import (
    PER_ANTENNA,
    PER_BASE_STATION,
    SUM_POWER,
    ConstraintFactory,
    PowerConstraint,
    build_constraint,
    per_antenna,
    per_base_station,
    sum_power,
)
from .nullspace import NullSpaceDecomp, effective_channels, null_space_basis
from .waterfill import waterfill, waterfill_with_level
from .rates import to_bits, to_nats, user_rates, user_rates_nats
from .precoders import PrecoderSet, make_precoder_set, sum_rate
from .conventional import UNIFORM_SCALING, conventional_bd, conventional_bd_feasible
