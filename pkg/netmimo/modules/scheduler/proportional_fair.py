from dataclasses import dataclass, replace

import numpy as np

from .errors import SchedulerError

THROUGHPUT_FLOOR = 1e-6


@dataclass
class ScheduleState:
    """Exponentially averaged user throughputs T_k (bits/s/Hz) with window tau slots"""

    throughput: np.ndarray
    tau: float = 10.0
    slot: int = 0

    def __post_init__(self):
        self.throughput = np.asarray(self.throughput, dtype=float)
        if self.tau < 1:
            raise SchedulerError(f"tau must be >= 1, got {self.tau}")
        if np.any(self.throughput < 0):
            raise SchedulerError("averaged throughputs must be nonnegative")

    @classmethod
    def create(cls, num_users: int, tau: float = 10.0) -> "ScheduleState":
        return cls(throughput=np.zeros(num_users), tau=tau)

    @property
    def weights(self) -> np.ndarray:
        return 1.0 / np.maximum(self.throughput, THROUGHPUT_FLOOR)


def pf_update(state: ScheduleState, rates: np.ndarray) -> ScheduleState:
    """T <- (1 - 1/tau) T + r / tau; unscheduled users have rate 0"""
    rates = np.asarray(rates, dtype=float)
    if rates.shape != state.throughput.shape:
        raise SchedulerError(
            f"got {rates.shape[0] if rates.ndim else 0} rates for {state.throughput.size} users"
        )
    if np.any(rates < -1e-9):
        raise SchedulerError("user rates must be nonnegative")
    rates = np.maximum(rates, 0.0)

    forget = 1.0 / state.tau
    throughput = (1.0 - forget) * state.throughput + forget * rates
    return replace(state, throughput=throughput, slot=state.slot + 1)
