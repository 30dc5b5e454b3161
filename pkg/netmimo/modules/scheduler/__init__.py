from .errors import SchedulerError
from .evaluators import EvaluatorFactory, SubsetEvaluator
from .greedy import greedy_select, max_users
from .proportional_fair import ScheduleState, pf_update
