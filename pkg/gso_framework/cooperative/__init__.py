from .partition import Partition, make_partition
from .state import CooperativeState, SubCost, Variant, context_vector, sub_cost
from .engine import cgso_h_iteration, cgso_s_iteration, init_cooperative, pick_exchange_index, report_best
