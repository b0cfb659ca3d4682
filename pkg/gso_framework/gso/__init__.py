# ATTENTION! Models must be first!
from .models import Bounds, BoundaryPolicy, GroupState, GsoParams, Member

from .decay import WdParams, apply_decay, regularized_cost, update_error_history, update_lambda
from .engine import (
    evaluate_group,
    evaluate_member,
    gso_iteration,
    producer_scan,
    producer_update,
    ranger_step,
    scrounger_step,
    select_producer,
    spawn_group,
)
from .geometry import compute_lmax, direction_from_angles, enforce_bounds
