import logging
import math
import typing as T

import numpy as np

from gso_framework.cooperative.partition import Partition
from gso_framework.cooperative.state import CooperativeState, CostFn, SubCost, Variant
from gso_framework.gso import BoundaryPolicy, Bounds, GroupState, GsoParams, WdParams
from gso_framework.gso.engine import evaluate_group, evaluate_member, gso_iteration, record_best, select_producer
from gso_framework.gso.engine import spawn_group

log = logging.getLogger(__name__)


def init_cooperative(cost_fn_full: CostFn, bounds: Bounds, partition: Partition, rng: np.random.Generator,
                     variant: Variant = Variant.S, wd: T.Optional[WdParams] = None,
                     **param_kwargs) -> CooperativeState:
    """
    Draws every sub-group (and Q for the hybrid variant) and evaluates them in order.
    Until sub-group j is evaluated, its slot of the context holds its first member.

    :param param_kwargs: GsoParams fields shared by all groups (population, scrounger_fraction, ...)
    """
    if partition.dimension != bounds.dimension:
        raise ValueError(f"Partition covers {partition.dimension} dimensions, bounds have {bounds.dimension}.")

    short = [length for _, length in partition.spans if length < 2]
    if short:
        raise ValueError("Every span needs at least 2 dimensions to carry a head angle.")

    param_kwargs.setdefault("boundary_policy", BoundaryPolicy.ABSORB)

    subgroups = []
    sub_params = []
    for offset, length in partition.spans:
        sub_bounds = bounds.restrict(offset, length)
        params = GsoParams.for_bounds(sub_bounds, **param_kwargs)
        sub_params.append(params)
        subgroups.append(spawn_group(sub_bounds, params, rng, wd))

    state = CooperativeState(
        partition=partition,
        bounds=bounds,
        subgroups=subgroups,
        sub_params=sub_params,
        context_best=[g.members[0].position.copy() for g in subgroups],
    )

    for j, group in enumerate(subgroups):
        evaluate_group(group, SubCost(state, j, cost_fn_full), wd)
        state.context_best[j] = group.best_position.copy()
        state.assembled_cost = group.best_cost

    if variant == Variant.H:
        state.q_params = GsoParams.for_bounds(bounds, **param_kwargs)
        state.q_group = evaluate_group(spawn_group(bounds, state.q_params, rng, wd), cost_fn_full, wd)

    return state


def _offer(state: CooperativeState, j: int, position: np.ndarray, error: float) -> None:
    """A sub-position only replaces the context piece when it lowers the assembled cost."""
    if error < state.assembled_cost:
        group = state.subgroups[j]
        group.best_cost = error
        group.best_position = np.array(position, dtype=float, copy=True)
        state.context_best[j] = group.best_position.copy()
        state.assembled_cost = error


def cgso_s_iteration(state: CooperativeState, cost_fn_full: CostFn, rng: np.random.Generator,
                     wd: T.Optional[WdParams] = None) -> CooperativeState:
    """
    One iteration of every sub-group in order 1..K. Each sub-group sees the context as refreshed by the
    sub-groups before it.
    """
    for j, group in enumerate(state.subgroups):
        # the sub-group's best, evaluated in today's context, is the assembled solution
        group.best_cost = state.assembled_cost
        group.best_position = state.context_best[j].copy()

        gso_iteration(group, SubCost(state, j, cost_fn_full), state.sub_params[j], rng, wd)

        state.context_best[j] = group.best_position.copy()
        state.assembled_cost = group.best_cost

    state.iteration += 1
    return state


def pick_exchange_index(group: GroupState, rng: np.random.Generator,
                        exchange_half: T.Optional[int] = None) -> T.Optional[int]:
    """
    Uniform index among the first half of the members, never the producer (re-drawn on collision).
    Returns None when the producer is the only candidate.
    """
    upper = exchange_half if exchange_half is not None else math.ceil(len(group.members) / 2)
    upper = max(1, min(upper, len(group.members)))

    if upper == 1 and group.producer_index == 0:
        return None

    while True:
        index = int(rng.integers(upper))
        if index != group.producer_index:
            return index


def cgso_h_iteration(state: CooperativeState, cost_fn_full: CostFn, rng: np.random.Generator,
                     wd: T.Optional[WdParams] = None, exchange_half: T.Optional[int] = None) -> CooperativeState:
    """
    Cooperative iteration interleaved with the full-dimensional group Q:
    sub-groups -> assembled context into a Q member -> Q iteration -> Q's producer split into one member
    of every sub-group. Producers are never overwritten.
    """
    if state.q_group is None:
        raise ValueError("The hybrid iteration needs the full-dimensional group Q.")

    cgso_s_iteration(state, cost_fn_full, rng, wd)
    q = state.q_group

    index = pick_exchange_index(q, rng, exchange_half)
    if index is not None:
        member = q.members[index]
        member.prev_position = member.position
        member.position = state.assemble()
        error = evaluate_member(member, cost_fn_full, wd, adapt=False)
        record_best(q, member.position, error)

    gso_iteration(q, cost_fn_full, state.q_params, rng, wd)

    q_producer = q.producer.position
    for j, group in enumerate(state.subgroups):
        index = pick_exchange_index(group, rng, exchange_half)
        if index is None:
            continue

        member = group.members[index]
        member.prev_position = member.position
        member.position = np.array(state.partition.piece(q_producer, j), dtype=float, copy=True)
        error = evaluate_member(member, SubCost(state, j, cost_fn_full), wd, adapt=False)
        _offer(state, j, member.position, error)
        select_producer(group)

    log.debug(f"Hybrid iteration {state.iteration}: assembled {state.assembled_cost:.6g}, Q best {q.best_cost:.6g}.")
    return state


def report_best(state: CooperativeState) -> T.Tuple[np.ndarray, float]:
    """The assembled sub-group bests, or Q's best-so-far when that one is lower."""
    position, cost = state.assemble(), state.assembled_cost

    if state.q_group is not None and state.q_group.best_cost < cost:
        return state.q_group.best_position.copy(), state.q_group.best_cost

    return position, cost
