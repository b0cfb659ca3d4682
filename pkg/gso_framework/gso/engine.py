import logging
import typing as T

import numpy as np

from gso_framework.gso.decay import WdParams, apply_decay, regularized_cost, update_error_history, update_lambda
from gso_framework.gso.geometry import direction_from_angles, enforce_bounds
from gso_framework.gso.models import Bounds, GroupState, GsoParams, Member

CostFn = T.Callable[[np.ndarray], float]

log = logging.getLogger(__name__)


def spawn_group(bounds: Bounds, params: GsoParams, rng: np.random.Generator,
                wd: T.Optional[WdParams] = None) -> GroupState:
    """
    Draws a group without evaluating it: positions uniform in the box, head angles uniform in (-pi, pi].
    """
    n = bounds.dimension
    positions = rng.uniform(bounds.lower, bounds.upper, size=(params.population, n))
    angles = np.pi - rng.uniform(0.0, 2 * np.pi, size=(params.population, n - 1))
    decay = wd.lambda0 if wd is not None and wd.enabled else 0.0

    members = [
        Member(position=positions[i], head_angle=angles[i], prev_position=positions[i].copy(), decay=decay)
        for i in range(params.population)
    ]
    return GroupState(members=members, bounds=bounds, best_position=positions[0].copy())


def evaluate_member(member: Member, cost_fn: CostFn, wd: T.Optional[WdParams] = None, adapt: bool = True) -> float:
    """
    Evaluates the raw error of the member's position and derives its cost.
    With weight decay on, the cost carries the decay penalty and, when adapt is set, the coefficient is updated
    against the member's running mean error (the mean includes the error just observed).
    """
    error = float(cost_fn(member.position))
    _observe(member, error, wd, adapt)
    return error


def _observe(member: Member, error: float, wd: T.Optional[WdParams], adapt: bool) -> None:
    member.error = error
    update_error_history(member, error)

    if wd is None or not wd.enabled:
        member.cost = error
        return

    member.cost = regularized_cost(error, member.decay, member.position)
    if adapt:
        member.decay = update_lambda(member.decay, error, member.mean_error, wd.inc)


def record_best(group: GroupState, position: np.ndarray, error: float) -> bool:
    if error < group.best_cost:
        group.best_cost = error
        group.best_position = np.array(position, dtype=float, copy=True)
        return True

    return False


def select_producer(group: GroupState) -> int:
    """Lowest cost wins, ties go to the lowest index. A new producer starts with a clean stagnation streak."""
    costs = np.array([m.cost for m in group.members])
    index = int(np.argmin(costs))

    if index != group.producer_index:
        group.producer_index = index
        group.stagnation = 0
        group.saved_angle = None

    return index


def evaluate_group(group: GroupState, cost_fn: CostFn, wd: T.Optional[WdParams] = None) -> GroupState:
    for member in group.members:
        error = evaluate_member(member, cost_fn, wd, adapt=False)
        record_best(group, member.position, error)

    group.producer_index = int(np.argmin([m.cost for m in group.members]))
    return group


def producer_scan(producer: Member, params: GsoParams, rng: np.random.Generator,
                  bounds: T.Optional[Bounds] = None) -> T.Tuple[T.List[np.ndarray], T.List[np.ndarray]]:
    """
    Samples the zero-degree, right and left points of the producer's scanning field.
    One normal step length and one uniform angle offset are shared by the three points.

    :return: the three candidate positions and the head angles they were sampled along
    """
    r1 = rng.standard_normal()
    r2 = rng.random(producer.head_angle.size)
    step = r1 * params.l_max
    offset = r2 * params.theta_max / 2

    angles = [producer.head_angle, producer.head_angle + offset, producer.head_angle - offset]
    points = [producer.position + step * direction_from_angles(angle) for angle in angles]

    if bounds is not None:
        points = [enforce_bounds(p, producer.position, bounds, params.boundary_policy) for p in points]

    return points, angles


def producer_update(group: GroupState, cost_fn: CostFn, params: GsoParams, rng: np.random.Generator,
                    wd: T.Optional[WdParams] = None) -> GroupState:
    producer = group.producer
    points, _ = producer_scan(producer, params, rng, group.bounds)

    errors = [float(cost_fn(p)) for p in points]
    if wd is not None and wd.enabled:
        costs = [regularized_cost(e, producer.decay, p) for e, p in zip(errors, points)]
    else:
        costs = errors

    for point, error in zip(points, errors):
        record_best(group, point, error)

    best = int(np.argmin(costs))
    if costs[best] < producer.cost:
        producer.prev_position = producer.position
        producer.position = np.array(points[best], dtype=float, copy=True)
        producer.cost = costs[best]
        producer.error = errors[best]
        group.stagnation = 0
        group.saved_angle = None
        return group

    if group.stagnation == 0:
        group.saved_angle = producer.head_angle.copy()

    producer.head_angle = producer.head_angle + rng.random(producer.head_angle.size) * params.alpha_max
    group.stagnation += 1

    if group.stagnation >= params.a:
        producer.head_angle = group.saved_angle.copy()
        group.stagnation = 0
        group.saved_angle = None

    return group


def scrounger_step(member: Member, producer_position: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    r3 = rng.random(member.position.size)
    return member.position + r3 * (producer_position - member.position)


def ranger_step(member: Member, params: GsoParams,
                rng: np.random.Generator) -> T.Tuple[np.ndarray, np.ndarray]:
    angle = member.head_angle + rng.random(member.head_angle.size) * params.alpha_max
    distance = params.a * rng.standard_normal() * params.l_max
    return member.position + distance * direction_from_angles(angle), angle


def gso_iteration(group: GroupState, cost_fn: CostFn, params: GsoParams, rng: np.random.Generator,
                  wd: T.Optional[WdParams] = None) -> GroupState:
    """
    One iteration of the group: producer scan, scrounger/ranger moves, boundary handling,
    optional weight decay, re-evaluation and best-so-far bookkeeping.

    All random draws happen before any evaluation of the moved members.
    """
    decay_on = wd is not None and wd.enabled

    select_producer(group)
    producer_update(group, cost_fn, params, rng, wd)
    producer_index = group.producer_index
    producer_position = group.producer.position

    for i, member in enumerate(group.members):
        if i == producer_index:
            continue

        if rng.random() < params.scrounger_fraction:
            candidate = scrounger_step(member, producer_position, rng)
        else:
            candidate, member.head_angle = ranger_step(member, params, rng)

        member.prev_position = member.position
        member.position = enforce_bounds(candidate, member.position, group.bounds, params.boundary_policy)

    for i, member in enumerate(group.members):
        if decay_on:
            decayed = apply_decay(member.position, member.decay)
            member.position = enforce_bounds(decayed, member.position, group.bounds, params.boundary_policy)
        elif i == producer_index:
            # position and error of the producer are already known, nothing new to record
            member.cost = member.error
            continue

        error = evaluate_member(member, cost_fn, wd)
        record_best(group, member.position, error)

    select_producer(group)
    group.iteration += 1

    if log.isEnabledFor(logging.DEBUG):
        log.debug(f"Iteration {group.iteration}: producer {group.producer_index}, best {group.best_cost:.6g}, "
                  f"stagnation {group.stagnation}.")

    return group
