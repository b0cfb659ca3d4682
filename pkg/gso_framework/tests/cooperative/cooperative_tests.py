import math

import numpy as np
import pytest
from _pytest.fixtures import SubRequest
from pytest_mock import MockerFixture

from gso_framework.cooperative import (
    CooperativeState,
    Variant,
    cgso_h_iteration,
    cgso_s_iteration,
    context_vector,
    init_cooperative,
    make_partition,
    pick_exchange_index,
    report_best,
    sub_cost,
)
from gso_framework.cooperative import engine as cooperative_engine
from gso_framework.gso import BoundaryPolicy, Bounds, WdParams
from gso_framework.optimizers import build_optimizer
from gso_framework.tests.models import group, sphere


@pytest.fixture()
def state_fx(request: SubRequest) -> CooperativeState:
    n, k, variant = request.param
    partition = make_partition(n, k)
    return init_cooperative(sphere, Bounds.box(-1.0, 1.0, n), partition, np.random.default_rng(6), variant,
                            WdParams(enabled=True), population=10)


@pytest.mark.parametrize("n, k, spans", (
        (10, 3, [(0, 4), (4, 3), (7, 3)]),
        (9, 3, [(0, 3), (3, 3), (6, 3)]),
        (7, 1, [(0, 7)]),
        (4, 4, [(0, 1), (1, 1), (2, 1), (3, 1)]),
))
def test_correct_partition(n: int, k: int, spans: list) -> None:
    partition = make_partition(n, k)

    assert partition.spans == spans
    assert partition.dimension == n


@pytest.mark.parametrize("n, k", ((5, 0), (5, 6)))
def test_incorrect_partition(n: int, k: int) -> None:
    with pytest.raises(ValueError):
        make_partition(n, k)


def test_context_vector_replaces_one_piece() -> None:
    rng = np.random.default_rng(0)
    for _ in range(1000):
        n = int(rng.integers(2, 30))
        partition = make_partition(n, int(rng.integers(1, n + 1)))
        context = partition.split(rng.normal(size=n))
        j = int(rng.integers(partition.k))
        vec = rng.normal(size=partition.spans[j][1])

        full = context_vector(partition, j, vec, context)

        assert full.shape == (n,)
        assert np.array_equal(partition.piece(full, j), vec)
        for other in range(partition.k):
            if other != j:
                assert np.array_equal(partition.piece(full, other), context[other])


def test_incorrect_context_vector() -> None:
    partition = make_partition(6, 2)
    with pytest.raises(ValueError):
        context_vector(partition, 0, np.zeros(2), partition.split(np.zeros(6)))


@pytest.mark.parametrize("state_fx", ((6, 2, Variant.S),), indirect=True)
def test_correct_sub_cost(state_fx: CooperativeState) -> None:
    vec = np.array([0.5, 0.5, 0.5])
    expected = sphere(np.concatenate([vec, state_fx.context_best[1]]))

    assert sub_cost(state_fx, 0, sphere, vec) == pytest.approx(expected)


def test_short_spans_rejected() -> None:
    with pytest.raises(ValueError):
        init_cooperative(sphere, Bounds.box(-1.0, 1.0, 5), make_partition(5, 3), np.random.default_rng(0))

    with pytest.raises(ValueError):
        init_cooperative(sphere, Bounds.box(-1.0, 1.0, 6), make_partition(4, 2), np.random.default_rng(0))


@pytest.mark.parametrize("state_fx", ((6, 2, Variant.S), (9, 3, Variant.H)), indirect=True)
def test_initial_state(state_fx: CooperativeState) -> None:
    assert len(state_fx.subgroups) == state_fx.partition.k
    assert state_fx.assembled_cost == pytest.approx(sphere(state_fx.assemble()))
    assert all(p.boundary_policy == BoundaryPolicy.ABSORB for p in state_fx.sub_params)
    assert [g.dimension for g in state_fx.subgroups] == [length for _, length in state_fx.partition.spans]


@pytest.mark.parametrize("state_fx", ((8, 2, Variant.S), (9, 3, Variant.S)), indirect=True)
def test_s_iteration_keeps_assembled_cost_monotone(state_fx: CooperativeState) -> None:
    rng = np.random.default_rng(12)
    wd = WdParams(enabled=True)

    cost = state_fx.assembled_cost
    for _ in range(15):
        cgso_s_iteration(state_fx, sphere, rng, wd)

        assert state_fx.assembled_cost <= cost
        assert state_fx.assembled_cost == sphere(state_fx.assemble())
        assert state_fx.bounds.contains(state_fx.assemble())
        cost = state_fx.assembled_cost

    assert state_fx.iteration == 15


@pytest.mark.parametrize("state_fx", ((6, 2, Variant.H),), indirect=True)
def test_h_iteration(state_fx: CooperativeState) -> None:
    rng = np.random.default_rng(13)
    wd = WdParams(enabled=True)

    cost = state_fx.assembled_cost
    for _ in range(5):
        cgso_h_iteration(state_fx, sphere, rng, wd)

        assert state_fx.assembled_cost <= cost
        assert state_fx.assembled_cost == sphere(state_fx.assemble())
        cost = state_fx.assembled_cost

    position, best = report_best(state_fx)
    assert state_fx.q_group.iteration == 5
    assert best <= state_fx.assembled_cost
    assert best <= state_fx.q_group.best_cost
    assert best == pytest.approx(sphere(position))


@pytest.mark.parametrize("state_fx", ((6, 2, Variant.S),), indirect=True)
def test_h_iteration_needs_full_group(state_fx: CooperativeState) -> None:
    with pytest.raises(ValueError):
        cgso_h_iteration(state_fx, sphere, np.random.default_rng(0))


@pytest.mark.parametrize("exchange_half", (None, 3))
def test_exchange_index_skips_producer(exchange_half: int) -> None:
    state = group([[0.0, 0.0]] * 10, Bounds.box(-1.0, 1.0, 2), costs=[5.0, 4.0, 0.0] + [9.0] * 7)
    rng = np.random.default_rng(1)
    upper = exchange_half or math.ceil(10 / 2)

    picks = {pick_exchange_index(state, rng, exchange_half) for _ in range(200)}

    assert state.producer_index == 2
    assert picks == set(range(upper)) - {2}


def test_exchange_index_with_lone_candidate() -> None:
    state = group([[0.0, 0.0], [0.5, 0.5]], Bounds.box(-1.0, 1.0, 2), costs=[0.0, 0.5])
    assert pick_exchange_index(state, np.random.default_rng(0)) is None

    state = group([[0.0, 0.0], [0.5, 0.5]], Bounds.box(-1.0, 1.0, 2), costs=[0.5, 0.0])
    assert pick_exchange_index(state, np.random.default_rng(0)) == 0


def record_exchanges(mocker: MockerFixture, state: CooperativeState) -> list:
    """
    Wraps the exchange index draw and the Q iteration of the cooperative engine.
    Every entry is (group, picked index, producer index at pick time) or ("q", positions, assembled)
    right before Q iterates.
    """
    records = []
    pick = cooperative_engine.pick_exchange_index
    iteration = cooperative_engine.gso_iteration

    def recording_pick(target, rng, exchange_half=None):
        index = pick(target, rng, exchange_half)
        records.append((target, index, target.producer_index))
        return index

    def recording_iteration(target, *args, **kwargs):
        if target is state.q_group:
            records.append(("q", [m.position.copy() for m in target.members], state.assemble()))
        return iteration(target, *args, **kwargs)

    mocker.patch.object(cooperative_engine, "pick_exchange_index", side_effect=recording_pick)
    mocker.patch.object(cooperative_engine, "gso_iteration", side_effect=recording_iteration)
    return records


@pytest.mark.parametrize("state_fx", ((6, 2, Variant.H),), indirect=True)
def test_assembled_solution_enters_full_group(mocker: MockerFixture, state_fx: CooperativeState) -> None:
    records = record_exchanges(mocker, state_fx)
    rng = np.random.default_rng(31)

    for _ in range(10):
        records.clear()
        cgso_h_iteration(state_fx, sphere, rng, WdParams(enabled=True))

        (q_group, index, _), (_, positions, assembled) = records[0], records[1]
        assert q_group is state_fx.q_group
        assert np.array_equal(positions[index], assembled)


@pytest.mark.parametrize("state_fx", ((6, 2, Variant.H), (9, 3, Variant.H)), indirect=True)
def test_full_group_producer_enters_subgroups(mocker: MockerFixture, state_fx: CooperativeState) -> None:
    records = record_exchanges(mocker, state_fx)
    rng = np.random.default_rng(32)

    for _ in range(10):
        records.clear()
        cgso_h_iteration(state_fx, sphere, rng, WdParams(enabled=True))

        q_producer = state_fx.q_group.producer.position
        sub_picks = records[2:]
        assert len(sub_picks) == len(state_fx.subgroups)
        assert all(g is subgroup for (g, _, _), subgroup in zip(sub_picks, state_fx.subgroups))
        for j, (subgroup, index, _) in enumerate(sub_picks):
            assert np.array_equal(subgroup.members[index].position, state_fx.partition.piece(q_producer, j))


def test_exchanges_never_overwrite_producers(mocker: MockerFixture) -> None:
    state = init_cooperative(sphere, Bounds.box(-1.0, 1.0, 4), make_partition(4, 2), np.random.default_rng(33),
                             Variant.H, WdParams(enabled=True), population=4)
    records = record_exchanges(mocker, state)
    rng = np.random.default_rng(34)

    while sum(1 for g, _, _ in records if not isinstance(g, str)) < 1000:
        cgso_h_iteration(state, sphere, rng, WdParams(enabled=True))

    exchanges = [(index, producer) for g, index, producer in records if not isinstance(g, str)]
    assert all(index is not None and index != producer for index, producer in exchanges)


@pytest.mark.slow
def test_s_convergence_in_four_dimensions() -> None:
    bounds = Bounds.box(-1.0, 1.0, 4)

    converged = 0
    for seed in range(100):
        optimizer = build_optimizer("cgso-s-wd", sphere, bounds, np.random.default_rng(seed), max_iter=50, k=2,
                                    population=20)
        converged += optimizer.run().error < 1e-2

    assert converged >= 95


@pytest.mark.slow
def test_h_median_not_worse_than_group_at_matched_budget() -> None:
    bounds = Bounds.box(-1.0, 1.0, 4)
    population = 20

    hybrid, single = [], []
    for seed in range(100):
        result = build_optimizer("cgso-h-wd", sphere, bounds, np.random.default_rng(seed), max_iter=50, k=2,
                                 population=population).run()
        hybrid.append(result.error)

        # plain iterations cost three scan points plus the N-1 moved members
        iterations = (result.evaluations - population) // (population + 2)
        single.append(build_optimizer("gso", sphere, bounds, np.random.default_rng(seed), max_iter=iterations,
                                      population=population).run().error)

    assert np.median(hybrid) <= np.median(single)
