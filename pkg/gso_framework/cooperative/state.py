import math
import typing as T
from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict

from gso_framework.cooperative.partition import Partition
from gso_framework.gso import Bounds, GroupState, GsoParams

CostFn = T.Callable[[np.ndarray], float]


class Variant(str, Enum):
    S = "s"
    H = "h"


class CooperativeState(BaseModel):
    """
    K sub-groups, each searching one span of the dimensions, plus the full-dimensional group Q for the
    hybrid variant. context_best[j] is the best sub-position of sub-group j; assembled_cost is the raw
    fitness of all context_best pieces put together.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    partition: Partition
    bounds: Bounds
    subgroups: T.List[GroupState]
    sub_params: T.List[GsoParams]
    context_best: T.List[np.ndarray]
    assembled_cost: float = math.inf
    q_group: T.Optional[GroupState] = None
    q_params: T.Optional[GsoParams] = None
    iteration: int = 0

    @property
    def variant(self) -> Variant:
        return Variant.S if self.q_group is None else Variant.H

    def assemble(self) -> np.ndarray:
        return self.partition.assemble(self.context_best)


def context_vector(partition: Partition, j: int, vec: np.ndarray, context_best: T.Sequence[np.ndarray]) -> np.ndarray:
    """b(j, vec): the best pieces of every other sub-group with vec placed in slot j."""
    offset, length = partition.spans[j]
    vec = np.asarray(vec, dtype=float)
    if vec.shape != (length,):
        raise ValueError(f"Sub-vector for span {j} must have length {length}, got {vec.shape}.")

    pieces = list(context_best)
    pieces[j] = vec
    return partition.assemble(pieces)


class SubCost:
    """Cost of sub-group j: the full cost evaluated on the context vector."""

    def __init__(self, state: CooperativeState, j: int, cost_fn_full: CostFn):
        self.state = state
        self.j = j
        self.cost_fn_full = cost_fn_full

    def __call__(self, vec: np.ndarray) -> float:
        return self.cost_fn_full(context_vector(self.state.partition, self.j, vec, self.state.context_best))


def sub_cost(state: CooperativeState, j: int, cost_fn_full: CostFn, vec: np.ndarray) -> float:
    return SubCost(state, j, cost_fn_full)(vec)
