import typing as T

import numpy as np

from gso_framework.gso import Bounds, GsoParams, WdParams, evaluate_group, gso_iteration, spawn_group
from gso_framework.gso.models import GroupState
from gso_framework.optimizer import CostFn, Optimizer


class GsoOptimizer(Optimizer):
    """Single full-dimensional group, with or without weight decay."""

    def __init__(self, name: str, cost_fn: CostFn, bounds: Bounds, rng: np.random.Generator, max_iter: int = 50,
                 wd: T.Optional[WdParams] = None, **param_kwargs):
        super().__init__(name, cost_fn, bounds, rng, max_iter)
        self.params: GsoParams = GsoParams.for_bounds(bounds, max_iter=max_iter, **param_kwargs)
        self.wd: WdParams = wd if wd is not None else WdParams()
        self.group: T.Optional[GroupState] = None

    def initialize(self) -> None:
        group = spawn_group(self.bounds, self.params, self.rng, self.wd)
        self.group = evaluate_group(group, self.counter, self.wd)

    def step(self) -> None:
        gso_iteration(self.group, self.counter, self.params, self.rng, self.wd)

    def best(self) -> T.Tuple[np.ndarray, float]:
        return self.group.best_position.copy(), self.group.best_cost
