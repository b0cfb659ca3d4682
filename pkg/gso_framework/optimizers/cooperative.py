import typing as T

import numpy as np

from gso_framework.cooperative import (
    CooperativeState,
    Variant,
    cgso_h_iteration,
    cgso_s_iteration,
    init_cooperative,
    make_partition,
    report_best,
)
from gso_framework.gso import Bounds, WdParams
from gso_framework.optimizer import CostFn, Optimizer


class CooperativeOptimizer(Optimizer):
    """
    K sub-groups over contiguous dimension spans, optionally joined by a full-dimensional group (hybrid variant).
    One step is one outer cooperative iteration, so max_iter counts outer iterations.
    """

    def __init__(self, name: str, cost_fn: CostFn, bounds: Bounds, rng: np.random.Generator, max_iter: int = 50,
                 k: int = 5, variant: Variant = Variant.S, wd: T.Optional[WdParams] = None,
                 exchange_half: T.Optional[int] = None, **param_kwargs):
        super().__init__(name, cost_fn, bounds, rng, max_iter)
        self.partition = make_partition(bounds.dimension, k)
        self.variant: Variant = Variant(variant)
        self.wd: WdParams = wd if wd is not None else WdParams(enabled=True)
        self.exchange_half = exchange_half
        self.param_kwargs = dict(param_kwargs, max_iter=max_iter)
        self.state: T.Optional[CooperativeState] = None

    def initialize(self) -> None:
        self.state = init_cooperative(self.counter, self.bounds, self.partition, self.rng, self.variant, self.wd,
                                      **self.param_kwargs)

    def step(self) -> None:
        if self.state.variant == Variant.H:
            cgso_h_iteration(self.state, self.counter, self.rng, self.wd, self.exchange_half)
        else:
            cgso_s_iteration(self.state, self.counter, self.rng, self.wd)

    def best(self) -> T.Tuple[np.ndarray, float]:
        return report_best(self.state)
