import typing as T
from enum import Enum

import numpy as np

from gso_framework.cooperative import Variant
from gso_framework.gso import Bounds, WdParams
from gso_framework.optimizer import CostFn, Optimizer
from gso_framework.optimizers.cooperative import CooperativeOptimizer
from gso_framework.optimizers.gso import GsoOptimizer


class Algorithm(str, Enum):
    GSO = "gso"
    GSO_WD = "gso-wd"
    CGSO_S_WD = "cgso-s-wd"
    CGSO_H_WD = "cgso-h-wd"

    @property
    def weight_decay(self) -> bool:
        return self != Algorithm.GSO

    @property
    def variant(self) -> T.Optional[Variant]:
        return {Algorithm.CGSO_S_WD: Variant.S, Algorithm.CGSO_H_WD: Variant.H}.get(self)


def build_optimizer(algorithm: T.Union[Algorithm, str], cost_fn: CostFn, bounds: Bounds, rng: np.random.Generator,
                    max_iter: int = 50, wd: T.Optional[WdParams] = None, k: int = 5,
                    variant: T.Optional[Variant] = None, exchange_half: T.Optional[int] = None,
                    name: T.Optional[str] = None, **param_kwargs) -> Optimizer:
    """
    :param wd: weight decay settings; when omitted, decay is on exactly for the *-wd algorithms
    :param variant: cooperative variant override, the algorithm's own variant otherwise
    :param param_kwargs: GsoParams fields (population, scrounger_fraction, boundary_policy)
    """
    algorithm = Algorithm(algorithm)
    name = name or algorithm.value
    if wd is None:
        wd = WdParams(enabled=algorithm.weight_decay)

    # boundary policy left unset picks each driver's own default
    param_kwargs = {key: value for key, value in param_kwargs.items() if value is not None}

    if algorithm.variant is None:
        return GsoOptimizer(name, cost_fn, bounds, rng, max_iter, wd=wd, **param_kwargs)

    return CooperativeOptimizer(name, cost_fn, bounds, rng, max_iter, k=k, variant=variant or algorithm.variant,
                                wd=wd, exchange_half=exchange_half, **param_kwargs)
