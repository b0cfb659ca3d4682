from .dispatcher import TrialDispatcher
from .optimizer import Optimizer, OptimizationResult
