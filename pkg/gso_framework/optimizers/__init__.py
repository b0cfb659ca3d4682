from .cooperative import CooperativeOptimizer
from .gso import GsoOptimizer
from .registry import Algorithm, build_optimizer
