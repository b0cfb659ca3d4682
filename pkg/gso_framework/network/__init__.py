from .mlp import (
    EncodedNetwork,
    MlpTopology,
    MseCost,
    PatternSet,
    accuracy,
    decode,
    dimension,
    encode,
    forward,
    make_cost_fn,
    mse_cost,
)
