from .dataset import (
    Dataset,
    DatasetManifest,
    MinMaxTransform,
    SplitSizes,
    Splits,
    load_csv,
    load_dataset,
    load_manifest,
    normalize,
    one_hot,
    pattern_sets,
    scale_sizes,
    split,
)
