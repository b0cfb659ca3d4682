import logging
import os
import warnings

import pytest
from _pytest.fixtures import SubRequest

from gso_framework.bench import ExperimentConfig, compare, format_comparison, run_experiment
from gso_framework.data import load_manifest
from gso_framework.tests.models import DATASETS_DIR

log = logging.getLogger(__name__)


@pytest.fixture()
def manifest_fx(request: SubRequest) -> str:
    path = os.path.join(DATASETS_DIR, f"{request.param}.yaml")
    data_file = load_manifest(path).path
    if not os.path.isfile(data_file):
        pytest.skip(f"{data_file} is not downloaded")

    return path


@pytest.mark.slow
@pytest.mark.parametrize("manifest_fx, algorithm, k, threshold", (
        ("cancer", "gso", 5, 92.0),
        ("diabetes", "cgso-s-wd", 5, 72.0),
), indirect=["manifest_fx"])
def test_dataset_accuracy(manifest_fx: str, algorithm: str, k: int, threshold: float) -> None:
    config = ExperimentConfig(dataset=manifest_fx, algorithm=algorithm, trials=10, population=50, max_iter=50, k=k,
                              seed=0)

    report = run_experiment(config)

    assert len(report.trials) == 10
    assert report.mean_accuracy >= threshold


@pytest.mark.slow
@pytest.mark.parametrize("manifest_fx", ("cancer",), indirect=True)
def test_hybrid_against_group_on_matched_seeds(manifest_fx: str) -> None:
    reports = [
        run_experiment(ExperimentConfig(dataset=manifest_fx, algorithm=algorithm, trials=30, population=50,
                                        max_iter=50, k=5, seed=0))
        for algorithm in ("cgso-h-wd", "gso")
    ]
    hybrid, single = reports

    assert [t.seed for t in hybrid.trials] == [t.seed for t in single.trials]
    log.info("\n" + format_comparison(compare(reports)))

    # the accuracy distributions overlap, a reversed ordering is reported rather than failed
    if hybrid.mean_accuracy < single.mean_accuracy - 0.5:
        warnings.warn(f"cgso-h-wd mean accuracy {hybrid.mean_accuracy:.2f}% is below gso "
                      f"{single.mean_accuracy:.2f}% by more than 0.5 points on {hybrid.dataset}.")
