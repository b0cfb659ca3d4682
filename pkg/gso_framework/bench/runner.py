import logging
import time
import typing as T
from multiprocessing import Queue

from gso_framework.bench.config import ExperimentConfig
from gso_framework.bench.report import ExperimentReport, TrialResult, summarize
from gso_framework.data import Dataset, SplitSizes, load_dataset, load_manifest, normalize, pattern_sets, scale_sizes
from gso_framework.data import split
from gso_framework.dispatcher import TrialDispatcher
from gso_framework.exceptions import ConfigError
from gso_framework.gso import Bounds
from gso_framework.network import MlpTopology, accuracy, make_cost_fn, mse_cost
from gso_framework.optimizers import build_optimizer
from gso_framework.utils import log_failures, make_rng, trial_seed

log = logging.getLogger(__name__)


@log_failures
def run_trial(config: ExperimentConfig, dataset: Dataset, sizes: SplitSizes, trial_index: int) -> TrialResult:
    """
    Fresh split, train-fitted normalization, one optimizer run and the test accuracy of its best network.
    The split and the optimizer draw from the same trial generator, split first.
    """
    seed = trial_seed(config.seed, trial_index)
    rng = make_rng(seed)

    splits = split(dataset.rows, sizes, rng)
    features, _ = normalize(dataset.features, splits)
    patterns = pattern_sets(features, dataset.labels, dataset.n_classes, splits)

    fitness_patterns = patterns[config.fitness_split.value]
    if len(fitness_patterns) == 0:
        raise ConfigError(f"The {config.fitness_split.value} split of {dataset.name} is empty.")

    if len(patterns["test"]) == 0:
        raise ConfigError(f"The test split of {dataset.name} is empty.")

    topology = MlpTopology(inputs=dataset.features.shape[1], hidden=config.hidden, outputs=dataset.n_classes)
    optimizer = build_optimizer(
        config.algorithm,
        make_cost_fn(topology, fitness_patterns),
        Bounds.box(-1.0, 1.0, topology.dimension),
        rng,
        max_iter=config.max_iter,
        wd=config.wd,
        k=config.k,
        variant=config.variant,
        exchange_half=config.exchange_half,
        name=f"{config.algorithm.value} #{trial_index}",
        population=config.population,
        scrounger_fraction=config.scrounger_fraction,
        boundary_policy=config.boundary_policy,
    )

    started = time.perf_counter()
    result = optimizer.run()
    train_time = time.perf_counter() - started

    if len(patterns["validation"]) > 0:
        validation_error = mse_cost(topology, result.position, patterns["validation"])
    else:
        validation_error = result.error

    trial = TrialResult(
        trial=trial_index,
        seed=seed,
        test_accuracy=100.0 * accuracy(topology, result.position, patterns["test"]),
        train_time=train_time,
        final_validation_error=float(validation_error),
        evaluations=result.evaluations,
        iterations=result.iterations,
    )
    log.info(f"Trial {trial_index} ({config.algorithm.value} on {dataset.name}): "
             f"test accuracy {trial.test_accuracy:.2f}%, {trial.evaluations} evaluations, {train_time:.2f}s.")
    return trial


def prepare_dataset(config: ExperimentConfig) -> T.Tuple[Dataset, SplitSizes, bool]:
    manifest = load_manifest(config.dataset)
    dataset = load_dataset(manifest)
    sizes, scaled = scale_sizes(manifest.sizes, dataset.rows)
    return dataset, sizes, scaled


def run_experiment(config: ExperimentConfig, log_queue: T.Optional[Queue] = None) -> ExperimentReport:
    """Runs config.trials trials, in parallel when config.workers > 1, and aggregates them in trial order."""
    dataset, sizes, scaled = prepare_dataset(config)

    dispatcher = TrialDispatcher(config.workers, config.log_level, config.log_file, log_queue)
    try:
        trials = dispatcher.run(run_trial, range(config.trials), config, dataset, sizes)
    finally:
        dispatcher.stop_logging()

    report = summarize(trials, config.algorithm.value, dataset.name, config.seed,
                       dropped_rows=dataset.dropped_rows, sizes_scaled=scaled)
    log.info(f"{report.algorithm} on {report.dataset}: {report.mean_accuracy:.2f} ± {report.std_accuracy:.2f}% "
             f"over {len(report.trials)} trials.")
    return report
