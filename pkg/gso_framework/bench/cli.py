import argparse
import logging
import multiprocessing
import sys
import typing as T

from gso_framework.bench.config import FitnessSplit, ReportFormat, load_config
from gso_framework.bench.report import compare, emit_report, format_comparison, parse_report, render_report
from gso_framework.bench.runner import run_experiment
from gso_framework.exceptions import ConfigError, DatasetError
from gso_framework.logger import start_logging
from gso_framework.optimizers import Algorithm

log = logging.getLogger("bench")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bench", description="Group search optimizer benchmark runs and comparisons.")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="Run seeded trials of one algorithm on one dataset.")
    run.add_argument("--config", help="YAML config file; flags given here override its keys.")
    run.add_argument("--dataset", help="Dataset manifest (YAML).")
    run.add_argument("--algo", dest="algorithm", choices=[a.value for a in Algorithm])
    run.add_argument("--trials", type=int)
    run.add_argument("--pop", dest="population", type=int)
    run.add_argument("--iters", dest="max_iter", type=int)
    run.add_argument("--k", type=int, help="Number of sub-groups of the cooperative variants.")
    run.add_argument("--seed", type=int)
    run.add_argument("--workers", type=int, help="Parallel trial processes.")
    run.add_argument("--fitness-split", dest="fitness_split", choices=[s.value for s in FitnessSplit])
    run.add_argument("--out", help="Report path; the report goes to stdout when omitted.")
    run.add_argument("--format", choices=[f.value for f in ReportFormat])
    run.add_argument("--log-level", dest="log_level")
    run.add_argument("--log-file", dest="log_file", help="JSON-lines log file.")

    comparison = commands.add_parser("compare", help="ANOVA and pairwise t tests across reports.")
    comparison.add_argument("reports", nargs="+", help="Reports written by `bench run`.")
    comparison.add_argument("--alpha", type=float, default=0.025, help="Per-test significance level.")
    comparison.add_argument("--out", help="Write the comparison as JSON.")

    return parser


def run_command(args: argparse.Namespace) -> int:
    overrides = {key: value for key, value in vars(args).items() if key not in ("command", "config")}
    config = load_config(args.config, overrides)

    log_queue, listener = start_logging(multiprocessing.get_context("spawn"), config.log_level, config.log_file)
    try:
        report = run_experiment(config, log_queue=log_queue)
        if config.out:
            emit_report(report, config.format, config.out)
            log.info(f"Report written to {config.out}.")
    finally:
        listener.stop()

    if not config.out:
        sys.stdout.write(render_report(report, config.format))

    return 0


def compare_command(args: argparse.Namespace) -> int:
    reports = []
    for path in args.reports:
        try:
            reports.append(parse_report(path))
        except FileNotFoundError:
            raise ConfigError(f"Report {path} does not exist.")

    try:
        comparison = compare(reports, names=args.reports, alpha_per_test=args.alpha)
    except ValueError as e:
        raise ConfigError(str(e))

    sys.stdout.write(format_comparison(comparison))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(comparison.model_dump_json(indent=2))

    return 0


def main(argv: T.Optional[T.Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)

    try:
        if args.command == "run":
            return run_command(args)

        return compare_command(args)
    except (ConfigError, DatasetError) as e:
        sys.stderr.write(f"bench: {e}\n")
        return 2
    except Exception as e:
        sys.stderr.write(f"bench: {e.__class__.__name__}: {e}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
