import io
import json
import typing as T

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field

from gso_framework.bench.config import ReportFormat
from gso_framework.bench.stats import AnovaResult, PairwiseResult, anova_f, bonferroni_pairwise


class TrialResult(BaseModel):
    trial: int = Field(ge=0)
    seed: int
    test_accuracy: float = Field(ge=0.0, le=100.0)
    train_time: float = Field(ge=0.0)
    final_validation_error: float
    evaluations: int = Field(gt=0)
    iterations: int = Field(ge=0)


class ExperimentReport(BaseModel):
    algorithm: str
    dataset: str
    seed: int
    trials: T.List[TrialResult]
    mean_accuracy: float
    std_accuracy: float = Field(ge=0.0)
    # sample standard deviation needs at least two trials
    std_defined: bool
    mean_time: float
    mean_evaluations: float
    dropped_rows: int = 0
    sizes_scaled: bool = False

    @property
    def accuracies(self) -> T.List[float]:
        return [t.test_accuracy for t in self.trials]


class ComparisonReport(BaseModel):
    names: T.List[str]
    mean_accuracy: T.List[float]
    std_accuracy: T.List[float]
    mean_time: T.List[float]
    anova: AnovaResult
    pairwise: PairwiseResult


AGGREGATE_FIELDS = [name for name in ExperimentReport.model_fields if name != "trials"]


def summarize(trials: T.Sequence[TrialResult], algorithm: str, dataset: str, seed: int,
              dropped_rows: int = 0, sizes_scaled: bool = False) -> ExperimentReport:
    if not trials:
        raise ValueError("A report needs at least one trial.")

    trials = sorted(trials, key=lambda t: t.trial)
    accuracies = np.array([t.test_accuracy for t in trials])
    std_defined = accuracies.size > 1

    return ExperimentReport(
        algorithm=algorithm,
        dataset=dataset,
        seed=seed,
        trials=trials,
        mean_accuracy=float(accuracies.mean()),
        std_accuracy=float(accuracies.std(ddof=1)) if std_defined else 0.0,
        std_defined=std_defined,
        mean_time=float(np.mean([t.train_time for t in trials])),
        mean_evaluations=float(np.mean([t.evaluations for t in trials])),
        dropped_rows=dropped_rows,
        sizes_scaled=sizes_scaled,
    )


def _round(value: T.Any) -> T.Any:
    if isinstance(value, float):
        return float(f"{value:.6g}")

    return value


def _rounded(record: T.Dict[str, T.Any]) -> T.Dict[str, T.Any]:
    return {key: _round(value) for key, value in record.items()}


def render_report(report: ExperimentReport, fmt: T.Union[ReportFormat, str] = ReportFormat.JSONL) -> str:
    """
    One row per trial followed by the aggregate block, floats at 6 significant digits.
    jsonl: one object per line, tagged with "record"; csv: a header of TrialResult field names,
    then `# key=value` lines carrying the aggregates.
    """
    if not report.trials:
        raise ValueError("A report needs at least one trial.")

    fmt = ReportFormat(fmt)
    aggregate = {name: getattr(report, name) for name in AGGREGATE_FIELDS}

    if fmt == ReportFormat.JSONL:
        lines = [json.dumps({"record": "trial", **_rounded(t.model_dump())}) for t in report.trials]
        lines.append(json.dumps({"record": "aggregate", **_rounded(aggregate)}))
        return "\n".join(lines) + "\n"

    frame = pd.DataFrame([t.model_dump() for t in report.trials], columns=list(TrialResult.model_fields))
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, float_format="%.6g", lineterminator="\n")
    for key, value in _rounded(aggregate).items():
        buffer.write(f"# {key}={json.dumps(value)}\n")

    return buffer.getvalue()


def emit_report(report: ExperimentReport, fmt: T.Union[ReportFormat, str], path: str) -> str:
    content = render_report(report, fmt)
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(content)

    return path


def parse_report(path: str) -> ExperimentReport:
    """Reads a report written by emit_report in either format."""
    with open(path, encoding="utf-8") as f:
        content = f.read()

    if content.lstrip().startswith("{"):
        records = [json.loads(line) for line in content.splitlines() if line.strip()]
        trials = [TrialResult(**{k: v for k, v in r.items() if k != "record"}) for r in records
                  if r.get("record") == "trial"]
        aggregates = [r for r in records if r.get("record") == "aggregate"]
        if not aggregates:
            raise ValueError(f"Report {path} has no aggregate record.")

        aggregate = {k: v for k, v in aggregates[-1].items() if k != "record"}
        return ExperimentReport(trials=trials, **aggregate)

    aggregate = {}
    for line in content.splitlines():
        if line.startswith("# ") and "=" in line:
            key, value = line[2:].split("=", 1)
            aggregate[key] = json.loads(value)

    frame = pd.read_csv(io.StringIO(content), comment="#")
    trials = [TrialResult(**row) for row in frame.to_dict(orient="records")]
    return ExperimentReport(trials=trials, **aggregate)


def compare(reports: T.Sequence[ExperimentReport], names: T.Optional[T.Sequence[str]] = None,
            alpha_per_test: float = 0.025) -> ComparisonReport:
    if len(reports) < 2:
        raise ValueError("Comparison needs at least two reports.")

    groups = [r.accuracies for r in reports]
    anova = anova_f(groups)
    return ComparisonReport(
        names=list(names) if names is not None else [f"{r.algorithm}@{r.dataset}" for r in reports],
        mean_accuracy=[r.mean_accuracy for r in reports],
        std_accuracy=[r.std_accuracy for r in reports],
        mean_time=[r.mean_time for r in reports],
        anova=anova,
        pairwise=bonferroni_pairwise(groups, alpha_per_test, anova),
    )


def format_comparison(comparison: ComparisonReport) -> str:
    width = max(len(n) for n in comparison.names)
    lines = [f"{'report':<{width}}  {'accuracy (%)':>18}  {'time (s)':>10}"]
    for name, mean, std, time in zip(comparison.names, comparison.mean_accuracy, comparison.std_accuracy,
                                     comparison.mean_time):
        lines.append(f"{name:<{width}}  {f'{mean:.2f} ± {std:.2f}':>18}  {time:>10.3f}")

    anova = comparison.anova
    lines.append("")
    lines.append(f"ANOVA: F({anova.df_between}, {anova.df_within}) = {anova.f:.6g}, p = {anova.p:.6g}"
                 + (" (zero within-group variance)" if anova.infinite else ""))

    lines.append(f"Pairwise t tests, significant at p < {comparison.pairwise.alpha_per_test}:")
    for i, name in enumerate(comparison.names):
        marks = ["-" if s is None else ("*" if s else ".") for s in comparison.pairwise.significant[i]]
        lines.append(f"{name:<{width}}  {' '.join(marks)}")

    return "\n".join(lines) + "\n"
