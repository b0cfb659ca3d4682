from .config import ExperimentConfig, FitnessSplit, ReportFormat, load_config
from .report import (
    ComparisonReport,
    ExperimentReport,
    TrialResult,
    compare,
    emit_report,
    format_comparison,
    parse_report,
    render_report,
    summarize,
)
from .runner import prepare_dataset, run_experiment, run_trial
from .stats import AnovaResult, PairwiseResult, anova_f, bonferroni_pairwise
