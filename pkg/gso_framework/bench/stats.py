import itertools
import math
import typing as T

import numpy as np
from pydantic import BaseModel
from scipy import stats


class AnovaResult(BaseModel):
    f: float
    df_between: int
    df_within: int
    p: float
    ss_between: float
    ss_within: float
    # MSW is zero: every group is constant
    infinite: bool = False

    @property
    def ms_within(self) -> float:
        return self.ss_within / self.df_within


class PairwiseResult(BaseModel):
    """Symmetric matrices over the groups; diagonal entries are None."""
    alpha_per_test: float
    t: T.List[T.List[T.Optional[float]]]
    p: T.List[T.List[T.Optional[float]]]
    significant: T.List[T.List[T.Optional[bool]]]
    # pairs tested against a zero pooled variance
    degenerate: T.List[T.Tuple[int, int]] = []


def _as_groups(groups: T.Sequence[T.Sequence[float]]) -> T.List[np.ndarray]:
    arrays = [np.asarray(g, dtype=float) for g in groups]
    if len(arrays) < 2:
        raise ValueError(f"At least 2 groups are required, got {len(arrays)}.")

    small = [i for i, g in enumerate(arrays) if g.size < 2]
    if small:
        raise ValueError(f"Every group needs at least 2 samples; groups {small} have fewer.")

    return arrays


def anova_f(groups: T.Sequence[T.Sequence[float]]) -> AnovaResult:
    """One-way ANOVA. The p-value is the upper tail of the F distribution (regularized incomplete beta)."""
    arrays = _as_groups(groups)
    n_total = sum(g.size for g in arrays)
    grand_mean = np.concatenate(arrays).mean()

    ss_between = float(sum(g.size * (g.mean() - grand_mean) ** 2 for g in arrays))
    ss_within = float(sum(((g - g.mean()) ** 2).sum() for g in arrays))
    df_between = len(arrays) - 1
    df_within = n_total - len(arrays)

    ms_between = ss_between / df_between
    ms_within = ss_within / df_within

    if ms_within == 0.0:
        if ss_between > 0.0:
            return AnovaResult(f=math.inf, df_between=df_between, df_within=df_within, p=0.0,
                               ss_between=ss_between, ss_within=ss_within, infinite=True)

        return AnovaResult(f=math.nan, df_between=df_between, df_within=df_within, p=1.0,
                           ss_between=ss_between, ss_within=ss_within, infinite=True)

    f = ms_between / ms_within
    p = float(stats.f.sf(f, df_between, df_within))
    return AnovaResult(f=f, df_between=df_between, df_within=df_within, p=p,
                       ss_between=ss_between, ss_within=ss_within)


def bonferroni_pairwise(groups: T.Sequence[T.Sequence[float]], alpha_per_test: float = 0.025,
                        anova: T.Optional[AnovaResult] = None) -> PairwiseResult:
    """
    Two-sided t test for every pair of groups, with the pooled within-group mean square as the variance
    estimate and the ANOVA within-group degrees of freedom.
    """
    if not 0.0 < alpha_per_test < 1.0:
        raise ValueError(f"alpha_per_test must be in (0, 1), got {alpha_per_test}.")

    arrays = _as_groups(groups)
    anova = anova if anova is not None else anova_f(arrays)
    ms_within = anova.ms_within

    size = len(arrays)
    t_matrix: T.List[T.List[T.Optional[float]]] = [[None] * size for _ in range(size)]
    p_matrix: T.List[T.List[T.Optional[float]]] = [[None] * size for _ in range(size)]
    significant: T.List[T.List[T.Optional[bool]]] = [[None] * size for _ in range(size)]
    degenerate = []

    for i, j in itertools.combinations(range(size), 2):
        diff = arrays[i].mean() - arrays[j].mean()
        se = math.sqrt(ms_within * (1.0 / arrays[i].size + 1.0 / arrays[j].size))

        if se == 0.0:
            degenerate.append((i, j))
            t_value = math.copysign(math.inf, diff) if diff != 0.0 else 0.0
            p_value = 0.0 if diff != 0.0 else 1.0
        else:
            t_value = diff / se
            p_value = float(2.0 * stats.t.sf(abs(t_value), anova.df_within))

        t_matrix[i][j], t_matrix[j][i] = t_value, -t_value
        p_matrix[i][j] = p_matrix[j][i] = p_value
        significant[i][j] = significant[j][i] = p_value < alpha_per_test

    return PairwiseResult(alpha_per_test=alpha_per_test, t=t_matrix, p=p_matrix, significant=significant,
                          degenerate=degenerate)
