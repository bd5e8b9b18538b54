"""Importance-weighted conditional randomization test.

Draws from the fixed-degree reference set carry weights proportional to
1/(c(Y) sigma(Y)). Everything here reduces those weights in log space:
p-values and critical values use self-normalized weights, the cardinality
estimate uses the raw ones.
"""

from __future__ import annotations

import json
import math
import secrets
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.special import logsumexp
from sklearn.base import BaseEstimator

from .beta_model import MleConvergenceError, fit_mle, link_probability_matrix
from .graph import Graph, degree_sequence
from .sampling import SampledDraw, sample_batch
from .stats import evaluate_statistic, statistic_needs_p_hat

__all__ = [
    "CardinalityEstimate",
    "estimate_cardinality",
    "cardinality_standard_error",
    "estimate_pvalue",
    "pvalue_standard_error",
    "critical_value_from_distribution",
    "critical_value",
    "effective_sample_size",
    "TestReport",
    "run_test",
    "RandomizationTest",
]

DEFAULT_CHUNK = 256


def log_weights(draws: Sequence[SampledDraw]) -> np.ndarray:
    return np.array([d.log_weight for d in draws], dtype=np.float64)


def normalized_weights(lw: np.ndarray) -> np.ndarray:
    lw = np.asarray(lw, dtype=np.float64)
    return np.exp(lw - logsumexp(lw))


@dataclass(frozen=True)
class CardinalityEstimate:
    estimate: float
    log_estimate: float
    log_standard_error: float

    @property
    def standard_error(self) -> float:
        return math.exp(self.log_standard_error)


def _cardinality_from_log_weights(lw: np.ndarray) -> CardinalityEstimate:
    b = lw.shape[0]
    if b < 1:
        raise ValueError("need at least one draw")
    log_est = logsumexp(lw) - math.log(b)
    m = float(lw.max())
    scaled = np.exp(lw - m)
    if b == 1:
        log_se = -math.inf
    else:
        var = float(np.var(scaled, ddof=1))
        log_se = -math.inf if var == 0.0 else m + 0.5 * math.log(var / b)
    est = math.exp(log_est) if log_est < 700 else math.inf
    return CardinalityEstimate(est, float(log_est), log_se)


def estimate_cardinality(draws: Sequence[SampledDraw]) -> CardinalityEstimate:
    """Mean of 1/(c(Y) sigma(Y)) over draws, with its log and the log of the
    Monte Carlo standard error."""
    return _cardinality_from_log_weights(log_weights(draws))


def cardinality_standard_error(draws: Sequence[SampledDraw]) -> float:
    return estimate_cardinality(draws).standard_error


def _indicator(values: np.ndarray, observed: float, comparison: str) -> np.ndarray:
    if comparison == "geq":
        return values >= observed
    if comparison == "gt":
        return values > observed
    raise ValueError(f"comparison must be 'geq' or 'gt', got {comparison!r}")


def _pvalue_from_arrays(values, lw, observed: float, comparison: str) -> float:
    values = np.asarray(values, dtype=np.float64)
    lw = np.asarray(lw, dtype=np.float64)
    hit = _indicator(values, observed, comparison)
    if not hit.any():
        return 0.0
    return float(np.exp(logsumexp(lw[hit]) - logsumexp(lw)))


def estimate_pvalue(
    observed: float,
    draws: Sequence[SampledDraw],
    stat: Callable[[Graph], float] | str,
    comparison: str = "geq",
    p_hat: np.ndarray | None = None,
) -> float:
    """Self-normalized weighted share of draws at or beyond the observed
    value; invariant to rescaling every weight by a common constant."""
    values = _stat_values(draws, stat, p_hat)
    return _pvalue_from_arrays(values, log_weights(draws), observed, comparison)


def _pvalue_se_from_arrays(values, lw, observed: float, comparison: str) -> float:
    """Delta-method standard error of the ratio estimator:
    sqrt(sum w~_b^2 (z_b - p)^2) over normalized weights."""
    values = np.asarray(values, dtype=np.float64)
    w = normalized_weights(lw)
    z = _indicator(values, observed, comparison).astype(np.float64)
    p = float(np.sum(w * z))
    return float(np.sqrt(np.sum((w * (z - p)) ** 2)))


def pvalue_standard_error(
    observed: float,
    draws: Sequence[SampledDraw],
    stat: Callable[[Graph], float] | str,
    comparison: str = "geq",
    p_hat: np.ndarray | None = None,
) -> float:
    values = _stat_values(draws, stat, p_hat)
    return _pvalue_se_from_arrays(values, log_weights(draws), observed, comparison)


def _stat_values(draws, stat, p_hat):
    out = []
    for d in draws:
        if callable(stat):
            out.append(float(stat(d.graph)))
        else:
            out.append(evaluate_statistic(stat, d.graph, p_hat=p_hat).value)
    return np.array(out, dtype=np.float64)


def critical_value_from_distribution(values, masses, alpha):
    """Randomized-test cutoff for a discrete distribution.

    c_alpha is the smallest support point with P(T > c) <= alpha; at that
    point alpha <= P(T >= c) holds automatically. g_alpha is the rejection
    probability on ties, (alpha - P(T > c)) / P(T = c), or 0 when the tie
    mass is 0. Arithmetic stays in whatever numeric type the masses carry,
    so exact rationals pass through untouched.
    """
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie strictly between 0 and 1")
    pairs = sorted(zip(values, masses), key=lambda vm: vm[0])
    if not pairs:
        raise ValueError("need at least one support point")
    support = []
    point_mass = []
    for v, m in pairs:
        if support and v == support[-1]:
            point_mass[-1] = point_mass[-1] + m
        else:
            support.append(v)
            point_mass.append(m)
    k = len(support)
    tail_gt = [None] * k  # mass strictly above support[i]
    acc = 0 * point_mass[0]
    for i in range(k - 1, -1, -1):
        tail_gt[i] = acc
        acc = acc + point_mass[i]
    total = acc
    for i in range(k):
        if tail_gt[i] <= alpha * total:
            c = support[i]
            gt = tail_gt[i]
            eq = point_mass[i]
            geq = gt + eq
            if not (gt <= alpha * total <= geq):
                raise AssertionError("cutoff bracketing failed")
            g = 0 * alpha if eq == 0 else (alpha - gt / total) * (total / eq)
            return c, g
    raise AssertionError("no support point satisfied the tail condition")


def critical_value(
    draws: Sequence[SampledDraw],
    stat: Callable[[Graph], float] | str,
    alpha: float,
    p_hat: np.ndarray | None = None,
):
    """(c_alpha, g_alpha) from the weighted reference distribution."""
    values = _stat_values(draws, stat, p_hat)
    w = normalized_weights(log_weights(draws))
    return critical_value_from_distribution(values.tolist(), w.tolist(), alpha)


def effective_sample_size(lw: np.ndarray) -> float:
    lw = np.asarray(lw, dtype=np.float64)
    return float(np.exp(2.0 * logsumexp(lw) - logsumexp(2.0 * lw)))


def _histogram(values: np.ndarray, lw: np.ndarray) -> tuple[list[float], list[float]]:
    """Weighted equal-width histogram; bin count min(50, distinct values),
    one point-mass bin when the statistic is constant."""
    w = normalized_weights(lw)
    lo = float(values.min())
    hi = float(values.max())
    distinct = np.unique(values).shape[0]
    if distinct == 1:
        edges = np.array([lo - 0.5, lo + 0.5])
    else:
        edges = np.linspace(lo, hi, min(50, distinct) + 1)
    masses, edges = np.histogram(values, bins=edges, weights=w)
    return edges.tolist(), masses.tolist()


@dataclass(frozen=True)
class TestReport:
    statistic: str
    observed: float
    B: int
    seed: int
    alpha: float
    p_value_geq: float
    p_value_gt: float
    log_cardinality: float
    c_alpha: float
    g_alpha: float
    ess: float
    histogram_edges: list[float] = field(compare=False)
    histogram_masses: list[float] = field(compare=False)
    degenerate_draw_count: int = 0

    @property
    def cardinality(self) -> float:
        return math.exp(self.log_cardinality) if self.log_cardinality < 700 else math.inf

    def to_dict(self) -> dict:
        return {
            "statistic": self.statistic,
            "observed": self.observed,
            "B": self.B,
            "seed": self.seed,
            "alpha": self.alpha,
            "p_value_geq": self.p_value_geq,
            "p_value_gt": self.p_value_gt,
            "log_cardinality": self.log_cardinality,
            "c_alpha": self.c_alpha,
            "g_alpha": self.g_alpha,
            "ess": self.ess,
            "histogram": {
                "edges": list(self.histogram_edges),
                "masses": list(self.histogram_masses),
            },
            "degenerate_draw_count": self.degenerate_draw_count,
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, doc: dict) -> "TestReport":
        hist = doc["histogram"]
        return cls(
            statistic=doc["statistic"],
            observed=doc["observed"],
            B=doc["B"],
            seed=doc["seed"],
            alpha=doc["alpha"],
            p_value_geq=doc["p_value_geq"],
            p_value_gt=doc["p_value_gt"],
            log_cardinality=doc["log_cardinality"],
            c_alpha=doc["c_alpha"],
            g_alpha=doc["g_alpha"],
            ess=doc["ess"],
            histogram_edges=list(hist["edges"]),
            histogram_masses=list(hist["masses"]),
            degenerate_draw_count=doc["degenerate_draw_count"],
        )

    @classmethod
    def from_json(cls, text: str) -> "TestReport":
        return cls.from_dict(json.loads(text))


def run_test(
    g_obs: Graph,
    stat: str,
    B: int,
    alpha: float = 0.05,
    seed: int | None = None,
    threads: int = 1,
    chunk: int = DEFAULT_CHUNK,
) -> TestReport:
    """Sample B reference draws conditioned on the observed degree sequence
    and summarize the weighted reference distribution of the statistic.

    Draws stream through in chunks; graphs are discarded once evaluated, so
    memory stays flat in B. Results depend only on (graph, stat, B, seed).
    """
    if B < 1:
        raise ValueError("B must be at least 1")
    if seed is None:
        seed = secrets.randbits(63)
    d = degree_sequence(g_obs)

    p_hat = None
    if statistic_needs_p_hat(stat):
        try:
            mle = fit_mle(g_obs.degrees)
        except MleConvergenceError as err:
            raise MleConvergenceError(
                f"MLE failed ({err}); use a statistic that does not need "
                "fitted link probabilities",
                residual=err.residual,
                iterations=err.iterations,
            ) from err
        p_hat = link_probability_matrix(mle.a)

    obs = evaluate_statistic(stat, g_obs, p_hat=p_hat)

    values = np.empty(B, dtype=np.float64)
    lw = np.empty(B, dtype=np.float64)
    degenerate = 0
    done = 0
    while done < B:
        count = min(chunk, B - done)
        batch = sample_batch(d, count, seed, threads=threads, start_stream=done + 1)
        for k, draw in enumerate(batch):
            sv = evaluate_statistic(stat, draw.graph, p_hat=p_hat)
            values[done + k] = sv.value
            lw[done + k] = draw.log_weight
            degenerate += int(sv.degenerate)
        done += count

    card = _cardinality_from_log_weights(lw)
    c_alpha, g_alpha = critical_value_from_distribution(
        values.tolist(), normalized_weights(lw).tolist(), alpha
    )
    edges, masses = _histogram(values, lw)
    return TestReport(
        statistic=stat,
        observed=obs.value,
        B=B,
        seed=seed,
        alpha=alpha,
        p_value_geq=_pvalue_from_arrays(values, lw, obs.value, "geq"),
        p_value_gt=_pvalue_from_arrays(values, lw, obs.value, "gt"),
        log_cardinality=card.log_estimate,
        c_alpha=float(c_alpha),
        g_alpha=float(g_alpha),
        ess=effective_sample_size(lw),
        histogram_edges=edges,
        histogram_masses=masses,
        degenerate_draw_count=degenerate,
    )


class RandomizationTest(BaseEstimator):
    """Estimator wrapper around run_test.

    Attributes after fit: report_, p_value_ (the >= form), critical_value_.
    """

    def __init__(
        self,
        statistic: str = "triangle_count",
        draws: int = 1000,
        alpha: float = 0.05,
        seed: int | None = None,
        threads: int = 1,
    ):
        self.statistic = statistic
        self.draws = draws
        self.alpha = alpha
        self.seed = seed
        self.threads = threads

    def fit(self, X: Graph, y=None):
        self.report_ = run_test(
            X,
            stat=self.statistic,
            B=self.draws,
            alpha=self.alpha,
            seed=self.seed,
            threads=self.threads,
        )
        self.p_value_ = self.report_.p_value_geq
        self.critical_value_ = (self.report_.c_alpha, self.report_.g_alpha)
        return self
