"""Closed-form predictors for radius-threshold geometric networks.

All formulas assume an unbounded homogeneous region (no boundary
correction); that is deliberate, empirical-vs-predicted gaps are surfaced
by `compare`, not hidden here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .metrics import MetricsReport


@dataclass(frozen=True)
class Prediction:
    """Predicted network quantities for given (n, r, area)."""

    n: int
    r: float
    area: float
    p_nei: float
    expected_neighbors: float  # k1 = n * p_nei, also the expected degree centrality
    p_second_nei: float
    expected_degree_centrality: float
    predicted_avg_path: Optional[float]
    expected_betweenness: float
    clamped: bool  # True when pi r^2 > area and probabilities were clamped


@dataclass(frozen=True)
class Comparison:
    """Relative errors of empirical metrics against a Prediction.

    relative error = (empirical - predicted) / predicted; None where the
    empirical side is absent (e.g. no giant component) or the predictor
    is zero.
    """

    mean_degree_err: Optional[float]
    second_hop_err: Optional[float]
    betweenness_err: Optional[float]
    avg_path_err: Optional[float]


def p_nei(r: float, area: float) -> tuple[float, bool]:
    """Probability that a uniformly placed node lands within radius r: pi r^2 / A.

    Clamped to 1 (flagged) when the disk exceeds the region area.
    """
    if area <= 0:
        raise ValueError(f"area must be positive, got {area}")
    if r < 0:
        raise ValueError(f"radius must be nonnegative, got {r}")
    p = math.pi * r * r / area
    if p > 1.0:
        return 1.0, True
    return p, False


def p_second_nei(n: int, r: float, area: float) -> tuple[float, bool]:
    """Probability of being a second neighbor: 1 - (1 - p)^(n*p)."""
    p, clamped = p_nei(r, area)
    k1 = n * p
    return 1.0 - (1.0 - p) ** k1, clamped


def expected_betweenness(n: int, r: float, area: float) -> float:
    """Coverage-fraction betweenness estimate: (pi r^2 / A) * n(n-1)/2."""
    p, _ = p_nei(r, area)
    return p * n * (n - 1) / 2.0


def predicted_avg_path(area: float, r: float) -> float:
    """Geometric path-length estimate sqrt(A) / r."""
    if r <= 0:
        raise ValueError(f"radius must be positive, got {r}")
    if area <= 0:
        raise ValueError(f"area must be positive, got {area}")
    return math.sqrt(area) / r


def predict(n: int, r: float, area: float) -> Prediction:
    """Bundle all predictors for one parameter point."""
    p1, clamped = p_nei(r, area)
    p2, _ = p_second_nei(n, r, area)
    k1 = n * p1
    return Prediction(
        n=n,
        r=r,
        area=area,
        p_nei=p1,
        expected_neighbors=k1,
        p_second_nei=p2,
        expected_degree_centrality=k1,
        predicted_avg_path=predicted_avg_path(area, r) if r > 0 else None,
        expected_betweenness=expected_betweenness(n, r, area),
        clamped=clamped,
    )


def _rel_err(empirical: Optional[float], predicted: Optional[float]) -> Optional[float]:
    if empirical is None or predicted is None or predicted == 0:
        return None
    return (empirical - predicted) / predicted


def compare(prediction: Prediction, report: MetricsReport) -> Comparison:
    """Relative errors of a metrics report against predictions.

    The second-hop comparison is per-source: the empirical mean ring size
    over sources against n * p_second_nei. Absent empirical values (no
    sources, fragmented graph) yield None rather than a verdict.
    """
    if prediction.n != report.n:
        raise ValueError(f"node-count mismatch: prediction n={prediction.n}, report n={report.n}")
    n_sources = len(report.second_hop_per_source)
    empirical_hop = (report.second_hop_total / n_sources) if n_sources else None
    return Comparison(
        mean_degree_err=_rel_err(report.mean_degree, prediction.expected_degree_centrality),
        second_hop_err=_rel_err(empirical_hop, prediction.n * prediction.p_second_nei),
        betweenness_err=_rel_err(report.betweenness_mean, prediction.expected_betweenness),
        avg_path_err=_rel_err(report.avg_shortest_path, prediction.predicted_avg_path),
    )
