"""Normalization, the cost/time penalty and the composite component score.

For a candidate i with leaf weights w_h and normalized ratings q_h:

    quality_term   Q_i = sum_h w_h * q_h          (0 when not selected)
    penalty_term   m_i = alpha*c_i + (1-alpha)*t_i
    score          S_i = Q_i - m_i                 (0 when not selected)

with q_h = rating/scale_max, c_i = raw_cost/C_max, t_i = raw_time/T_max and
C_max/T_max the maxima over the current candidate set. All terms live in
[0,1], so scores live in [-1,1].
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .catalog import Component
from .errors import (
    CapExceeded,
    DomainError,
    EmptyCandidateSet,
    MissingLeaf,
    RatingOutOfRange,
    UnknownCriterion,
)

WEIGHT_SUM_TOL = 1e-9


@dataclass(frozen=True)
class ScoringParams:
    alpha: float = 0.5                      # cost/time blend; 1 = cost only
    scale_max: float = 10.0                 # rating-scale maximum, not observed max
    cost_cap: float | None = None           # raw cost must fall in (0, cap] when set
    time_cap: float | None = None
    satisfaction_threshold: float = 0.0     # minimum score to retain a candidate

    def __post_init__(self):
        if not (0.0 <= self.alpha <= 1.0):
            raise DomainError(f"alpha {self.alpha} outside [0, 1]")
        if self.scale_max <= 0:
            raise DomainError(f"scale_max {self.scale_max} must be positive")
        for name, cap in (("cost_cap", self.cost_cap), ("time_cap", self.time_cap)):
            if cap is not None and cap <= 0:
                raise DomainError(f"{name} {cap} must be positive")


@dataclass(frozen=True)
class NormalizationContext:
    c_max: float
    t_max: float


@dataclass(frozen=True)
class ScoreBreakdown:
    component_id: str
    q_normalized: Mapping[str, float]
    c_i: float
    t_i: float
    quality_term: float
    penalty_term: float
    score: float
    selected: bool


def normalize_candidates(
    candidates: Sequence[Component],
) -> tuple[NormalizationContext, list[tuple[float, float]]]:
    """c_i = cost/C_max and t_i = time/T_max over the given set, input order.

    A zero maximum means every candidate is free (or instant); all values map
    to 0 rather than erroring.
    """
    if not candidates:
        raise EmptyCandidateSet()
    c_max = max(c.raw_cost for c in candidates)
    t_max = max(c.raw_time for c in candidates)
    pairs = [
        (c.raw_cost / c_max if c_max > 0 else 0.0,
         c.raw_time / t_max if t_max > 0 else 0.0)
        for c in candidates
    ]
    return NormalizationContext(c_max, t_max), pairs


def penalty(c_i: float, t_i: float, alpha: float) -> float:
    """alpha*c_i + (1-alpha)*t_i; affine in alpha, bounded by [0,1]."""
    for name, v in (("c_i", c_i), ("t_i", t_i), ("alpha", alpha)):
        if not (0.0 <= v <= 1.0):
            raise DomainError(f"{name} {v} outside [0, 1]")
    return alpha * c_i + (1.0 - alpha) * t_i


def quality_term(leaf_weights: Mapping[str, float],
                 q_normalized: Mapping[str, float],
                 selected: bool = True) -> float:
    """Weighted sum of normalized ratings; 0 when the candidate is deselected."""
    if not selected:
        return 0.0
    for leaf_id in leaf_weights:
        if leaf_id not in q_normalized:
            raise MissingLeaf(leaf_id)
    for leaf_id in q_normalized:
        if leaf_id not in leaf_weights:
            raise MissingLeaf(leaf_id)
    return sum(w * q_normalized[leaf_id] for leaf_id, w in leaf_weights.items())


def component_score(quality: float, penalty_value: float, selected: bool = True) -> float:
    return quality - penalty_value if selected else 0.0


def evaluate_all(candidates: Sequence[Component],
                 leaf_weights: Mapping[str, float],
                 params: ScoringParams) -> list[ScoreBreakdown]:
    """Score every candidate against a shared normalization context.

    Guards mirror the load-time invariants so the function is safe to call on
    hand-built components: weights must sum to 1 (checked once up front),
    ratings must sit in (0, scale_max], and raw cost/time must sit in
    (0, cap] whenever the corresponding cap is configured.
    """
    weight_total = sum(leaf_weights.values())
    if abs(weight_total - 1.0) > WEIGHT_SUM_TOL:
        raise DomainError(f"leaf weights sum to {weight_total}, expected 1")
    ctx, pairs = normalize_candidates(candidates)
    breakdowns = []
    for comp, (c_i, t_i) in zip(candidates, pairs):
        check_caps(comp, params)
        q_normalized = {}
        for leaf_id in leaf_weights:
            if leaf_id not in comp.ratings:
                raise MissingLeaf(leaf_id, comp.id)
        for leaf_id, rating in comp.ratings.items():
            if leaf_id not in leaf_weights:
                raise UnknownCriterion(comp.id, leaf_id)
            if not (0 < rating <= params.scale_max):
                raise RatingOutOfRange(comp.id, leaf_id, rating, params.scale_max)
        for leaf_id in leaf_weights:
            q_normalized[leaf_id] = comp.ratings[leaf_id] / params.scale_max
        q = quality_term(leaf_weights, q_normalized, selected=True)
        m = penalty(c_i, t_i, params.alpha)
        breakdowns.append(ScoreBreakdown(
            component_id=comp.id,
            q_normalized=q_normalized,
            c_i=c_i,
            t_i=t_i,
            quality_term=q,
            penalty_term=m,
            score=component_score(q, m, selected=True),
            selected=True,
        ))
    return breakdowns


def check_caps(comp: Component, params: ScoringParams) -> None:
    """Raise CapExceeded unless raw cost/time fall inside (0, cap] for set caps."""
    if params.cost_cap is not None and not (0 < comp.raw_cost <= params.cost_cap):
        raise CapExceeded(comp.id, "raw_cost", comp.raw_cost, params.cost_cap)
    if params.time_cap is not None and not (0 < comp.raw_time <= params.time_cap):
        raise CapExceeded(comp.id, "raw_time", comp.raw_time, params.time_cap)


def breakdown_to_dict(b: ScoreBreakdown) -> dict:
    """Plain dict with the documented fixed field order."""
    return {
        "component_id": b.component_id,
        "q_normalized": dict(b.q_normalized),
        "c_i": b.c_i,
        "t_i": b.t_i,
        "quality_term": b.quality_term,
        "penalty_term": b.penalty_term,
        "score": b.score,
        "selected": b.selected,
    }
