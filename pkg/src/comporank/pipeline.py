"""End-to-end selection pipeline and the alpha sensitivity sweep.

One run is one pass of the selection loop: functional filter, cost/time cap
gate, evaluation, satisfaction gate, ranking. Candidates knocked out at any
gate land in the rejected list with their stage, so rankings and rejections
always partition the catalog. The surrounding retry loop (revise needs,
search again) belongs to the CLI or UI, not to this module.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Mapping, Sequence

from .catalog import Catalog, filter_functional, validate_coverage
from .errors import CapExceeded, DomainError
from .jsonfmt import format_float
from .quality_model import (
    CriterionNode,
    DEFAULT_CR_THRESHOLD,
    PairwiseMatrix,
    build_quality_weights,
)
from .scoring import (
    ScoreBreakdown,
    ScoringParams,
    breakdown_to_dict,
    check_caps,
    evaluate_all,
)

RESEARCH_ADVISORY = ("no component satisfied the expressed needs; "
                     "revise the needs or search another library")


@dataclass(frozen=True)
class NeedsSpec:
    required_services: frozenset[str]
    tree: CriterionNode
    matrices: Mapping[str, PairwiseMatrix]
    params: ScoringParams
    cr_threshold: float = DEFAULT_CR_THRESHOLD


@dataclass(frozen=True)
class Rejection:
    component_id: str
    stage: str          # "functional" | "caps" | "satisfaction"
    reason: str


@dataclass(frozen=True)
class RankedReport:
    iterations: int
    candidates_considered: Mapping[str, int]
    rankings: tuple[ScoreBreakdown, ...]
    winner: str | None
    rejected: tuple[Rejection, ...]
    params_echo: Mapping
    advisory: str | None


@dataclass(frozen=True)
class StabilityInterval:
    winner: str | None
    alpha_start: float
    alpha_end: float


@dataclass(frozen=True)
class SweepResult:
    entries: tuple[tuple[float, RankedReport], ...]   # input alpha order
    stability: tuple[StabilityInterval, ...]          # ascending alpha


def rank(breakdowns: Sequence[ScoreBreakdown]) -> list[ScoreBreakdown]:
    """Descending by score; ties go to the lower penalty, then the lower id."""
    return sorted(breakdowns, key=lambda b: (-b.score, b.penalty_term, b.component_id))


def run_pipeline(catalog: Catalog, needs: NeedsSpec) -> RankedReport:
    leaf_weights = build_quality_weights(needs.tree, needs.matrices, needs.cr_threshold)
    validate_coverage(catalog, leaf_weights.keys())
    params = replace(needs.params, scale_max=catalog.scale_max)

    rejected: list[Rejection] = []
    considered = {"input": len(catalog.components)}

    survivors = filter_functional(catalog, needs.required_services)
    passed = {c.id for c in survivors}
    for comp in catalog.components:
        if comp.id not in passed:
            missing = sorted(needs.required_services - comp.services)
            rejected.append(Rejection(
                comp.id, "functional", "missing required services: " + ", ".join(missing)))
    considered["functional"] = len(survivors)

    capped = []
    for comp in survivors:
        try:
            check_caps(comp, params)
        except CapExceeded as exc:
            rejected.append(Rejection(
                comp.id, "caps",
                f"{exc.quantity} {format_float(exc.value)} outside (0, {format_float(exc.cap)}]"))
        else:
            capped.append(comp)
    considered["caps"] = len(capped)

    if capped:
        breakdowns = evaluate_all(capped, leaf_weights, params)
    else:
        breakdowns = []

    satisfied = []
    for b in breakdowns:
        if b.score >= params.satisfaction_threshold:
            satisfied.append(b)
        else:
            rejected.append(Rejection(
                b.component_id, "satisfaction",
                f"score {format_float(b.score)} below threshold "
                f"{format_float(params.satisfaction_threshold)}"))
    considered["satisfaction"] = len(satisfied)

    rankings = tuple(rank(satisfied))
    winner = rankings[0].component_id if rankings else None
    return RankedReport(
        iterations=1,
        candidates_considered=considered,
        rankings=rankings,
        winner=winner,
        rejected=tuple(rejected),
        params_echo=_params_echo(needs, params, leaf_weights),
        advisory=None if winner else RESEARCH_ADVISORY,
    )


def sensitivity_sweep(catalog: Catalog, needs: NeedsSpec,
                      alphas: Sequence[float]) -> SweepResult:
    """One pipeline run per alpha plus winner-stability intervals.

    Interval boundaries between two adjacent grid alphas with different
    winners are refined by solving the two winners' affine score functions
    for their crossing point (scores are affine in alpha because Q_i, c_i
    and t_i do not depend on it).
    """
    if not alphas:
        raise DomainError("alphas must be non-empty")
    for a in alphas:
        if not (0.0 <= a <= 1.0):
            raise DomainError(f"alpha {a} outside [0, 1]")
    entries = tuple(
        (a, run_pipeline(catalog, _with_alpha(needs, a))) for a in alphas
    )
    by_alpha = {a: r for a, r in entries}
    grid = sorted(by_alpha)
    stability = _stability_intervals(grid, by_alpha)
    return SweepResult(entries, tuple(stability))


def _with_alpha(needs: NeedsSpec, alpha: float) -> NeedsSpec:
    return replace(needs, params=replace(needs.params, alpha=alpha))


def _stability_intervals(grid: list[float],
                         by_alpha: dict[float, RankedReport]) -> list[StabilityInterval]:
    if not grid:
        return []
    intervals = []
    start = grid[0]
    current = by_alpha[grid[0]].winner
    for prev, cur in zip(grid, grid[1:]):
        nxt = by_alpha[cur].winner
        if nxt == current:
            continue
        boundary = _crossing_alpha(by_alpha[prev], by_alpha[cur], current, nxt, prev, cur)
        intervals.append(StabilityInterval(current, start, boundary))
        start = boundary
        current = nxt
    intervals.append(StabilityInterval(current, start, grid[-1]))
    return intervals


def _crossing_alpha(prev_report: RankedReport, cur_report: RankedReport,
                    old_winner: str | None, new_winner: str | None,
                    lo: float, hi: float) -> float:
    """Exact alpha where the two winners' scores cross, clamped to [lo, hi].

    Q_i, c_i and t_i are alpha-independent, so each winner's terms can be
    read off whichever adjacent report ranked it. Falls back to the grid
    point where the change was first observed when a side has no winner or
    the scores are parallel in alpha.
    """
    if old_winner is None or new_winner is None:
        return hi
    rows = {b.component_id: b for b in prev_report.rankings}
    rows.update({b.component_id: b for b in cur_report.rankings})
    old, new = rows.get(old_winner), rows.get(new_winner)
    if old is None or new is None:
        return hi
    # S(alpha) = (Q - t) - alpha (c - t)
    denom = (new.c_i - new.t_i) - (old.c_i - old.t_i)
    if denom == 0:
        return hi
    num = (new.quality_term - new.t_i) - (old.quality_term - old.t_i)
    return min(max(num / denom, lo), hi)


def _params_echo(needs: NeedsSpec, params: ScoringParams,
                 leaf_weights: Mapping[str, float]) -> dict:
    return {
        "required_services": sorted(needs.required_services),
        "alpha": params.alpha,
        "satisfaction_threshold": params.satisfaction_threshold,
        "cost_cap": params.cost_cap,
        "time_cap": params.time_cap,
        "scale_max": params.scale_max,
        "cr_threshold": needs.cr_threshold,
        "leaf_weights": dict(leaf_weights),
    }


def report_to_dict(report: RankedReport) -> dict:
    return {
        "winner": report.winner,
        "advisory": report.advisory,
        "iterations": report.iterations,
        "candidates_considered": dict(report.candidates_considered),
        "rankings": [
            {"rank": i + 1, **breakdown_to_dict(b)}
            for i, b in enumerate(report.rankings)
        ],
        "rejected": [
            {"id": r.component_id, "stage": r.stage, "reason": r.reason}
            for r in report.rejected
        ],
        "params": dict(report.params_echo),
    }


def sweep_to_dict(sweep: SweepResult) -> dict:
    return {
        "entries": [
            {"alpha": a, "winner": r.winner, "report": report_to_dict(r)}
            for a, r in sweep.entries
        ],
        "stability": [
            {"winner": s.winner, "alpha_start": s.alpha_start, "alpha_end": s.alpha_end}
            for s in sweep.stability
        ],
    }
