"""comporank: pick the best reusable software component from a catalog.

Criterion weights come from pairwise comparison matrices (principal
eigenvector with consistency checking), candidates are scored by weighted
quality minus a blended cost/time penalty, and a staged pipeline filters,
gates, evaluates and ranks the catalog.
"""

from .catalog import Catalog, Component, filter_functional, load_catalog
from .errors import ComporankError
from .pipeline import (
    NeedsSpec,
    RankedReport,
    rank,
    run_pipeline,
    sensitivity_sweep,
)
from .quality_model import (
    CriterionNode,
    PairwiseMatrix,
    WeightVector,
    build_quality_weights,
    check_consistency,
    default_criteria,
    derive_weights,
    load_criteria,
)
from .scoring import (
    ScoreBreakdown,
    ScoringParams,
    component_score,
    evaluate_all,
    normalize_candidates,
    penalty,
    quality_term,
)

__version__ = "0.1.0"

__all__ = [
    "Catalog", "Component", "ComporankError", "CriterionNode", "NeedsSpec",
    "PairwiseMatrix", "RankedReport", "ScoreBreakdown", "ScoringParams",
    "WeightVector", "build_quality_weights", "check_consistency",
    "component_score", "default_criteria", "derive_weights", "evaluate_all",
    "filter_functional", "load_catalog", "load_criteria",
    "normalize_candidates", "penalty", "quality_term", "rank", "run_pipeline",
    "sensitivity_sweep",
]
