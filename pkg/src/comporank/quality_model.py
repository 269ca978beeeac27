"""Criteria hierarchy and AHP weight derivation.

A quality model is a tree of criteria. Leaf criteria are what components get
rated on; every internal node carries local weights for its children, either
derived from a pairwise comparison matrix (principal eigenvector via power
iteration) or supplied directly in the config. A leaf's global weight is the
product of local weights along its root path, so the leaf weights always sum
to one.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from importlib import resources
from typing import Iterator, Mapping

import numpy as np

from .errors import (
    DimensionMismatch,
    DomainError,
    DuplicateId,
    InconsistentMatrix,
    MissingWeights,
    NonReciprocalMatrix,
    OutOfScaleEntry,
    ParseError,
)

SCALE_MIN = 1.0 / 9.0
SCALE_MAX = 9.0

# Saaty's random index values for n = 1..10; matrices larger than the table
# are rejected. COMPORANK_RI_TABLE overrides (comma-separated, starting at n=1).
DEFAULT_RI = {1: 0.0, 2: 0.0, 3: 0.58, 4: 0.90, 5: 1.12,
              6: 1.24, 7: 1.32, 8: 1.41, 9: 1.45, 10: 1.49}

RECIPROCITY_TOL = 1e-9
POWER_TOL = 1e-12
POWER_MAX_ITER = 1000
DEFAULT_CR_THRESHOLD = 0.10


def random_index(n: int) -> float:
    """RI for an n x n matrix, honoring the COMPORANK_RI_TABLE override."""
    override = os.environ.get("COMPORANK_RI_TABLE")
    if override:
        try:
            values = [float(v) for v in override.split(",")]
        except ValueError as exc:
            raise ParseError("COMPORANK_RI_TABLE", f"not a comma-separated float list: {exc}")
        table = {i + 1: v for i, v in enumerate(values)}
    else:
        table = DEFAULT_RI
    if n not in table:
        raise DimensionMismatch(None, f"no random index for n={n} (matrix too large)")
    return table[n]


@dataclass(frozen=True)
class CriterionNode:
    id: str
    name: str
    children: tuple["CriterionNode", ...] = ()
    local_weight: float | None = None

    @property
    def is_leaf(self) -> bool:
        return not self.children


@dataclass(frozen=True)
class PairwiseMatrix:
    node_id: str
    entries: tuple[tuple[float, ...], ...]

    @property
    def n(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class WeightVector:
    weights: tuple[float, ...]
    lambda_max: float
    consistency_index: float
    consistency_ratio: float


@dataclass(frozen=True)
class ConsistencyVerdict:
    accepted: bool
    consistency_ratio: float
    threshold: float


@dataclass(frozen=True)
class ModelWeights:
    """Resolved quality model: leaf global weights plus per-node diagnostics."""

    leaf_weights: Mapping[str, float]          # tree order
    nodes: Mapping[str, WeightVector]          # only nodes resolved from a matrix


def validate_matrix(matrix: PairwiseMatrix, expected_n: int | None = None) -> None:
    """Check squareness, reciprocity, diagonal and judgment-scale bounds."""
    n = matrix.n
    if n < 2:
        raise DimensionMismatch(matrix.node_id, f"need at least 2 items, got {n}")
    for i, row in enumerate(matrix.entries):
        if len(row) != n:
            raise DimensionMismatch(
                matrix.node_id, f"row {i} has {len(row)} entries, expected {n}")
    if expected_n is not None and n != expected_n:
        raise DimensionMismatch(
            matrix.node_id, f"matrix is {n}x{n} but the node has {expected_n} children")
    for i in range(n):
        if matrix.entries[i][i] != 1:
            raise NonReciprocalMatrix(
                matrix.node_id, i, i, f"diagonal entry is {matrix.entries[i][i]}, must be 1")
        for j in range(n):
            a = matrix.entries[i][j]
            if not math.isfinite(a) or a <= 0:
                raise OutOfScaleEntry(matrix.node_id, i, j, a)
            if a < SCALE_MIN * (1 - RECIPROCITY_TOL) or a > SCALE_MAX * (1 + RECIPROCITY_TOL):
                raise OutOfScaleEntry(matrix.node_id, i, j, a)
            if j > i and abs(matrix.entries[j][i] - 1.0 / a) > RECIPROCITY_TOL:
                raise NonReciprocalMatrix(
                    matrix.node_id, j, i,
                    f"entry {matrix.entries[j][i]} is not the reciprocal of ({i},{j})={a}")


def derive_weights(matrix: PairwiseMatrix) -> WeightVector:
    """Principal-eigenvector weights by power iteration, with lambda_max/CI/CR.

    Iterates w <- Aw / |Aw|_1 from the uniform vector until successive
    vectors differ by less than 1e-12, then reads lambda_max off sum(Aw).
    A positive reciprocal matrix always has lambda_max >= n; CI is clamped
    at zero to absorb float noise on consistent matrices.
    """
    validate_matrix(matrix)
    a = np.asarray(matrix.entries, dtype=float)
    n = matrix.n
    w = np.full(n, 1.0 / n)
    for _ in range(POWER_MAX_ITER):
        nxt = a @ w
        nxt /= nxt.sum()
        if np.max(np.abs(nxt - w)) < POWER_TOL:
            w = nxt
            break
        w = nxt
    lambda_max = float((a @ w).sum())
    ci = max(0.0, (lambda_max - n) / (n - 1))
    ri = random_index(n)
    cr = ci / ri if ri > 0 else 0.0
    return WeightVector(tuple(float(x) for x in w), lambda_max, ci, cr)


def check_consistency(wv: WeightVector, threshold: float = DEFAULT_CR_THRESHOLD) -> ConsistencyVerdict:
    """Accept iff CR <= threshold (boundary inclusive)."""
    if threshold <= 0:
        raise DomainError(f"CR threshold must be positive, got {threshold}")
    return ConsistencyVerdict(wv.consistency_ratio <= threshold, wv.consistency_ratio, threshold)


def validate_tree(tree: CriterionNode) -> None:
    seen: set[str] = set()
    for node in iter_nodes(tree):
        if node.id in seen:
            raise DuplicateId(node.id)
        seen.add(node.id)
        if node.local_weight is not None and not (0.0 <= node.local_weight <= 1.0):
            raise ParseError(f"node '{node.id}'", f"weight {node.local_weight} outside [0, 1]")


def iter_nodes(tree: CriterionNode) -> Iterator[CriterionNode]:
    """Pre-order walk."""
    yield tree
    for child in tree.children:
        yield from iter_nodes(child)


def iter_leaves(tree: CriterionNode) -> Iterator[CriterionNode]:
    for node in iter_nodes(tree):
        if node.is_leaf:
            yield node


def resolve_model(tree: CriterionNode, matrices: Mapping[str, PairwiseMatrix]) -> ModelWeights:
    """Resolve every node's local weights and multiply out leaf globals.

    Does not enforce any CR threshold; callers that want a hard gate use
    build_quality_weights. A node's matrix takes precedence over directly
    supplied child weights.
    """
    validate_tree(tree)
    known_ids = {n.id for n in iter_nodes(tree)}
    for node_id in matrices:
        if node_id not in known_ids:
            raise ParseError(f"matrix '{node_id}'", "no tree node with this id")
    leaf_weights: dict[str, float] = {}
    node_vectors: dict[str, WeightVector] = {}

    def descend(node: CriterionNode, acc: float) -> None:
        if node.is_leaf:
            leaf_weights[node.id] = acc
            return
        matrix = matrices.get(node.id)
        if matrix is not None:
            validate_matrix(matrix, expected_n=len(node.children))
            wv = derive_weights(matrix)
            node_vectors[node.id] = wv
            locals_ = wv.weights
        else:
            supplied = [c.local_weight for c in node.children]
            if any(w is None for w in supplied):
                raise MissingWeights(node.id)
            total = sum(supplied)
            if abs(total - 1.0) > 1e-9:
                raise MissingWeights(
                    node.id, f"direct child weights sum to {total}, expected 1")
            locals_ = supplied
        for child, lw in zip(node.children, locals_):
            descend(child, acc * lw)

    descend(tree, 1.0)
    return ModelWeights(leaf_weights, node_vectors)


def build_quality_weights(
    tree: CriterionNode,
    matrices: Mapping[str, PairwiseMatrix],
    cr_threshold: float = DEFAULT_CR_THRESHOLD,
) -> dict[str, float]:
    """Leaf global weights, rejecting any matrix whose CR exceeds the threshold."""
    resolved = resolve_model(tree, matrices)
    for node_id, wv in resolved.nodes.items():
        if not check_consistency(wv, cr_threshold).accepted:
            raise InconsistentMatrix(node_id, wv.consistency_ratio, cr_threshold)
    return dict(resolved.leaf_weights)


# --- config file handling ------------------------------------------------------

def parse_tree(obj, location="tree") -> CriterionNode:
    if not isinstance(obj, dict):
        raise ParseError(location, f"expected an object, got {type(obj).__name__}")
    node_id = obj.get("id")
    if not isinstance(node_id, str) or not node_id:
        raise ParseError(location, "missing or empty 'id'")
    name = obj.get("name", node_id)
    children_raw = obj.get("children", [])
    if not isinstance(children_raw, list):
        raise ParseError(f"{location}.children", "expected a list")
    weight = obj.get("weight")
    if weight is not None and not isinstance(weight, (int, float)):
        raise ParseError(f"node '{node_id}'", "'weight' must be a number")
    children = tuple(
        parse_tree(c, f"{location}.children[{i}]") for i, c in enumerate(children_raw)
    )
    return CriterionNode(node_id, name, children,
                         float(weight) if weight is not None else None)


def parse_criteria_config(obj) -> tuple[CriterionNode, dict[str, PairwiseMatrix]]:
    """Parse the documented criteria config: {"tree": ..., "matrices": {...}}."""
    if not isinstance(obj, dict):
        raise ParseError("criteria config", "top level must be an object")
    if "tree" not in obj:
        raise ParseError("criteria config", "missing 'tree'")
    tree = parse_tree(obj["tree"])
    validate_tree(tree)
    matrices_raw = obj.get("matrices", {})
    if not isinstance(matrices_raw, dict):
        raise ParseError("criteria config", "'matrices' must be an object")
    matrices = {}
    for node_id, rows in matrices_raw.items():
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise ParseError(f"matrices['{node_id}']", "expected a list of rows")
        try:
            entries = tuple(tuple(float(v) for v in row) for row in rows)
        except (TypeError, ValueError):
            raise ParseError(f"matrices['{node_id}']", "entries must be numbers")
        matrices[node_id] = PairwiseMatrix(node_id, entries)
    return tree, matrices


def load_criteria(path) -> tuple[CriterionNode, dict[str, PairwiseMatrix]]:
    try:
        with open(path, "rb") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ParseError(str(path), f"cannot read file: {exc}")
    except json.JSONDecodeError as exc:
        raise ParseError(str(path), f"invalid JSON: {exc}")
    return parse_criteria_config(obj)


def default_criteria() -> tuple[CriterionNode, dict[str, PairwiseMatrix]]:
    """The packaged starter tree (five characteristics, equal-weight matrices)."""
    data = resources.files("comporank").joinpath("data/default_criteria.json").read_text()
    return parse_criteria_config(json.loads(data))
