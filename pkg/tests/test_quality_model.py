import json

import numpy as np
import pytest

from comporank.errors import (
    DimensionMismatch,
    DuplicateId,
    InconsistentMatrix,
    MissingWeights,
    NonReciprocalMatrix,
    OutOfScaleEntry,
    ParseError,
)
from comporank.quality_model import (
    CriterionNode,
    PairwiseMatrix,
    build_quality_weights,
    check_consistency,
    default_criteria,
    derive_weights,
    iter_leaves,
    load_criteria,
    resolve_model,
)

from oracles import geometric_mean_weights, lambda_max_cubic, random_consistent_matrix

# frozen from the pre-build oracle run (characteristic cubic + numpy eig)
ORACLE_MATRIX = ((1.0, 2.0, 1 / 3), (0.5, 1.0, 3.0), (3.0, 1 / 3, 1.0))
ORACLE_LAMBDA = 4.002312808393341
ORACLE_CR = 0.8640627658563281


def pm(entries, node_id="node"):
    return PairwiseMatrix(node_id, tuple(tuple(float(v) for v in r) for r in entries))


class TestDeriveWeights:
    def test_all_ones_3x3(self):
        wv = derive_weights(pm([[1, 1, 1]] * 3))
        assert wv.weights == pytest.approx((1 / 3, 1 / 3, 1 / 3), abs=1e-12)
        assert wv.lambda_max == pytest.approx(3.0, abs=1e-12)
        assert wv.consistency_ratio == 0.0

    def test_2x2_exactly_consistent(self):
        wv = derive_weights(pm([[1, 3], [1 / 3, 1]]))
        assert wv.weights == pytest.approx((0.75, 0.25), abs=1e-12)
        assert wv.lambda_max == pytest.approx(2.0, abs=1e-12)
        assert wv.consistency_ratio == 0.0
        # verify the eigenvector property A w = 2 w
        a = np.array([[1, 3], [1 / 3, 1]])
        assert np.allclose(a @ wv.weights, 2 * np.array(wv.weights), atol=1e-12)

    def test_consistent_3x3_ratio_matrix(self):
        wv = derive_weights(pm([[1, 2, 4], [1 / 2, 1, 2], [1 / 4, 1 / 2, 1]]))
        assert wv.weights == pytest.approx((4 / 7, 2 / 7, 1 / 7), abs=1e-12)
        assert wv.lambda_max == pytest.approx(3.0, abs=1e-9)
        assert wv.consistency_ratio < 1e-12

    def test_inconsistent_oracle_matrix(self):
        wv = derive_weights(pm(ORACLE_MATRIX))
        assert wv.lambda_max == pytest.approx(ORACLE_LAMBDA, abs=1e-9)
        assert wv.consistency_ratio == pytest.approx(ORACLE_CR, abs=1e-9)
        assert wv.weights == pytest.approx(
            tuple(geometric_mean_weights(ORACLE_MATRIX)), abs=1e-6)

    def test_weights_sum_to_one_and_positive(self):
        wv = derive_weights(pm(ORACLE_MATRIX))
        assert sum(wv.weights) == pytest.approx(1.0, abs=1e-12)
        assert all(w > 0 for w in wv.weights)

    def test_lambda_max_at_least_n(self):
        rng = np.random.default_rng(7)
        for n in (3, 4, 5):
            from oracles import random_reciprocal_matrix
            wv = derive_weights(pm(random_reciprocal_matrix(rng, n)))
            assert wv.lambda_max >= n - 1e-6

    def test_consistent_recovery_property(self):
        rng = np.random.default_rng(11)
        for n in (3, 4, 5, 6, 7):
            w, entries = random_consistent_matrix(rng, n)
            wv = derive_weights(pm(entries))
            assert np.max(np.abs(np.array(wv.weights) - w)) < 1e-9
            assert wv.consistency_ratio < 1e-9

    def test_permutation_equivariance(self):
        rng = np.random.default_rng(23)
        from oracles import random_reciprocal_matrix
        entries = random_reciprocal_matrix(rng, 4)
        base = derive_weights(pm(entries)).weights
        perm = [2, 0, 3, 1]
        permuted = [[entries[perm[i]][perm[j]] for j in range(4)] for i in range(4)]
        got = derive_weights(pm(permuted)).weights
        for i, p in enumerate(perm):
            assert got[i] == pytest.approx(base[p], abs=1e-9)

    def test_eigen_oracle_agreement(self):
        lam = derive_weights(pm(ORACLE_MATRIX)).lambda_max
        assert lam == pytest.approx(lambda_max_cubic(ORACLE_MATRIX), abs=1e-6)


class TestMatrixValidation:
    def test_non_reciprocal_names_cell(self):
        with pytest.raises(NonReciprocalMatrix) as exc:
            derive_weights(pm([[1, 2], [0.4, 1]]))
        assert (exc.value.row, exc.value.col) == (1, 0)

    def test_bad_diagonal_names_cell(self):
        with pytest.raises(NonReciprocalMatrix) as exc:
            derive_weights(pm([[1, 2], [0.5, 2]]))
        assert (exc.value.row, exc.value.col) == (1, 1)

    def test_out_of_scale_entry(self):
        with pytest.raises(OutOfScaleEntry) as exc:
            derive_weights(pm([[1, 12], [1 / 12, 1]]))
        assert (exc.value.row, exc.value.col) == (0, 1)
        assert exc.value.value == 12

    def test_zero_and_negative_entries_rejected(self):
        with pytest.raises(OutOfScaleEntry):
            derive_weights(pm([[1, 0.0], [9, 1]]))
        with pytest.raises(OutOfScaleEntry):
            derive_weights(pm([[1, -3], [-1 / 3, 1]]))

    def test_ragged_matrix(self):
        with pytest.raises(DimensionMismatch):
            derive_weights(PairwiseMatrix("n", ((1.0, 2.0), (0.5,))))

    def test_too_small(self):
        with pytest.raises(DimensionMismatch):
            derive_weights(pm([[1]]))

    def test_too_large_for_ri_table(self):
        n = 11
        with pytest.raises(DimensionMismatch):
            derive_weights(pm([[1.0] * n for _ in range(n)]))

    def test_ri_table_env_override(self, monkeypatch):
        monkeypatch.setenv("COMPORANK_RI_TABLE", "0,0,1.0")
        wv = derive_weights(pm(ORACLE_MATRIX))
        assert wv.consistency_ratio == pytest.approx(wv.consistency_index, abs=1e-15)
        monkeypatch.setenv("COMPORANK_RI_TABLE", "0,0")
        with pytest.raises(DimensionMismatch):
            derive_weights(pm(ORACLE_MATRIX))


class TestCheckConsistency:
    def test_zero_cr_accepts(self):
        wv = derive_weights(pm([[1, 1], [1, 1]]))
        assert check_consistency(wv, 0.10).accepted

    def test_high_cr_rejects(self):
        wv = derive_weights(pm(ORACLE_MATRIX))
        verdict = check_consistency(wv, 0.10)
        assert not verdict.accepted
        assert verdict.consistency_ratio == pytest.approx(ORACLE_CR, abs=1e-9)

    def test_boundary_inclusive(self):
        wv = derive_weights(pm([[1, 1], [1, 1]]))
        fake = type(wv)(wv.weights, wv.lambda_max, 0.01, 0.10)
        assert check_consistency(fake, 0.10).accepted


class TestBuildQualityWeights:
    def test_product_rule(self):
        tree = CriterionNode("root", "root", (
            CriterionNode("c1", "c1", (
                CriterionNode("s1", "s1", (), 0.5),
                CriterionNode("s2", "s2", (), 0.5),
            ), 0.75),
            CriterionNode("c2", "c2", (), 0.25),
        ))
        weights = build_quality_weights(tree, {})
        assert weights == pytest.approx({"s1": 0.375, "s2": 0.375, "c2": 0.25})

    def test_flat_five_all_ones(self):
        tree = CriterionNode("root", "root", tuple(
            CriterionNode(f"l{i}", f"l{i}") for i in range(5)))
        weights = build_quality_weights(tree, {"root": pm([[1] * 5] * 5, "root")})
        assert all(w == pytest.approx(0.2, abs=1e-12) for w in weights.values())

    def test_default_shaped_fixture_tree(self, fixtures_dir):
        tree, matrices = load_criteria(fixtures_dir / "criteria_default_fixture.json")
        weights = build_quality_weights(tree, matrices)
        # hand-multiplied from the ratio vectors the fixture matrices encode
        expected = {
            "suitability": 0.15, "accuracy": 0.09, "interoperability": 0.06,
            "maturity": 0.10, "fault_tolerance": 0.10, "recoverability": 0.05,
            "understandability": 0.2 / 3, "learnability": 0.2 / 3, "operability": 0.2 / 3,
            "confidentiality": 0.09, "integrity": 0.06,
            "analyzability": 0.05, "changeability": 0.025, "testability": 0.025,
        }
        assert set(weights) == set(expected)
        for leaf, value in expected.items():
            assert weights[leaf] == pytest.approx(value, abs=1e-9), leaf

    def test_leaf_weights_sum_to_one(self, fixtures_dir):
        tree, matrices = load_criteria(fixtures_dir / "criteria_default_fixture.json")
        weights = build_quality_weights(tree, matrices)
        assert sum(weights.values()) == pytest.approx(1.0, abs=1e-9)

    def test_inconsistent_matrix_rejected(self, criteria_inconsistent_path):
        tree, matrices = load_criteria(criteria_inconsistent_path)
        with pytest.raises(InconsistentMatrix) as exc:
            build_quality_weights(tree, matrices)
        assert exc.value.node_id == "quality"
        assert exc.value.consistency_ratio == pytest.approx(ORACLE_CR, abs=1e-9)

    def test_missing_weights(self):
        tree = CriterionNode("root", "root", (
            CriterionNode("a", "a"), CriterionNode("b", "b")))
        with pytest.raises(MissingWeights) as exc:
            build_quality_weights(tree, {})
        assert exc.value.node_id == "root"

    def test_direct_weights_must_sum_to_one(self):
        tree = CriterionNode("root", "root", (
            CriterionNode("a", "a", (), 0.5), CriterionNode("b", "b", (), 0.4)))
        with pytest.raises(MissingWeights):
            build_quality_weights(tree, {})

    def test_duplicate_ids_rejected(self):
        tree = CriterionNode("root", "root", (
            CriterionNode("a", "a", (), 0.5), CriterionNode("a", "a2", (), 0.5)))
        with pytest.raises(DuplicateId):
            build_quality_weights(tree, {})

    def test_matrix_size_must_match_children(self):
        tree = CriterionNode("root", "root", (
            CriterionNode("a", "a"), CriterionNode("b", "b"), CriterionNode("c", "c")))
        with pytest.raises(DimensionMismatch):
            build_quality_weights(tree, {"root": pm([[1, 1], [1, 1]], "root")})

    def test_sibling_reorder_invariance(self, fixtures_dir):
        tree, matrices = load_criteria(fixtures_dir / "criteria_pipeline.json")
        base = build_quality_weights(tree, matrices)
        # swap root's children and permute the root matrix the same way
        swapped_tree = CriterionNode(tree.id, tree.name, tree.children[::-1])
        m = matrices["quality"].entries
        swapped = PairwiseMatrix("quality", ((m[1][1], m[1][0]), (m[0][1], m[0][0])))
        got = build_quality_weights(swapped_tree, {**matrices, "quality": swapped})
        for leaf, w in base.items():
            assert got[leaf] == pytest.approx(w, abs=1e-9)


class TestConfigParsing:
    def test_pipeline_fixture_loads(self, criteria_pipeline_path):
        tree, matrices = load_criteria(criteria_pipeline_path)
        assert [leaf.id for leaf in iter_leaves(tree)] == ["speed", "memory", "usability"]
        assert set(matrices) == {"quality", "performance"}

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError):
            load_criteria(tmp_path / "nope.json")

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(ParseError):
            load_criteria(path)

    def test_matrix_for_unknown_node(self, tmp_path):
        path = tmp_path / "c.json"
        path.write_text(json.dumps({
            "tree": {"id": "r", "children": [
                {"id": "a", "weight": 0.5}, {"id": "b", "weight": 0.5}]},
            "matrices": {"ghost": [[1, 1], [1, 1]]},
        }))
        tree, matrices = load_criteria(path)
        with pytest.raises(ParseError):
            resolve_model(tree, matrices)

    def test_default_criteria_ships_equal_weights(self):
        tree, matrices = default_criteria()
        weights = build_quality_weights(tree, matrices)
        assert sum(weights.values()) == pytest.approx(1.0, abs=1e-9)
        resolved = resolve_model(tree, matrices)
        assert all(wv.consistency_ratio == 0.0 for wv in resolved.nodes.values())
        # five characteristics at 0.2 each, split evenly below
        assert weights["confidentiality"] == pytest.approx(0.1, abs=1e-12)
        assert weights["suitability"] == pytest.approx(0.2 / 3, abs=1e-12)
