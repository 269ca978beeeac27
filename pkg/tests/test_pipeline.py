import pytest

from comporank.catalog import Component, load_catalog
from comporank.errors import InconsistentMatrix, UnknownCriterion
from comporank.jsonfmt import dumps_canonical
from comporank.pipeline import (
    NeedsSpec,
    rank,
    report_to_dict,
    run_pipeline,
    sensitivity_sweep,
    sweep_to_dict,
)
from comporank.quality_model import load_criteria
from comporank.scoring import ScoreBreakdown, ScoringParams

ALPHA_STAR = 0.5625  # analytic crossing for the flip fixture (linear solve)


def breakdown(cid, score, penalty=0.0):
    return ScoreBreakdown(cid, {}, 0.0, 0.0, score + penalty, penalty, score, True)


def make_needs(criteria_path, services=(), alpha=0.5, threshold=0.0,
               cost_cap=None, time_cap=None):
    tree, matrices = load_criteria(criteria_path)
    return NeedsSpec(
        required_services=frozenset(services),
        tree=tree,
        matrices=matrices,
        params=ScoringParams(alpha=alpha, cost_cap=cost_cap, time_cap=time_cap,
                             satisfaction_threshold=threshold),
    )


class TestRank:
    def test_descending(self):
        got = rank([breakdown("A", 0.3), breakdown("B", 0.8), breakdown("C", 0.5)])
        assert [b.component_id for b in got] == ["B", "C", "A"]

    def test_tie_breaks_on_penalty_then_id(self):
        got = rank([breakdown("B", 0.5, penalty=0.4), breakdown("A", 0.5, penalty=0.2)])
        assert [b.component_id for b in got] == ["A", "B"]
        got = rank([breakdown("B", 0.5, penalty=0.2), breakdown("A", 0.5, penalty=0.2)])
        assert [b.component_id for b in got] == ["A", "B"]

    def test_empty(self):
        assert rank([]) == []


class TestRunPipeline:
    @pytest.fixture
    def report(self, criteria_pipeline_path, catalog5_path):
        needs = make_needs(criteria_pipeline_path, services=("auth", "log"),
                           alpha=0.5, cost_cap=500.0)
        return run_pipeline(load_catalog(catalog5_path), needs)

    def test_fixture_rankings(self, report):
        assert [b.component_id for b in report.rankings] == ["comp-a", "comp-c"]
        a, c = report.rankings
        assert a.quality_term == pytest.approx(0.95, abs=1e-9)
        assert a.penalty_term == pytest.approx(0.8125, abs=1e-9)
        assert a.score == pytest.approx(0.1375, abs=1e-9)
        assert c.score == pytest.approx(0.09166666666666667, abs=1e-9)
        assert report.winner == "comp-a"
        assert report.advisory is None

    def test_fixture_rejections(self, report):
        stages = {r.component_id: r.stage for r in report.rejected}
        assert stages == {"comp-d": "functional", "comp-e": "functional",
                          "comp-b": "caps"}
        reasons = {r.component_id: r.reason for r in report.rejected}
        assert "log" in reasons["comp-d"]
        assert "900" in reasons["comp-b"] and "500" in reasons["comp-b"]

    def test_partition(self, report, catalog5_path):
        catalog = load_catalog(catalog5_path)
        ranked = {b.component_id for b in report.rankings}
        rejected = {r.component_id for r in report.rejected}
        assert ranked | rejected == {c.id for c in catalog.components}
        assert not ranked & rejected
        assert len(report.rankings) + len(report.rejected) == len(catalog.components)

    def test_considered_counts(self, report):
        assert dict(report.candidates_considered) == {
            "input": 5, "functional": 3, "caps": 2, "satisfaction": 2}

    def test_winner_is_argmax(self, report):
        best = max(report.rankings, key=lambda b: b.score)
        assert report.winner == best.component_id

    def test_threshold_above_everything(self, criteria_pipeline_path, catalog5_path):
        needs = make_needs(criteria_pipeline_path, services=("auth", "log"),
                           cost_cap=500.0, threshold=0.99)
        report = run_pipeline(load_catalog(catalog5_path), needs)
        assert report.winner is None
        assert report.rankings == ()
        satisfaction = [r for r in report.rejected if r.stage == "satisfaction"]
        assert {r.component_id for r in satisfaction} == {"comp-a", "comp-c"}
        assert report.advisory is not None

    def test_single_passing_candidate(self, criteria_pipeline_path, catalog5_path):
        # a singleton is its own cost/time maximum, so its penalty is exactly 1
        # and its score (Q - 1) needs a permissive threshold to be retained
        needs = make_needs(criteria_pipeline_path, services=("auth", "log", "ui"),
                           threshold=-1.0)
        report = run_pipeline(load_catalog(catalog5_path), needs)
        assert report.winner == "comp-a"
        assert len(report.rankings) == 1
        # singleton normalization drives both normalized values to 1
        assert report.rankings[0].c_i == 1.0 and report.rankings[0].t_i == 1.0

    def test_empty_filter_is_report_not_crash(self, criteria_pipeline_path, catalog5_path):
        needs = make_needs(criteria_pipeline_path, services=("gpu",))
        report = run_pipeline(load_catalog(catalog5_path), needs)
        assert report.winner is None
        assert report.rankings == ()
        assert len(report.rejected) == 5
        assert report.advisory is not None

    def test_deterministic_bytes(self, criteria_pipeline_path, catalog5_path):
        catalog = load_catalog(catalog5_path)
        needs = make_needs(criteria_pipeline_path, services=("auth", "log"),
                           cost_cap=500.0)
        first = dumps_canonical(report_to_dict(run_pipeline(catalog, needs)))
        second = dumps_canonical(report_to_dict(run_pipeline(catalog, needs)))
        assert first == second

    def test_inconsistent_criteria_propagates(self, criteria_inconsistent_path,
                                              catalog5_path):
        needs = make_needs(criteria_inconsistent_path)
        with pytest.raises(InconsistentMatrix):
            run_pipeline(load_catalog(catalog5_path), needs)

    def test_catalog_criteria_mismatch(self, criteria_pipeline_path, catalog_flip_path):
        needs = make_needs(criteria_pipeline_path)
        with pytest.raises(UnknownCriterion):
            run_pipeline(load_catalog(catalog_flip_path), needs)

    def test_cost_scaling_keeps_winner(self, criteria_pipeline_path, catalog5_path):
        catalog = load_catalog(catalog5_path)
        needs = make_needs(criteria_pipeline_path, services=("auth", "log"))
        base = run_pipeline(catalog, needs)
        for k in (0.01, 7.3):
            scaled = type(catalog)(
                catalog.library_name,
                tuple(Component(c.id, c.name, c.services, c.ratings,
                                c.raw_cost * k, c.raw_time)
                      for c in catalog.components),
                catalog.scale_max)
            got = run_pipeline(scaled, needs)
            assert got.winner == base.winner
            assert [b.component_id for b in got.rankings] == \
                   [b.component_id for b in base.rankings]


class TestSensitivity:
    def test_single_alpha_matches_pipeline(self, criteria_flip_path, catalog_flip_path):
        catalog = load_catalog(catalog_flip_path)
        needs = make_needs(criteria_flip_path)
        sweep = sensitivity_sweep(catalog, needs, [0.5])
        assert len(sweep.entries) == 1
        direct = run_pipeline(catalog, make_needs(criteria_flip_path, alpha=0.5))
        assert report_to_dict(sweep.entries[0][1]) == report_to_dict(direct)
        assert sweep.stability[0].winner == direct.winner

    def test_flip_fixture_boundary(self, criteria_flip_path, catalog_flip_path):
        catalog = load_catalog(catalog_flip_path)
        needs = make_needs(criteria_flip_path)
        alphas = [i / 20 for i in range(21)]
        sweep = sensitivity_sweep(catalog, needs, alphas)
        assert [s.winner for s in sweep.stability] == ["comp-y", "comp-x"]
        assert sweep.stability[0].alpha_end == pytest.approx(ALPHA_STAR, abs=1e-12)
        assert sweep.stability[1].alpha_start == pytest.approx(ALPHA_STAR, abs=1e-12)
        # winner flips exactly around the analytic crossing
        lo = run_pipeline(catalog, make_needs(criteria_flip_path, alpha=ALPHA_STAR - 1e-6))
        hi = run_pipeline(catalog, make_needs(criteria_flip_path, alpha=ALPHA_STAR + 1e-6))
        assert lo.winner == "comp-y"
        assert hi.winner == "comp-x"

    def test_constant_winner_when_costs_equal(self, criteria_flip_path):
        comps = tuple(
            Component(cid, cid, frozenset({"svc"}), {"a": r, "b": r}, 100.0, 10.0)
            for cid, r in (("c1", 9.0), ("c2", 7.0)))
        from comporank.catalog import Catalog
        catalog = Catalog("even", comps, 10.0)
        sweep = sensitivity_sweep(catalog,
                                  make_needs(criteria_flip_path, threshold=-1.0),
                                  [0.0, 0.25, 0.5, 0.75, 1.0])
        assert len(sweep.stability) == 1
        assert sweep.stability[0].winner == "c1"

    def test_entries_keep_input_order(self, criteria_flip_path, catalog_flip_path):
        catalog = load_catalog(catalog_flip_path)
        sweep = sensitivity_sweep(catalog, make_needs(criteria_flip_path), [1.0, 0.0])
        assert [a for a, _ in sweep.entries] == [1.0, 0.0]
        assert [s.alpha_start for s in sweep.stability] == [0.0, ALPHA_STAR]

    def test_sweep_dict_shape(self, criteria_flip_path, catalog_flip_path):
        catalog = load_catalog(catalog_flip_path)
        sweep = sensitivity_sweep(catalog, make_needs(criteria_flip_path), [0.0, 1.0])
        obj = sweep_to_dict(sweep)
        assert [e["alpha"] for e in obj["entries"]] == [0.0, 1.0]
        assert obj["entries"][0]["winner"] == "comp-y"
        assert obj["entries"][1]["winner"] == "comp-x"
        assert dumps_canonical(obj)  # renders without error
