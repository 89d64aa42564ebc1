from __future__ import annotations

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from valuerank import (
    StakeholderProfile,
    UndefinedMetricError,
    ValidationError,
    WeightVector,
    dcg,
    evaluate,
    ndcg,
    rank,
    relevance_from_ranking,
    report_to_csv,
    report_to_json,
    report_to_markdown,
)
from valuerank.evaluation import EvaluationReport, _enumerate_variants  # noqa: F401
from helpers import make_catalog, make_record

sklearn_metrics = pytest.importorskip("sklearn.metrics")


# --- relevance encoding -----------------------------------------------------


def test_relevance_linear_encoding():
    assert relevance_from_ranking(["d2", "d1", "d3"]) == {"d2": 2.0, "d1": 1.0, "d3": 0.0}


def test_relevance_singleton_then_metric_undefined():
    relevance = relevance_from_ranking(["d1"])
    assert relevance == {"d1": 0.0}
    with pytest.raises(UndefinedMetricError):
        ndcg(relevance, {"d1": 0.4})


def test_relevance_fifteen_items(fixture_profiles):
    ideal = fixture_profiles[0].ideal_ranking
    relevance = relevance_from_ranking(ideal)
    assert relevance[ideal[0]] == 14.0
    assert relevance[ideal[-1]] == 0.0


def test_relevance_rejects_duplicates():
    with pytest.raises(ValidationError, match="duplicate"):
        relevance_from_ranking(["a", "a"])


def test_relevance_rejects_non_permutation():
    with pytest.raises(ValidationError, match="not a permutation"):
        relevance_from_ranking(["a", "b"], expected_ids={"a", "c"})
    with pytest.raises(ValidationError, match="empty"):
        relevance_from_ranking([])


# --- dcg ----------------------------------------------------------------------


REL = {"a": 3.0, "b": 2.0, "c": 1.0, "d": 0.0}


def test_dcg_ordered():
    scores = {"a": 4.0, "b": 3.0, "c": 2.0, "d": 1.0}
    expected = 3 / math.log2(2) + 2 / math.log2(3) + 1 / math.log2(4)
    assert dcg(REL, scores) == pytest.approx(expected, abs=1e-12)


def test_dcg_reversed():
    scores = {"a": 1.0, "b": 2.0, "c": 3.0, "d": 4.0}
    expected = 0 / math.log2(2) + 1 / math.log2(3) + 2 / math.log2(4) + 3 / math.log2(5)
    assert dcg(REL, scores) == pytest.approx(expected, abs=1e-12)


def test_dcg_all_tied():
    relevance = {"a": 1.0, "b": 0.0}
    scores = {"a": 0.7, "b": 0.7}
    expected = 0.5 * (1 / math.log2(2) + 1 / math.log2(3))
    assert dcg(relevance, scores) == pytest.approx(expected, abs=1e-12)


def test_dcg_id_mismatch():
    with pytest.raises(ValidationError, match="same dataset ids"):
        dcg(REL, {"a": 1.0})


# --- ndcg -----------------------------------------------------------------------


def test_ndcg_perfect_is_exactly_one():
    scores = {"a": 9.0, "b": 5.0, "c": 2.0, "d": 1.0}
    assert ndcg(REL, scores) == 1.0


def test_ndcg_reversed_hand_value():
    scores = {"a": 1.0, "b": 2.0, "c": 3.0, "d": 4.0}
    num = 1 / math.log2(3) + 2 / math.log2(4) + 3 / math.log2(5)
    den = 3 / math.log2(2) + 2 / math.log2(3) + 1 / math.log2(4)
    assert ndcg(REL, scores) == pytest.approx(num / den, abs=1e-12)
    assert ndcg(REL, scores) == pytest.approx(0.6138, abs=5e-5)


def test_ndcg_at_one_with_top_item_right():
    scores = {"a": 9.0, "b": 0.1, "c": 0.3, "d": 0.2}
    assert ndcg(REL, scores, 1) == 1.0


def test_ndcg_rejects_bad_k():
    with pytest.raises(ValidationError, match="positive integer"):
        ndcg(REL, {"a": 1.0, "b": 2.0, "c": 3.0, "d": 4.0}, 0)


relevance_lists = st.lists(st.integers(0, 4), min_size=1, max_size=12).filter(any)


@settings(max_examples=80)
@given(relevance_lists, st.data())
def test_ndcg_bounds_and_truncation_equivalence(rel_values, data):
    n = len(rel_values)
    ids = [f"d{i}" for i in range(n)]
    relevance = {i: float(r) for i, r in zip(ids, rel_values)}
    score_values = data.draw(
        st.lists(st.sampled_from([0.0, 0.5, 1.0, 2.0]), min_size=n, max_size=n)
    )
    scores = dict(zip(ids, score_values))
    full = ndcg(relevance, scores)
    assert 0.0 <= full <= 1.0
    for k in (n, n + 1, n + 7):
        assert ndcg(relevance, scores, k) == pytest.approx(full, abs=1e-12)


@settings(max_examples=60)
@given(relevance_lists, st.data())
def test_ndcg_permutation_equivariance(rel_values, data):
    n = len(rel_values)
    ids = [f"d{i}" for i in range(n)]
    relevance = {i: float(r) for i, r in zip(ids, rel_values)}
    scores = {i: data.draw(st.sampled_from([0.1, 0.4, 0.9])) for i in ids}
    relabel = {i: f"x{i}" for i in ids}
    assert ndcg(relevance, scores) == ndcg(
        {relabel[i]: v for i, v in relevance.items()},
        {relabel[i]: v for i, v in scores.items()},
    )


@settings(max_examples=60)
@given(relevance_lists, st.data())
def test_ndcg_score_scale_invariance(rel_values, data):
    # monotone transforms preserve order and tie structure, hence the score
    n = len(rel_values)
    ids = [f"d{i}" for i in range(n)]
    relevance = {i: float(r) for i, r in zip(ids, rel_values)}
    scores = {i: data.draw(st.sampled_from([0.0, 0.3, 0.7, 1.5])) for i in ids}
    base = ndcg(relevance, scores)
    for transform in (lambda x: 3 * x + 2, math.atan, lambda x: x**3):
        warped = {i: transform(v) for i, v in scores.items()}
        assert ndcg(relevance, warped) == pytest.approx(base, abs=1e-12)


def test_ndcg_matches_sklearn_on_random_ties():
    rng = random.Random(99)
    for _ in range(300):
        n = rng.randint(2, 12)
        relevance = [float(rng.randint(0, 4)) for _ in range(n)]
        if not any(relevance):
            relevance[0] = 1.0
        pool = [rng.uniform(0, 1) for _ in range(max(1, n // 2))]
        scores = [rng.choice(pool) for _ in range(n)]
        k = rng.choice([None, 1, 3, n])
        ids = [f"d{i}" for i in range(n)]
        ours = ndcg(dict(zip(ids, relevance)), dict(zip(ids, scores)), k)
        theirs = sklearn_metrics.ndcg_score([relevance], [scores], k=k)
        assert ours == pytest.approx(theirs, abs=1e-9)


# --- evaluate / report ------------------------------------------------------------


def two_dataset_catalog():
    return make_catalog(
        [
            make_record("ds-a", n_objects=10, usage_counts=(5, 5), utilities={"sh1": 90.0}),
            make_record("ds-b", n_objects=2, usage_counts=(1,), utilities={"sh1": 10.0}),
        ]
    )


def test_evaluate_perfect_profile_scores_one():
    catalog = two_dataset_catalog()
    ideal = rank(catalog, WeightVector(8, 10, 8, 5)).ids()
    profile = StakeholderProfile("p", WeightVector(8, 10, 8, 5), ideal)
    report = evaluate(catalog, [profile], k=5)
    weighted = [c for c in report.cells if c.method == "weighted"]
    assert weighted and all(c.ndcg == 1.0 and c.ndcg_at_k == 1.0 for c in weighted)


def test_evaluate_all_zero_profile_omits_weighted_rows(fixture_catalog):
    profile = StakeholderProfile(
        "zero", WeightVector(0, 0, 0, 0), tuple(sorted(fixture_catalog.ids()))
    )
    report = evaluate(fixture_catalog, [profile])
    methods = {c.method for c in report.cells}
    assert methods == {"simple_average", "univariate"}
    assert any("all-zero weights" in w for w in report.warnings)


def test_evaluate_skips_profiles_without_ideal(fixture_catalog):
    silent = StakeholderProfile("quiet", WeightVector(1, 1, 1, 1), None)
    vocal = StakeholderProfile("vocal", WeightVector(1, 2, 3, 4), tuple(sorted(fixture_catalog.ids())))
    report = evaluate(fixture_catalog, [silent, vocal])
    assert {c.stakeholder for c in report.cells} == {"vocal"}
    assert any("no ideal ranking" in w for w in report.warnings)


def test_evaluate_rejects_non_permutation(fixture_catalog):
    broken = StakeholderProfile("b", WeightVector(1, 1, 1, 1), ("ds-01", "ds-02"))
    with pytest.raises(ValidationError, match="not a permutation"):
        evaluate(fixture_catalog, [broken])


def test_evaluate_row_taxonomy(fixture_catalog, fixture_profiles):
    report = evaluate(fixture_catalog, fixture_profiles)
    by_stakeholder: dict[str, list] = {}
    for cell in report.cells:
        by_stakeholder.setdefault(cell.stakeholder, []).append(cell)

    for sid in ("sh1", "sh3"):
        rows = [(c.method, c.variant) for c in by_stakeholder[sid]]
        assert rows == [
            ("weighted", "total_usage"),
            ("weighted", "average_usage"),
            ("weighted", "utility:sh1"),
            ("simple_average", "total_usage"),
            ("simple_average", "average_usage"),
            ("univariate", "utility:sh1"),
            ("univariate", "utility:avg"),
            ("univariate", "n_objects"),
            ("univariate", "creation_date"),
            ("univariate", "total_usage"),
            ("univariate", "average_usage"),
        ]
    assert all(c.method != "weighted" for c in by_stakeholder["sh2"])


def test_best_flags_mark_group_maxima(fixture_catalog, fixture_profiles):
    report = evaluate(fixture_catalog, fixture_profiles)
    groups: dict[tuple, list] = {}
    for cell in report.cells:
        groups.setdefault((cell.stakeholder, cell.method), []).append(cell)
    for group in groups.values():
        top = max(c.ndcg for c in group)
        top_k = max(c.ndcg_at_k for c in group)
        for cell in group:
            assert cell.best_ndcg == (cell.ndcg == top)
            assert cell.best_ndcg_at_k == (cell.ndcg_at_k == top_k)
        assert any(c.best_ndcg for c in group) and any(c.best_ndcg_at_k for c in group)


def test_evaluate_deterministic(fixture_catalog, fixture_profiles):
    first = evaluate(fixture_catalog, fixture_profiles)
    second = evaluate(fixture_catalog, fixture_profiles)
    assert first == second


def test_evaluate_rejects_bad_k(fixture_catalog, fixture_profiles):
    with pytest.raises(ValidationError):
        evaluate(fixture_catalog, fixture_profiles, k=0)


def test_report_csv_shape(fixture_catalog, fixture_profiles):
    report = evaluate(fixture_catalog, fixture_profiles)
    text = report_to_csv(report)
    lines = text.splitlines()
    assert lines[0] == "stakeholder,method,variant,ndcg,ndcg_at_k,best_ndcg,best_ndcg_at_k"
    assert len(lines) == len(report.cells) + 1
    assert all(len(line.split(",")) == 7 for line in lines)


def test_report_markdown_header_tracks_k(fixture_catalog, fixture_profiles):
    report = evaluate(fixture_catalog, fixture_profiles, k=3)
    text = report_to_markdown(report)
    assert text.splitlines()[0] == "| Stakeholder | Method | Variant | NDCG | NDCG@3 |"
    assert "**" in text


def test_report_json_round_trips(fixture_catalog, fixture_profiles):
    import json

    report = evaluate(fixture_catalog, fixture_profiles)
    doc = json.loads(report_to_json(report))
    assert doc["k"] == report.k
    assert len(doc["cells"]) == len(report.cells)
    assert doc["cells"][0]["stakeholder"] == report.cells[0].stakeholder
