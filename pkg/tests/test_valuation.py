from __future__ import annotations

import math
import random
from dataclasses import replace
from datetime import date, timedelta

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from valuerank import (
    AllZeroWeightsError,
    EmptyInputError,
    MissingDimensionError,
    SIMPLE_AVERAGE,
    UsageMode,
    ValidationError,
    ValuationConfig,
    WeightVector,
    aggregate_usage,
    currency,
    currency_at_age,
    data_value,
    dimension_vector,
    max_normalize,
    normalize_utility,
    normalize_weights,
    rank,
    rank_explained,
    univariate,
    variant_weights,
)
from valuerank.valuation import DimensionVector, Method
from helpers import catalogs, make_catalog, make_record, random_catalog

sliders = st.integers(0, 10)
weight_vectors = st.builds(WeightVector, sliders, sliders, sliders, sliders).filter(
    lambda w: sum(w.as_dict().values()) > 0
)


# --- normalize_weights ----------------------------------------------------


def test_normalize_sh1_weights():
    normalized = normalize_weights(WeightVector(8, 10, 8, 5))
    assert normalized.w_utility == pytest.approx(8 / 31, abs=1e-12)
    assert normalized.w_creation == pytest.approx(10 / 31, abs=1e-12)
    assert normalized.w_objects == pytest.approx(8 / 31, abs=1e-12)
    assert normalized.w_usage == pytest.approx(5 / 31, abs=1e-12)


def test_normalize_all_zero_rejected():
    with pytest.raises(AllZeroWeightsError, match="non-zero"):
        normalize_weights(WeightVector(0, 0, 0, 0))


def test_normalize_one_hot_is_identity():
    assert normalize_weights(WeightVector(0, 0, 10, 0)).w_objects == 1.0


@given(weight_vectors)
def test_normalized_weights_sum_to_one(weights):
    normalized = normalize_weights(weights)
    total = (
        normalized.w_utility + normalized.w_creation + normalized.w_objects + normalized.w_usage
    )
    assert total == pytest.approx(1.0, abs=1e-12)


@given(st.integers(0, 5), st.integers(0, 5), st.integers(0, 5), st.integers(0, 5), st.integers(2, 2))
def test_weight_scale_invariance(u, c, o, s, factor):
    if u + c + o + s == 0:
        return
    base = normalize_weights(WeightVector(u, c, o, s))
    scaled = normalize_weights(WeightVector(u * factor, c * factor, o * factor, s * factor))
    assert base == scaled  # identical bits, not merely close


@pytest.mark.parametrize("bad", [-1, 11, 5.5])
def test_weight_vector_rejects_out_of_range(bad):
    with pytest.raises(ValidationError):
        WeightVector(bad, 1, 1, 1)


# --- currency ---------------------------------------------------------------


def test_currency_age_zero_is_one():
    day = date(2021, 6, 1)
    assert currency(day, day, 0.2) == 1.0


def test_currency_five_years():
    assert currency_at_age(5.0, 0.2) == pytest.approx(math.exp(-1), abs=1e-12)


def test_currency_clamped_for_future_creation():
    assert currency(date(2024, 1, 1), date(2023, 1, 1), 0.2) == 1.0


def test_currency_matches_day_arithmetic():
    created, as_of = date(2018, 1, 1), date(2023, 1, 31)
    expected = math.exp(-0.2 * ((as_of - created).days / 365.25))
    assert currency(created, as_of) == pytest.approx(expected, abs=1e-15)


@given(st.floats(0, 80, allow_nan=False), st.floats(0.01, 2, allow_nan=False))
def test_currency_positive_and_at_most_one(age, rate):
    value = currency_at_age(age, rate)
    assert 0 < value <= 1


def test_currency_strictly_decreasing_in_age():
    rng = random.Random(7)
    ages = sorted(rng.uniform(0, 50) for _ in range(100))
    values = [currency_at_age(age, 0.2) for age in ages]
    assert all(a > b for a, b in zip(values, values[1:]))


# --- elementary normalizations ---------------------------------------------


def test_max_normalize_examples():
    assert max_normalize([10, 5, 0]) == [1.0, 0.5, 0.0]
    assert max_normalize([0, 0, 0]) == [0.0, 0.0, 0.0]
    assert max_normalize([7]) == [1.0]


def test_max_normalize_empty_rejected():
    with pytest.raises(EmptyInputError):
        max_normalize([])


def test_max_normalize_negative_rejected():
    with pytest.raises(ValueError):
        max_normalize([1.0, -0.5])


def test_normalize_utility_examples():
    assert normalize_utility(100) == 1.0
    assert normalize_utility(0) == 0.0
    assert normalize_utility(80) == pytest.approx(0.8, abs=1e-15)


@pytest.mark.parametrize("bad", [-0.1, 100.1])
def test_normalize_utility_range(bad):
    with pytest.raises(ValidationError):
        normalize_utility(bad)


def test_aggregate_usage_examples():
    series = make_record("d", usage_counts=(4, 6)).usage
    assert aggregate_usage(series, UsageMode.TOTAL) == 10
    assert aggregate_usage(series, UsageMode.AVERAGE) == pytest.approx(5.0)
    empty = make_record("d").usage
    assert aggregate_usage(empty, UsageMode.TOTAL) == 0
    assert aggregate_usage(empty, UsageMode.AVERAGE) == 0


# --- dimension vectors ------------------------------------------------------


def test_dimension_vector_max_object_record():
    catalog = make_catalog(
        [make_record("a", n_objects=50), make_record("b", n_objects=200)]
    )
    assert dimension_vector(catalog.get("b"), catalog).objects == 1.0
    assert dimension_vector(catalog.get("a"), catalog).objects == pytest.approx(0.25)


def test_dimension_vector_created_on_as_of():
    catalog = make_catalog([make_record("a", created=date(2023, 1, 31))])
    assert dimension_vector(catalog.get("a"), catalog).currency == 1.0


def test_dimension_vector_missing_utility_source():
    catalog = make_catalog(
        [make_record("a", utilities={"sh1": 10}), make_record("b", utilities={})]
    )
    with pytest.raises(MissingDimensionError, match="'b'"):
        dimension_vector(catalog.get("b"), catalog)
    # tolerated when the utility weight is zero: dimension pinned to 0
    dims = dimension_vector(catalog.get("b"), catalog, require_utility=False)
    assert dims.utility == 0.0


def test_valuation_config_validation():
    with pytest.raises(ValidationError):
        ValuationConfig(decline_rate=0)
    with pytest.raises(ValidationError):
        ValuationConfig(usage_mode="weekly")
    assert ValuationConfig(usage_mode="average").usage_mode is UsageMode.AVERAGE


# --- data_value --------------------------------------------------------------


def test_data_value_hand_example():
    dims = DimensionVector(utility=0.5, currency=0.8, objects=1.0, usage=0.2)
    weights = normalize_weights(WeightVector(8, 10, 8, 5))
    expected = (8 * 0.5 + 10 * 0.8 + 8 * 1.0 + 5 * 0.2) / 31
    assert data_value(dims, weights) == pytest.approx(expected, abs=1e-12)


@given(st.floats(0, 1, allow_nan=False), weight_vectors)
def test_data_value_constant_dims(x, weights):
    dims = DimensionVector(utility=x, currency=x, objects=x, usage=x)
    assert data_value(dims, normalize_weights(weights)) == pytest.approx(x, abs=1e-12)


def test_data_value_univariate_reduction():
    dims = DimensionVector(utility=0.9, currency=0.37, objects=0.1, usage=0.6)
    weights = normalize_weights(variant_weights(univariate("creation_date")))
    assert data_value(dims, weights) == pytest.approx(0.37, abs=1e-15)


@given(
    st.tuples(*[st.floats(0, 1, allow_nan=False) for _ in range(4)]),
    weight_vectors,
)
def test_data_value_convexity_bound(dims_tuple, weights):
    dims = DimensionVector(*dims_tuple)
    value = data_value(dims, normalize_weights(weights))
    lo, hi = min(dims_tuple), max(dims_tuple)
    assert lo - 1e-12 <= value <= hi + 1e-12
    assert 0 <= value <= 1


# --- variant weights ---------------------------------------------------------


def test_variant_weights_simple_average():
    normalized = normalize_weights(variant_weights(SIMPLE_AVERAGE))
    assert normalized.as_dict() == {
        "utility": 0.25,
        "creation_date": 0.25,
        "n_objects": 0.25,
        "usage": 0.25,
    }


def test_variant_weights_univariate():
    normalized = normalize_weights(variant_weights(univariate("creation_date")))
    assert normalized.as_dict() == {
        "utility": 0.0,
        "creation_date": 1.0,
        "n_objects": 0.0,
        "usage": 0.0,
    }


def test_variant_weights_weighted_has_no_vector():
    with pytest.raises(ValueError):
        variant_weights(Method("weighted"))


def test_method_parse():
    assert Method.parse("weighted") == Method("weighted")
    assert Method.parse("simple") == SIMPLE_AVERAGE
    assert Method.parse("univariate:usage") == univariate("usage")
    with pytest.raises(ValidationError):
        Method.parse("univariate:size")
    with pytest.raises(ValidationError):
        Method.parse("bogus")


# --- rank --------------------------------------------------------------------


def test_rank_one_hot_usage():
    catalog = make_catalog(
        [make_record("hi", usage_counts=(10,)), make_record("lo", usage_counts=(5,))]
    )
    ranking = rank(catalog, variant_weights(univariate("usage")))
    assert ranking.ids() == ("hi", "lo")
    assert [item.value for item in ranking] == [1.0, 0.5]


def test_rank_tie_break_ascending_id():
    catalog = make_catalog([make_record("ds-b"), make_record("ds-a")])
    ranking = rank(catalog, WeightVector(1, 1, 1, 1))
    assert ranking.ids() == ("ds-a", "ds-b")


def test_rank_golden_ordering(fixture_catalog, data_dir):
    golden_ids = [
        line.split(",")[1]
        for line in (data_dir / "golden_rank_sh1.csv").read_text().splitlines()[1:]
    ]
    ranking = rank(fixture_catalog, WeightVector(8, 10, 8, 5))
    assert list(ranking.ids()) == golden_ids


def test_rank_propagates_all_zero():
    catalog = make_catalog([make_record("a")])
    with pytest.raises(AllZeroWeightsError):
        rank(catalog, WeightVector(0, 0, 0, 0))


def test_rank_empty_catalog_rejected():
    with pytest.raises(EmptyInputError):
        rank(make_catalog([]), WeightVector(1, 1, 1, 1))


def test_rank_missing_utility_allowed_when_weight_zero():
    catalog = make_catalog([make_record("a", utilities={}), make_record("b", utilities={})])
    ranking = rank(catalog, WeightVector(0, 1, 1, 1))
    assert len(ranking) == 2
    with pytest.raises(MissingDimensionError):
        rank(catalog, WeightVector(1, 1, 1, 1))


@settings(max_examples=40)
@given(catalogs(), weight_vectors)
def test_rank_independent_of_catalog_order(catalog, weights):
    shuffled = make_catalog(tuple(reversed(catalog.datasets)), catalog.as_of_date)
    assert rank(catalog, weights).values() == rank(shuffled, weights).values()
    assert rank(catalog, weights).ids() == rank(shuffled, weights).ids()


@settings(max_examples=40)
@given(catalogs(), weight_vectors)
def test_rank_deterministic(catalog, weights):
    assert rank(catalog, weights) == rank(catalog, weights)


@settings(max_examples=60)
@given(catalogs(min_n=2, max_n=6), st.data())
def test_rank_monotone_in_raw_dimension(catalog, data):
    # bumping one dataset's object count never lowers its value, and raises
    # it strictly while the dataset is not the max-normalization pivot
    weights = WeightVector(0, 1, 3, 1)
    target = data.draw(st.sampled_from(catalog.datasets))
    bump = data.draw(st.integers(1, 10_000))
    before = rank(catalog, weights).values()[target.id]
    peak = max(r.n_spatial_objects for r in catalog.datasets)
    bumped = tuple(
        replace(r, n_spatial_objects=r.n_spatial_objects + bump) if r.id == target.id else r
        for r in catalog.datasets
    )
    after = rank(make_catalog(bumped, catalog.as_of_date), weights).values()[target.id]
    if target.n_spatial_objects < peak:
        assert after > before
    else:
        assert after >= before - 1e-15


def test_special_case_equivalence_seeded():
    rng = random.Random(11)
    for _ in range(10):
        catalog = random_catalog(rng, max_n=12)
        simple = rank(catalog, variant_weights(SIMPLE_AVERAGE))
        for k in (1, 4, 10):
            equal = rank(catalog, WeightVector(k, k, k, k))
            assert equal == simple


def test_univariate_matches_single_dimension_sort():
    rng = random.Random(23)
    catalog = random_catalog(rng, n=12)
    config = ValuationConfig()
    ranking = rank(catalog, variant_weights(univariate("n_objects")), config)
    dims = {
        r.id: dimension_vector(r, catalog, config, require_utility=False).objects
        for r in catalog.datasets
    }
    expected = sorted(dims, key=lambda i: (-dims[i], i))
    assert list(ranking.ids()) == expected
    for item in ranking:
        assert item.value == pytest.approx(dims[item.dataset_id], abs=1e-12)


def test_rank_explained_exposes_normalized_weights_and_dims(fixture_catalog):
    explanation = rank_explained(fixture_catalog, WeightVector(8, 10, 8, 5))
    assert set(explanation.dimensions) == set(fixture_catalog.ids())
    for item in explanation.ranking:
        dims = explanation.dimensions[item.dataset_id]
        assert item.value == pytest.approx(data_value(dims, explanation.weights), abs=0)
