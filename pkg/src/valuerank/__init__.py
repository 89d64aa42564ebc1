"""Personalized dataset ranking from catalog metadata.

Datasets are scored per user as a weighted average of four normalized
metadata dimensions (expert utility, creation-date currency, object count,
usage), ranked by that score, and rankings are evaluated against ideal
rankings with tie-averaged NDCG and NDCG@k.
"""

from valuerank.catalog import (
    Catalog,
    DatasetRecord,
    StakeholderProfile,
    UsageEntry,
    UsageSeries,
    Violation,
    catalog_to_csv,
    catalog_to_json,
    load_catalog,
    load_profile,
    parse_catalog,
    parse_profile,
    validate_catalog,
)
from valuerank.errors import (
    AllZeroWeightsError,
    EmptyInputError,
    MissingDimensionError,
    ParseError,
    UndefinedMetricError,
    ValidationError,
    ValueRankError,
)
from valuerank.evaluation import (
    DEFAULT_K,
    EvaluationCell,
    EvaluationReport,
    dcg,
    evaluate,
    ndcg,
    relevance_from_ranking,
    report_to_csv,
    report_to_json,
    report_to_markdown,
)
from valuerank.valuation import (
    DEFAULT_DECLINE_RATE,
    SIMPLE_AVERAGE,
    WEIGHTED,
    DataValue,
    DimensionVector,
    Method,
    NormalizedWeights,
    RankedList,
    RankExplanation,
    UsageMode,
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

__version__ = "0.1.0"
