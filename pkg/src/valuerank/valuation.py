"""Personalized data-value computation and ranking.

A dataset's value for a stakeholder is the weighted average of four
normalized dimensions: expert utility (scaled from its 0-100 range),
creation date (as an exponentially decaying currency score), number of
spatial objects, and usage (total or monthly average), the last two divided
by their catalog-wide maximum. The weights come from the stakeholder's
0-10 sliders, divided by their sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from datetime import date
from enum import Enum
from typing import Iterable, Sequence

from valuerank import kernels
from valuerank.catalog import Catalog, DatasetRecord, UsageSeries
from valuerank.errors import (
    EmptyInputError,
    MissingDimensionError,
    ValidationError,
)
from valuerank.weights import (
    DIMENSIONS,
    NormalizedWeights,
    WeightVector,
    normalize_weights,
)

__all__ = [
    "DAYS_PER_YEAR",
    "DEFAULT_DECLINE_RATE",
    "UsageMode",
    "Method",
    "WEIGHTED",
    "SIMPLE_AVERAGE",
    "univariate",
    "DimensionVector",
    "ValuationConfig",
    "DataValue",
    "RankedList",
    "RankExplanation",
    "normalize_weights",
    "NormalizedWeights",
    "WeightVector",
    "currency",
    "currency_at_age",
    "max_normalize",
    "normalize_utility",
    "aggregate_usage",
    "dimension_vector",
    "data_value",
    "rank",
    "rank_explained",
    "variant_weights",
]

DAYS_PER_YEAR = 365.25
DEFAULT_DECLINE_RATE = 0.2


class UsageMode(str, Enum):
    TOTAL = "total"
    AVERAGE = "average"


@dataclass(frozen=True, slots=True)
class DimensionVector:
    """Normalized per-dataset dimension values, each in [0,1]."""

    utility: float
    currency: float
    objects: float
    usage: float

    def as_dict(self) -> dict[str, float]:
        return {
            "utility": self.utility,
            "currency": self.currency,
            "objects": self.objects,
            "usage": self.usage,
        }


@dataclass(frozen=True, slots=True)
class ValuationConfig:
    """Knobs of the value computation.

    ``utility_source`` picks which utility estimate feeds the utility
    dimension; None defers to the catalog's default (the ingested average
    when present, else the sole source). ``as_of_date`` defaults to the
    catalog's own as-of date.
    """

    decline_rate: float = DEFAULT_DECLINE_RATE
    usage_mode: UsageMode = UsageMode.TOTAL
    utility_source: str | None = None
    as_of_date: date | None = None

    def __post_init__(self) -> None:
        if not self.decline_rate > 0:
            raise ValidationError(f"decline_rate must be > 0, got {self.decline_rate}")
        if not isinstance(self.usage_mode, UsageMode):
            try:
                object.__setattr__(self, "usage_mode", UsageMode(self.usage_mode))
            except ValueError:
                raise ValidationError(f"unknown usage mode {self.usage_mode!r}") from None


@dataclass(frozen=True, slots=True)
class DataValue:
    dataset_id: str
    value: float


@dataclass(frozen=True, slots=True)
class RankedList:
    """Datasets ordered by descending value; ties broken by ascending id."""

    items: tuple[DataValue, ...]

    def __iter__(self):
        return iter(self.items)

    def __len__(self) -> int:
        return len(self.items)

    def ids(self) -> tuple[str, ...]:
        return tuple(item.dataset_id for item in self.items)

    def values(self) -> dict[str, float]:
        return {item.dataset_id: item.value for item in self.items}


@dataclass(frozen=True, slots=True)
class RankExplanation:
    """A ranking plus the inputs a UI needs to explain it."""

    ranking: RankedList
    weights: NormalizedWeights
    dimensions: dict[str, DimensionVector]


@dataclass(frozen=True, slots=True)
class Method:
    """A ranking method: full weighted average, or one of its special cases."""

    kind: str  # "weighted" | "simple_average" | "univariate"
    dimension: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("weighted", "simple_average", "univariate"):
            raise ValidationError(f"unknown method {self.kind!r}")
        if self.kind == "univariate":
            # dimension None means "every dimension" (used by evaluation
            # when enumerating the full univariate block)
            if self.dimension is not None and self.dimension not in DIMENSIONS:
                raise ValidationError(
                    f"univariate dimension must be one of {', '.join(DIMENSIONS)}"
                )
        elif self.dimension is not None:
            raise ValidationError(f"method {self.kind!r} takes no dimension")

    @classmethod
    def parse(cls, text: str) -> "Method":
        """Parse a CLI-style method spec: weighted | simple | univariate:<dim>."""
        if text in ("weighted",):
            return WEIGHTED
        if text in ("simple", "simple_average"):
            return SIMPLE_AVERAGE
        if text.startswith("univariate:"):
            return cls("univariate", text.split(":", 1)[1])
        raise ValidationError(
            f"unknown method {text!r}; expected weighted, simple, or univariate:<dimension>"
        )

    def __str__(self) -> str:
        if self.kind == "univariate":
            return f"univariate:{self.dimension}"
        return self.kind


WEIGHTED = Method("weighted")
SIMPLE_AVERAGE = Method("simple_average")


def univariate(dimension: str) -> Method:
    return Method("univariate", dimension)


def variant_weights(method: Method) -> WeightVector:
    """The slider vector a degenerate method stands for.

    The simple average is the all-equal vector; a univariate method is the
    one-hot vector on its dimension. The weighted method has no canonical
    vector (it uses the stakeholder's own) and is rejected.
    """
    if method.kind == "simple_average":
        return WeightVector(1, 1, 1, 1)
    if method.kind == "univariate":
        if method.dimension is None:
            raise ValueError("a univariate weight vector needs a concrete dimension")
        values = {name: 0 for name in DIMENSIONS}
        values[method.dimension] = 1
        return WeightVector(**values)
    raise ValueError("the weighted method uses the stakeholder's own weights")


def currency_at_age(age_years: float, decline_rate: float = DEFAULT_DECLINE_RATE) -> float:
    """Freshness score exp(-decline_rate * age_years) for a non-negative age."""
    return math.exp(-decline_rate * age_years)


def currency(
    creation_date: date, as_of: date, decline_rate: float = DEFAULT_DECLINE_RATE
) -> float:
    """Freshness of a dataset created on ``creation_date`` as seen from ``as_of``.

    Age is measured in fractional years (days / 365.25). A creation date
    after ``as_of`` is clamped to age zero so the result stays in (0,1].
    """
    age_years = (as_of - creation_date).days / DAYS_PER_YEAR
    return currency_at_age(max(age_years, 0.0), decline_rate)


def max_normalize(values: Sequence[float]) -> list[float]:
    """Divide non-negative values by their maximum, mapping them into [0,1].

    An all-zero input maps to all zeros: the dimension carries no signal,
    so every dataset gets the neutral score rather than a division error.
    """
    if len(values) == 0:
        raise EmptyInputError("max_normalize needs at least one value")
    if any(v < 0 for v in values):
        raise ValueError("max_normalize inputs must be non-negative")
    peak = max(values)
    if peak == 0:
        return [0.0] * len(values)
    return [v / peak for v in values]


def normalize_utility(raw: float) -> float:
    """Scale a 0-100 utility judgment to [0,1]."""
    if not 0 <= raw <= 100:
        raise ValidationError(f"utility out of range [0,100]: {raw!r}")
    return raw / 100


def aggregate_usage(series: UsageSeries, mode: UsageMode = UsageMode.TOTAL) -> float:
    """Collapse a monthly usage series to one number.

    Total sums the counts; average divides by the number of months present
    (absent months are unobserved, not zero). An empty series is 0 in both
    modes: a never-used dataset has zero usage signal.
    """
    counts = series.counts()
    if not counts:
        return 0.0
    total = float(sum(counts))
    if UsageMode(mode) is UsageMode.AVERAGE:
        return total / len(counts)
    return total


def _resolve_source(catalog: Catalog, config: ValuationConfig, required: bool) -> str | None:
    source = config.utility_source
    if source is None:
        source = catalog.default_utility_source()
        if source is None and required:
            raise MissingDimensionError(
                "no utility source specified and the catalog has no unambiguous default"
            )
    return source


def _utility_column(
    records: Iterable[DatasetRecord], source: str | None, required: bool
) -> list[float]:
    column = []
    for record in records:
        if source is not None and source in record.utilities:
            column.append(normalize_utility(record.utilities[source]))
        elif required:
            raise MissingDimensionError(
                f"dataset {record.id!r} has no utility value for source {source!r}"
            )
        else:
            column.append(0.0)
    return column


def _dimension_columns(
    catalog: Catalog, config: ValuationConfig, require_utility: bool
) -> tuple[list[float], list[float], list[float], list[float]]:
    """Columns (utility, usage, currency, objects) over the catalog order."""
    if not catalog.datasets:
        raise EmptyInputError("catalog has no datasets")
    as_of = config.as_of_date or catalog.as_of_date
    source = _resolve_source(catalog, config, require_utility)
    utility = _utility_column(catalog.datasets, source, require_utility)
    usage = max_normalize(
        [aggregate_usage(r.usage, config.usage_mode) for r in catalog.datasets]
    )
    currencies = [currency(r.creation_date, as_of, config.decline_rate) for r in catalog.datasets]
    objects = max_normalize([float(r.n_spatial_objects) for r in catalog.datasets])
    return utility, usage, currencies, objects


def dimension_vector(
    record: DatasetRecord,
    catalog: Catalog,
    config: ValuationConfig | None = None,
    *,
    require_utility: bool = True,
) -> DimensionVector:
    """Normalized dimensions of one record relative to its catalog.

    With ``require_utility`` (the default) a record lacking the configured
    utility source raises MissingDimensionError; pass False when the utility
    weight is zero, in which case the dimension is reported as 0 and never
    contributes.
    """
    config = config or ValuationConfig()
    utility, usage, currencies, objects = _dimension_columns(catalog, config, require_utility)
    try:
        index = next(i for i, r in enumerate(catalog.datasets) if r.id == record.id)
    except StopIteration:
        raise KeyError(record.id) from None
    return DimensionVector(
        utility=utility[index],
        currency=currencies[index],
        objects=objects[index],
        usage=usage[index],
    )


def data_value(dims: DimensionVector, weights: NormalizedWeights) -> float:
    """The weighted average of the four dimensions under normalized weights."""
    return kernels.weighted_sums(
        [dims.utility],
        [dims.usage],
        [dims.currency],
        [dims.objects],
        weights.w_utility,
        weights.w_usage,
        weights.w_creation,
        weights.w_objects,
    )[0]


def rank_explained(
    catalog: Catalog, weights: WeightVector, config: ValuationConfig | None = None
) -> RankExplanation:
    """Rank every dataset and keep the per-dataset dimensions for display."""
    config = config or ValuationConfig()
    normalized = normalize_weights(weights)
    utility, usage, currencies, objects = _dimension_columns(
        catalog, config, require_utility=weights.utility > 0
    )
    values = kernels.weighted_sums(
        utility,
        usage,
        currencies,
        objects,
        normalized.w_utility,
        normalized.w_usage,
        normalized.w_creation,
        normalized.w_objects,
    )
    items = [DataValue(r.id, v) for r, v in zip(catalog.datasets, values)]
    items.sort(key=lambda item: (-item.value, item.dataset_id))
    dims = {
        r.id: DimensionVector(
            utility=utility[i], currency=currencies[i], objects=objects[i], usage=usage[i]
        )
        for i, r in enumerate(catalog.datasets)
    }
    return RankExplanation(
        ranking=RankedList(tuple(items)), weights=normalized, dimensions=dims
    )


def rank(
    catalog: Catalog, weights: WeightVector, config: ValuationConfig | None = None
) -> RankedList:
    """Rank the catalog by personalized data value, best first."""
    return rank_explained(catalog, weights, config).ranking
