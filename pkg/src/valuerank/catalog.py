"""Catalog data model, file parsing, and validation.

Two interchange formats are supported. JSON is canonical and self-contained;
CSV splits the catalog into a dataset table and a companion usage table and
needs an explicit as-of date. Parsed values round-trip losslessly through
``catalog_to_json`` / ``catalog_to_csv``.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import re
from dataclasses import dataclass, field, replace
from datetime import date
from typing import IO, Any, Iterable, Mapping

from valuerank.errors import ParseError, ValidationError
from valuerank.weights import DIMENSIONS, WeightVector

__all__ = [
    "UsageEntry",
    "UsageSeries",
    "DatasetRecord",
    "Catalog",
    "StakeholderProfile",
    "Violation",
    "parse_catalog",
    "parse_profile",
    "load_catalog",
    "load_profile",
    "validate_catalog",
    "catalog_to_json",
    "catalog_to_csv",
]

logger = logging.getLogger(__name__)

AVERAGE_UTILITY_LABEL = "avg"

_MONTH_RE = re.compile(r"^(\d{4})-(\d{2})$")
_UTILITY_COLUMN_PREFIX = "utility:"


def _parse_month(text: str) -> date:
    m = _MONTH_RE.match(text)
    if not m:
        raise ValidationError(f"invalid month {text!r}, expected YYYY-MM")
    year, month = int(m.group(1)), int(m.group(2))
    if not 1 <= month <= 12:
        raise ValidationError(f"invalid month {text!r}, expected YYYY-MM")
    return date(year, month, 1)


def _parse_date(text: str, context: str) -> date:
    try:
        return date.fromisoformat(text)
    except (TypeError, ValueError):
        raise ValidationError(f"{context}: invalid date {text!r}, expected YYYY-MM-DD") from None


def _month_str(month: date) -> str:
    return f"{month.year:04d}-{month.month:02d}"


@dataclass(frozen=True, slots=True)
class UsageEntry:
    month: date  # first day of the month
    count: int


@dataclass(frozen=True, slots=True)
class UsageSeries:
    """Monthly usage counts, ordered by month. May be empty."""

    entries: tuple[UsageEntry, ...] = ()

    def __len__(self) -> int:
        return len(self.entries)

    def counts(self) -> tuple[int, ...]:
        return tuple(e.count for e in self.entries)


@dataclass(frozen=True, slots=True)
class DatasetRecord:
    """One catalog entry: identity plus the raw value-dimension metadata."""

    id: str
    name: str
    creation_date: date
    n_spatial_objects: int
    usage: UsageSeries = UsageSeries()
    utilities: Mapping[str, float] = field(default_factory=dict)


@dataclass(frozen=True, slots=True)
class StakeholderProfile:
    """A stakeholder's slider weights and, optionally, their ideal ranking."""

    id: str
    weights: WeightVector
    ideal_ranking: tuple[str, ...] | None = None


@dataclass(frozen=True, slots=True)
class Catalog:
    datasets: tuple[DatasetRecord, ...]
    as_of_date: date

    def __len__(self) -> int:
        return len(self.datasets)

    def ids(self) -> tuple[str, ...]:
        return tuple(r.id for r in self.datasets)

    def get(self, dataset_id: str) -> DatasetRecord:
        for record in self.datasets:
            if record.id == dataset_id:
                return record
        raise KeyError(dataset_id)

    def utility_sources(self) -> tuple[str, ...]:
        """All utility labels present, sorted, with the average label last."""
        labels = {label for r in self.datasets for label in r.utilities}
        ordered = sorted(labels - {AVERAGE_UTILITY_LABEL})
        if AVERAGE_UTILITY_LABEL in labels:
            ordered.append(AVERAGE_UTILITY_LABEL)
        return tuple(ordered)

    def default_utility_source(self) -> str | None:
        """The average when present, else the sole label, else None."""
        sources = self.utility_sources()
        if AVERAGE_UTILITY_LABEL in sources:
            return AVERAGE_UTILITY_LABEL
        if len(sources) == 1:
            return sources[0]
        return None

    def with_as_of(self, as_of: date) -> "Catalog":
        return replace(self, as_of_date=as_of)


@dataclass(frozen=True, slots=True)
class Violation:
    """A single invariant violation found by ``validate_catalog``."""

    record_id: str
    field: str
    rule: str
    severity: str = "error"  # "error" or "warning"

    def __str__(self) -> str:
        return f"{self.severity}: {self.record_id}: {self.field}: {self.rule}"


def validate_catalog(catalog: Catalog) -> list[Violation]:
    """Check every catalog invariant; returns violations, never raises.

    The list is deterministically ordered by record id, then field name.
    """
    found: list[Violation] = []
    seen: set[str] = set()
    for record in catalog.datasets:
        if not record.id:
            found.append(Violation(record.id, "id", "empty id"))
        if record.id in seen:
            found.append(Violation(record.id, "id", "duplicate id"))
        seen.add(record.id)
        if record.n_spatial_objects < 0:
            found.append(Violation(record.id, "n_spatial_objects", "negative count"))
        for label in sorted(record.utilities):
            value = record.utilities[label]
            if not 0 <= value <= 100:
                found.append(
                    Violation(record.id, f"utilities[{label}]", "utility out of range [0,100]")
                )
        months = [e.month for e in record.usage.entries]
        if any(b <= a for a, b in zip(months, months[1:])):
            found.append(Violation(record.id, "usage", "usage months not strictly increasing"))
        if any(e.count < 0 for e in record.usage.entries):
            found.append(Violation(record.id, "usage", "negative usage count"))
        if record.creation_date > catalog.as_of_date:
            found.append(
                Violation(record.id, "creation_date", "creation date in the future", "warning")
            )
    found.sort(key=lambda v: (v.record_id, v.field, v.rule))
    return found


def _text(source: str | bytes | IO) -> str:
    if isinstance(source, bytes):
        return source.decode("utf-8")
    if isinstance(source, str):
        return source
    data = source.read()
    return data.decode("utf-8") if isinstance(data, bytes) else data


def _require(mapping: Mapping[str, Any], key: str, context: str) -> Any:
    if key not in mapping:
        raise ValidationError(f"{context}: missing field {key!r}")
    return mapping[key]


def _parse_count(value: Any, context: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(f"{context}: expected an integer, got {value!r}")
    return value


def _with_average_utility(utilities: dict[str, float]) -> dict[str, float]:
    # The catalog-wide average dimension is derived at ingestion from the
    # individual sources; an explicitly supplied average is kept as-is so
    # serialized catalogs re-parse to an equal structure.
    sources = [label for label in utilities if label != AVERAGE_UTILITY_LABEL]
    if AVERAGE_UTILITY_LABEL not in utilities and len(sources) >= 2:
        utilities[AVERAGE_UTILITY_LABEL] = sum(utilities[s] for s in sources) / len(sources)
    return utilities


def _parse_usage_entries(raw: Iterable[tuple[str, Any]], context: str) -> UsageSeries:
    entries = []
    for month_text, count in raw:
        entries.append(UsageEntry(_parse_month(month_text), _parse_count(count, context)))
    return UsageSeries(tuple(entries))


def _record_from_json(obj: Mapping[str, Any], index: int) -> DatasetRecord:
    context = f"dataset #{index}"
    record_id = _require(obj, "id", context)
    if not isinstance(record_id, str):
        raise ValidationError(f"{context}: id must be a string")
    context = f"dataset {record_id!r}" if record_id else context
    name = _require(obj, "name", context)
    creation = _parse_date(str(_require(obj, "creation_date", context)), context)
    n_objects = _parse_count(_require(obj, "n_spatial_objects", context), context)

    raw_usage = obj.get("usage", [])
    if not isinstance(raw_usage, list) or not all(isinstance(e, dict) for e in raw_usage):
        raise ValidationError(f"{context}: usage must be a list of objects")
    try:
        usage = _parse_usage_entries(
            ((_require(e, "month", context), _require(e, "count", context)) for e in raw_usage),
            context,
        )
    except ValidationError as exc:
        raise ValidationError(f"{context}: {exc}") from None

    raw_utilities = obj.get("utilities", {})
    if not isinstance(raw_utilities, dict):
        raise ValidationError(f"{context}: utilities must be an object")
    utilities: dict[str, float] = {}
    for label, value in raw_utilities.items():
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ValidationError(f"{context}: utilities[{label}] must be a number")
        utilities[label] = float(value)

    return DatasetRecord(
        id=record_id,
        name=str(name),
        creation_date=creation,
        n_spatial_objects=n_objects,
        usage=usage,
        utilities=_with_average_utility(utilities),
    )


def _parse_catalog_json(text: str) -> Catalog:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"column {exc.colno}: {exc.msg}", line=exc.lineno) from None
    if not isinstance(doc, dict):
        raise ValidationError("catalog document must be a JSON object")
    as_of = _parse_date(str(_require(doc, "as_of_date", "catalog")), "catalog as_of_date")
    raw_datasets = _require(doc, "datasets", "catalog")
    if not isinstance(raw_datasets, list):
        raise ValidationError("catalog: datasets must be a list")
    records = tuple(_record_from_json(obj, i + 1) for i, obj in enumerate(raw_datasets))
    return Catalog(datasets=records, as_of_date=as_of)


def _parse_catalog_csv(text: str, usage_text: str | None, as_of: date | None) -> Catalog:
    if as_of is None:
        raise ValidationError("CSV catalogs need an explicit as-of date")

    usage_by_id: dict[str, list[tuple[str, int]]] = {}
    if usage_text is not None:
        reader = csv.DictReader(io.StringIO(usage_text))
        header = reader.fieldnames or []
        for column in ("id", "month", "count"):
            if column not in header:
                raise ParseError(f"usage table missing column {column!r}", line=1)
        for row_no, row in enumerate(reader, start=2):
            if None in row or any(v is None for v in row.values()):
                raise ParseError("wrong number of columns", line=row_no)
            try:
                count = int(row["count"])
            except ValueError:
                raise ParseError(f"bad usage count {row['count']!r}", line=row_no) from None
            usage_by_id.setdefault(row["id"], []).append((row["month"], count))

    reader = csv.DictReader(io.StringIO(text))
    header = reader.fieldnames or []
    for column in ("id", "name", "creation_date", "n_spatial_objects"):
        if column not in header:
            raise ParseError(f"missing column {column!r}", line=1)
    utility_labels = [
        c[len(_UTILITY_COLUMN_PREFIX):] for c in header if c.startswith(_UTILITY_COLUMN_PREFIX)
    ]

    records = []
    for row_no, row in enumerate(reader, start=2):
        if None in row or any(v is None for v in row.values()):
            raise ParseError("wrong number of columns", line=row_no)
        record_id = row["id"]
        context = f"dataset {record_id!r}"
        try:
            n_objects = int(row["n_spatial_objects"])
        except ValueError:
            raise ValidationError(
                f"{context}: n_spatial_objects: expected an integer, got "
                f"{row['n_spatial_objects']!r}"
            ) from None
        utilities: dict[str, float] = {}
        for label in utility_labels:
            cell = row[_UTILITY_COLUMN_PREFIX + label]
            if cell.strip() == "":
                continue
            try:
                utilities[label] = float(cell)
            except ValueError:
                raise ValidationError(f"{context}: utilities[{label}]: not a number") from None
        try:
            usage = _parse_usage_entries(usage_by_id.get(record_id, []), context)
        except ValidationError as exc:
            raise ValidationError(f"{context}: {exc}") from None
        records.append(
            DatasetRecord(
                id=record_id,
                name=row["name"],
                creation_date=_parse_date(row["creation_date"], context),
                n_spatial_objects=n_objects,
                usage=usage,
                utilities=_with_average_utility(utilities),
            )
        )

    unknown = set(usage_by_id) - {r.id for r in records}
    if unknown:
        raise ValidationError(f"usage table references unknown dataset ids: {sorted(unknown)}")
    return Catalog(datasets=tuple(records), as_of_date=as_of)


def parse_catalog(
    source: str | bytes | IO,
    format: str = "json",
    *,
    usage_source: str | bytes | IO | None = None,
    as_of: date | None = None,
    strict: bool = True,
) -> Catalog:
    """Parse a catalog from JSON or CSV text.

    CSV catalogs take the usage table separately (``usage_source``) and
    require ``as_of``. With ``strict`` (the default), error-level invariant
    violations raise ValidationError; warnings are only logged either way.
    """
    if format == "json":
        catalog = _parse_catalog_json(_text(source))
        if as_of is not None:
            catalog = catalog.with_as_of(as_of)
    elif format == "csv":
        usage_text = _text(usage_source) if usage_source is not None else None
        catalog = _parse_catalog_csv(_text(source), usage_text, as_of)
    else:
        raise ValueError(f"unknown catalog format {format!r}")

    violations = validate_catalog(catalog)
    errors = [v for v in violations if v.severity == "error"]
    if strict and errors:
        raise ValidationError("; ".join(f"{v.record_id}: {v.field}: {v.rule}" for v in errors))
    for violation in violations:
        if violation.severity == "warning":
            logger.warning("%s", violation)
    return catalog


def parse_profile(source: str | bytes | IO) -> StakeholderProfile:
    """Parse a stakeholder profile from JSON text.

    Weights must be integers in [0,10]. An all-zero weight vector parses
    fine; it is rejected later, at normalization. The ideal ranking is kept
    verbatim; whether it is a permutation of the catalog is checked by the
    evaluate operations, since profiles are catalog-independent.
    """
    try:
        doc = json.loads(_text(source))
    except json.JSONDecodeError as exc:
        raise ParseError(f"column {exc.colno}: {exc.msg}", line=exc.lineno) from None
    if not isinstance(doc, dict):
        raise ValidationError("profile document must be a JSON object")
    profile_id = str(_require(doc, "id", "profile"))
    raw_weights = _require(doc, "weights", f"profile {profile_id!r}")
    if not isinstance(raw_weights, dict):
        raise ValidationError(f"profile {profile_id!r}: weights must be an object")
    unknown = set(raw_weights) - set(DIMENSIONS)
    if unknown:
        raise ValidationError(f"profile {profile_id!r}: unknown weight keys {sorted(unknown)}")
    values: dict[str, int] = {}
    for name in DIMENSIONS:
        value = _require(raw_weights, name, f"profile {profile_id!r} weights")
        if isinstance(value, float) and value.is_integer():
            value = int(value)
        values[name] = value
    weights = WeightVector(**values)

    ideal = doc.get("ideal_ranking")
    ranking: tuple[str, ...] | None = None
    if ideal is not None:
        if not isinstance(ideal, list) or not all(isinstance(x, str) for x in ideal):
            raise ValidationError(f"profile {profile_id!r}: ideal_ranking must be a list of ids")
        ranking = tuple(ideal)
    return StakeholderProfile(id=profile_id, weights=weights, ideal_ranking=ranking)


def load_catalog(
    path: str,
    *,
    usage_path: str | None = None,
    as_of: date | None = None,
    strict: bool = True,
) -> Catalog:
    """Load a catalog file, inferring the format from the extension."""
    format = "csv" if str(path).lower().endswith(".csv") else "json"
    with open(path, "rb") as handle:
        if format == "csv":
            usage_handle = open(usage_path, "rb") if usage_path else None
            try:
                return parse_catalog(
                    handle, "csv", usage_source=usage_handle, as_of=as_of, strict=strict
                )
            finally:
                if usage_handle:
                    usage_handle.close()
        return parse_catalog(handle, "json", as_of=as_of, strict=strict)


def load_profile(path: str) -> StakeholderProfile:
    with open(path, "rb") as handle:
        return parse_profile(handle)


def catalog_to_json(catalog: Catalog) -> str:
    """Serialize to the canonical JSON interchange form."""
    doc = {
        "as_of_date": catalog.as_of_date.isoformat(),
        "datasets": [
            {
                "id": r.id,
                "name": r.name,
                "creation_date": r.creation_date.isoformat(),
                "n_spatial_objects": r.n_spatial_objects,
                "usage": [
                    {"month": _month_str(e.month), "count": e.count} for e in r.usage.entries
                ],
                "utilities": dict(sorted(r.utilities.items())),
            }
            for r in catalog.datasets
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def catalog_to_csv(catalog: Catalog) -> tuple[str, str]:
    """Serialize to the two-table CSV form (datasets, usage)."""
    labels = sorted({label for r in catalog.datasets for label in r.utilities})
    datasets_out = io.StringIO()
    writer = csv.writer(datasets_out, lineterminator="\n")
    writer.writerow(
        ["id", "name", "creation_date", "n_spatial_objects"]
        + [_UTILITY_COLUMN_PREFIX + label for label in labels]
    )
    for r in catalog.datasets:
        row = [r.id, r.name, r.creation_date.isoformat(), r.n_spatial_objects]
        row += [
            repr(r.utilities[label]) if label in r.utilities else "" for label in labels
        ]
        writer.writerow(row)

    usage_out = io.StringIO()
    writer = csv.writer(usage_out, lineterminator="\n")
    writer.writerow(["id", "month", "count"])
    for r in catalog.datasets:
        for entry in r.usage.entries:
            writer.writerow([r.id, _month_str(entry.month), entry.count])
    return datasets_out.getvalue(), usage_out.getvalue()
