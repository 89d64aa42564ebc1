"""Shared builders for synthetic catalogs used across the test modules."""

from __future__ import annotations

import random
from datetime import date, timedelta

from hypothesis import strategies as st

from valuerank import Catalog, DatasetRecord, UsageEntry, UsageSeries


def make_record(
    record_id: str,
    *,
    created: date = date(2020, 1, 1),
    n_objects: int = 100,
    usage_counts: tuple[int, ...] = (),
    utilities: dict[str, float] | None = None,
    usage_start: tuple[int, int] = (2020, 1),
) -> DatasetRecord:
    year, month = usage_start
    entries = []
    for count in usage_counts:
        entries.append(UsageEntry(date(year, month, 1), count))
        month += 1
        if month == 13:
            year, month = year + 1, 1
    return DatasetRecord(
        id=record_id,
        name=record_id.upper(),
        creation_date=created,
        n_spatial_objects=n_objects,
        usage=UsageSeries(tuple(entries)),
        utilities=utilities if utilities is not None else {"sh1": 50.0},
    )


def make_catalog(records, as_of: date = date(2023, 1, 31)) -> Catalog:
    return Catalog(datasets=tuple(records), as_of_date=as_of)


def random_catalog(rng: random.Random, n: int | None = None, max_n: int = 20) -> Catalog:
    """A seeded catalog with utility values on every record and a mix of
    usage shapes, sized 2..max_n."""
    n = n if n is not None else rng.randint(2, max_n)
    two_sources = rng.random() < 0.5
    records = []
    for i in range(n):
        n_months = rng.randint(0, 24)
        utilities: dict[str, float] = {"sh1": float(rng.randint(0, 100))}
        if two_sources:
            utilities["x2"] = float(rng.randint(0, 100))
            utilities["avg"] = (utilities["sh1"] + utilities["x2"]) / 2
        records.append(
            make_record(
                f"ds-{i:02d}",
                created=date(2015, 1, 1) + timedelta(days=rng.randrange(0, 3000)),
                n_objects=rng.randrange(0, 10_000),
                usage_counts=tuple(rng.randrange(0, 50) for _ in range(n_months)),
                utilities=utilities,
                usage_start=(2017, rng.randint(1, 12)),
            )
        )
    return make_catalog(records)


@st.composite
def catalogs(draw, min_n: int = 2, max_n: int = 8):
    n = draw(st.integers(min_n, max_n))
    records = []
    for i in range(n):
        created = draw(st.dates(date(2010, 1, 1), date(2023, 1, 1)))
        n_objects = draw(st.integers(0, 100_000))
        counts = draw(st.lists(st.integers(0, 500), max_size=12))
        utility = draw(st.integers(0, 100))
        records.append(
            make_record(
                f"ds-{i:02d}",
                created=created,
                n_objects=n_objects,
                usage_counts=tuple(counts),
                utilities={"sh1": float(utility)},
            )
        )
    return make_catalog(records)
