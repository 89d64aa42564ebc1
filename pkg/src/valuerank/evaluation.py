"""Ranking evaluation: graded relevance, DCG/NDCG, and the report table.

An ideal ranking of N datasets is encoded as linear graded relevance
(top item N-1 down to 0). Predicted rankings are scored with NDCG and
NDCG@k using tie-group averaging on the prediction side: items with equal
scores share their group's mean relevance, while the ideal DCG in the
denominator is the plain sorted sum. Gains are linear.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, replace
from typing import Collection, Mapping, Sequence

from valuerank import kernels
from valuerank.catalog import AVERAGE_UTILITY_LABEL, Catalog, StakeholderProfile
from valuerank.errors import (
    AllZeroWeightsError,
    UndefinedMetricError,
    ValidationError,
)
from valuerank.valuation import (
    SIMPLE_AVERAGE,
    WEIGHTED,
    Method,
    UsageMode,
    ValuationConfig,
    rank,
    univariate,
    variant_weights,
)

__all__ = [
    "DEFAULT_K",
    "EvaluationCell",
    "EvaluationReport",
    "relevance_from_ranking",
    "dcg",
    "ndcg",
    "evaluate",
    "report_to_csv",
    "report_to_markdown",
    "report_to_json",
    "method_display_name",
    "variant_display_name",
]

DEFAULT_K = 5

_METHOD_NAMES = {
    "weighted": "Weighted Average",
    "simple_average": "Simple Average",
    "univariate": "Univariate",
}

_VARIANT_NAMES = {
    "total_usage": "Total Usage",
    "average_usage": "Average Usage",
    "n_objects": "Number of Spatial Objects",
    "creation_date": "Creation Date",
}


@dataclass(frozen=True, slots=True)
class EvaluationCell:
    """One report row: a stakeholder scored under one method variant."""

    stakeholder: str
    method: str
    variant: str
    ndcg: float
    ndcg_at_k: float
    k: int
    usage_mode: str | None = None
    utility_source: str | None = None
    best_ndcg: bool = False
    best_ndcg_at_k: bool = False


@dataclass(frozen=True, slots=True)
class EvaluationReport:
    cells: tuple[EvaluationCell, ...]
    k: int
    warnings: tuple[str, ...] = ()


def relevance_from_ranking(
    ideal: Sequence[str], expected_ids: Collection[str] | None = None
) -> dict[str, float]:
    """Encode an ideal ranking as graded relevance: position p of N gets N-p.

    When ``expected_ids`` is given, the ranking must be a permutation of it.
    """
    if len(ideal) == 0:
        raise ValidationError("ideal ranking is empty")
    seen = set()
    for dataset_id in ideal:
        if dataset_id in seen:
            raise ValidationError(f"duplicate id in ideal ranking: {dataset_id!r}")
        seen.add(dataset_id)
    if expected_ids is not None:
        expected = set(expected_ids)
        missing = sorted(expected - seen)
        unknown = sorted(seen - expected)
        if missing or unknown:
            parts = []
            if missing:
                parts.append(f"missing ids {missing}")
            if unknown:
                parts.append(f"unknown ids {unknown}")
            raise ValidationError(
                "ideal ranking is not a permutation of the catalog: " + "; ".join(parts)
            )
    n = len(ideal)
    return {dataset_id: float(n - p) for p, dataset_id in enumerate(ideal, start=1)}


def _check_inputs(
    relevance: Mapping[str, float], scores: Mapping[str, float], k: int | None
) -> list[str]:
    if set(relevance) != set(scores):
        raise ValidationError("relevance and scores must cover the same dataset ids")
    if any(v < 0 for v in relevance.values()):
        raise ValidationError("relevance values must be non-negative")
    if k is not None and (isinstance(k, bool) or not isinstance(k, int) or k < 1):
        raise ValidationError(f"k must be a positive integer, got {k!r}")
    return sorted(relevance)


def dcg(
    relevance: Mapping[str, float], scores: Mapping[str, float], k: int | None = None
) -> float:
    """Tie-averaged discounted cumulative gain of ``scores`` against ``relevance``."""
    ids = _check_inputs(relevance, scores, k)
    rel = [float(relevance[i]) for i in ids]
    sc = [float(scores[i]) for i in ids]
    return kernels.tie_averaged_dcg(rel, sc, len(ids) if k is None else k)


def ndcg(
    relevance: Mapping[str, float], scores: Mapping[str, float], k: int | None = None
) -> float:
    """NDCG in [0,1]: tie-averaged DCG over the ideal (plain, sorted) DCG.

    Fully tied degenerate inputs can overshoot 1 by one ulp because the two
    DCGs accumulate in different orders; the ratio is clamped to keep the
    documented range.
    """
    ids = _check_inputs(relevance, scores, k)
    rel = [float(relevance[i]) for i in ids]
    if all(v == 0 for v in rel):
        raise UndefinedMetricError("NDCG is undefined for all-zero relevance")
    sc = [float(scores[i]) for i in ids]
    kk = len(ids) if k is None else k
    ideal = kernels.plain_dcg(sorted(rel, reverse=True), kk)
    return min(kernels.tie_averaged_dcg(rel, sc, kk) / ideal, 1.0)


_USAGE_VARIANTS = (("total_usage", UsageMode.TOTAL), ("average_usage", UsageMode.AVERAGE))


def _enumerate_variants(
    method: Method, catalog: Catalog, base: ValuationConfig
) -> list[tuple[str, ValuationConfig, str | None, str | None]]:
    """(variant name, config, usage_mode, utility_source) rows for one method.

    Weighted and simple-average rows vary the usage aggregate under the
    default utility source; the weighted method additionally gets one row
    per non-default utility source. Univariate rows cover each utility
    source, the object count, the creation date, and both usage aggregates.
    """
    sources = catalog.utility_sources()
    default = base.utility_source or catalog.default_utility_source()
    rows: list[tuple[str, ValuationConfig, str | None, str | None]] = []

    if method.kind in ("weighted", "simple_average"):
        for name, mode in _USAGE_VARIANTS:
            cfg = replace(base, usage_mode=mode, utility_source=default)
            rows.append((name, cfg, mode.value, default))
        if method.kind == "weighted":
            for source in sources:
                if source == default:
                    continue
                cfg = replace(base, usage_mode=UsageMode.TOTAL, utility_source=source)
                rows.append((f"utility:{source}", cfg, UsageMode.TOTAL.value, source))
        return rows

    wanted = method.dimension  # None selects every univariate dimension
    if wanted in (None, "utility"):
        for source in sources:
            cfg = replace(base, usage_mode=UsageMode.TOTAL, utility_source=source)
            rows.append((f"utility:{source}", cfg, None, source))
    neutral = replace(base, usage_mode=UsageMode.TOTAL, utility_source=default)
    if wanted in (None, "n_objects"):
        rows.append(("n_objects", neutral, None, None))
    if wanted in (None, "creation_date"):
        rows.append(("creation_date", neutral, None, None))
    if wanted in (None, "usage"):
        for name, mode in _USAGE_VARIANTS:
            cfg = replace(base, usage_mode=mode, utility_source=default)
            rows.append((name, cfg, mode.value, None))
    return rows


def _univariate_dimension(variant: str) -> str:
    if variant.startswith("utility:"):
        return "utility"
    if variant in ("total_usage", "average_usage"):
        return "usage"
    return variant


def _mark_best(cells: Sequence[EvaluationCell]) -> tuple[EvaluationCell, ...]:
    """Flag the maximal NDCG and NDCG@k within each (stakeholder, method)
    group; ties are flagged jointly. Cell order is preserved."""
    best: dict[tuple[str, str], tuple[float, float]] = {}
    for cell in cells:
        key = (cell.stakeholder, cell.method)
        top = best.get(key)
        best[key] = (
            cell.ndcg if top is None else max(top[0], cell.ndcg),
            cell.ndcg_at_k if top is None else max(top[1], cell.ndcg_at_k),
        )
    return tuple(
        replace(
            cell,
            best_ndcg=cell.ndcg == best[(cell.stakeholder, cell.method)][0],
            best_ndcg_at_k=cell.ndcg_at_k == best[(cell.stakeholder, cell.method)][1],
        )
        for cell in cells
    )


def evaluate(
    catalog: Catalog,
    profiles: Sequence[StakeholderProfile],
    *,
    k: int = DEFAULT_K,
    config: ValuationConfig | None = None,
    methods: Sequence[Method] | None = None,
) -> EvaluationReport:
    """Score every (stakeholder, method, variant) ranking against the
    stakeholder's ideal ranking.

    Profiles without an ideal ranking are skipped with a warning. A profile
    whose weights are all zero gets no weighted rows (the method is not
    computable for it) but keeps its simple-average and univariate rows.
    Cells are assembled deterministically: stakeholders by id, then the
    weighted, simple-average, and univariate blocks in that order.
    """
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise ValidationError(f"k must be a positive integer, got {k!r}")
    base = config or ValuationConfig()
    blocks = (
        tuple(methods)
        if methods is not None
        else (WEIGHTED, SIMPLE_AVERAGE, Method("univariate"))
    )
    warnings: list[str] = []
    cells: list[EvaluationCell] = []

    for profile in sorted(profiles, key=lambda p: p.id):
        if profile.ideal_ranking is None:
            warnings.append(f"profile {profile.id!r}: no ideal ranking; skipped")
            continue
        relevance = relevance_from_ranking(profile.ideal_ranking, expected_ids=catalog.ids())

        for method in blocks:
            for variant, cfg, usage_mode, source in _enumerate_variants(method, catalog, base):
                if method.kind == "weighted":
                    weights = profile.weights
                elif method.kind == "simple_average":
                    weights = variant_weights(SIMPLE_AVERAGE)
                else:
                    weights = variant_weights(univariate(_univariate_dimension(variant)))
                try:
                    ranking = rank(catalog, weights, cfg)
                except AllZeroWeightsError:
                    warnings.append(
                        f"profile {profile.id!r}: all-zero weights; weighted rows omitted"
                    )
                    break
                scores = ranking.values()
                cells.append(
                    EvaluationCell(
                        stakeholder=profile.id,
                        method=method.kind,
                        variant=variant,
                        ndcg=ndcg(relevance, scores),
                        ndcg_at_k=ndcg(relevance, scores, k),
                        k=k,
                        usage_mode=usage_mode,
                        utility_source=source,
                    )
                )

    return EvaluationReport(cells=_mark_best(cells), k=k, warnings=tuple(warnings))


def method_display_name(method: str) -> str:
    return _METHOD_NAMES.get(method, method)


def variant_display_name(variant: str) -> str:
    if variant in _VARIANT_NAMES:
        return _VARIANT_NAMES[variant]
    if variant.startswith("utility:"):
        label = variant.split(":", 1)[1]
        if label == AVERAGE_UTILITY_LABEL:
            return "Average Utility"
        return f"Utility ({label})"
    return variant


def report_to_csv(report: EvaluationReport) -> str:
    """Flat CSV form, scores at 4 decimals, best flags as true/false."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(
        ["stakeholder", "method", "variant", "ndcg", "ndcg_at_k", "best_ndcg", "best_ndcg_at_k"]
    )
    for cell in report.cells:
        writer.writerow(
            [
                cell.stakeholder,
                cell.method,
                cell.variant,
                f"{cell.ndcg:.4f}",
                f"{cell.ndcg_at_k:.4f}",
                "true" if cell.best_ndcg else "false",
                "true" if cell.best_ndcg_at_k else "false",
            ]
        )
    return out.getvalue()


def report_to_markdown(report: EvaluationReport) -> str:
    """Markdown table grouped by stakeholder and method block, with the best
    score per group in bold. Repeated group labels are left blank."""
    lines = [
        f"| Stakeholder | Method | Variant | NDCG | NDCG@{report.k} |",
        "| --- | --- | --- | ---: | ---: |",
    ]
    previous: tuple[str, str] | None = None
    for cell in report.cells:
        stakeholder = cell.stakeholder if previous is None or previous[0] != cell.stakeholder else ""
        method = (
            method_display_name(cell.method)
            if previous is None or previous[:2] != (cell.stakeholder, cell.method)
            else ""
        )
        ndcg_text = f"{cell.ndcg:.4f}"
        at_k_text = f"{cell.ndcg_at_k:.4f}"
        if cell.best_ndcg:
            ndcg_text = f"**{ndcg_text}**"
        if cell.best_ndcg_at_k:
            at_k_text = f"**{at_k_text}**"
        lines.append(
            f"| {stakeholder} | {method} | {variant_display_name(cell.variant)} "
            f"| {ndcg_text} | {at_k_text} |"
        )
        previous = (cell.stakeholder, cell.method)
    return "\n".join(lines) + "\n"


def report_to_json(report: EvaluationReport) -> str:
    doc = {"k": report.k, "warnings": list(report.warnings), "cells": [asdict(c) for c in report.cells]}
    return json.dumps(doc, indent=2) + "\n"
