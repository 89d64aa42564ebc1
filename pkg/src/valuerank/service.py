"""HTTP API over a catalog loaded once at startup.

The catalog is immutable for the lifetime of the app, so every endpoint is
a pure function of the request body and identical requests get identical
responses. Domain errors map to 422 with a stable machine-readable
``error`` code plus a human ``message``.
"""

from __future__ import annotations

import os
from datetime import date
from pathlib import Path
from typing import Literal

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from valuerank.catalog import Catalog
from valuerank.errors import (
    AllZeroWeightsError,
    MissingDimensionError,
    UndefinedMetricError,
    ValidationError,
)
from valuerank.evaluation import DEFAULT_K, ndcg, relevance_from_ranking
from valuerank.valuation import ValuationConfig, WeightVector, rank_explained

__all__ = ["create_app", "resolve_ui_dir"]

UI_DIR_ENV = "VALUERANK_UI_DIR"

_ERROR_CODES = {
    AllZeroWeightsError: "all_zero_weights",
    MissingDimensionError: "missing_dimension",
    UndefinedMetricError: "undefined_metric",
    ValidationError: "validation_error",
}


class WeightsBody(BaseModel):
    utility: int = Field(ge=0, le=10)
    creation_date: int = Field(ge=0, le=10)
    n_objects: int = Field(ge=0, le=10)
    usage: int = Field(ge=0, le=10)


class RankRequest(BaseModel):
    weights: WeightsBody
    usage_mode: Literal["total", "average"] = "total"
    utility_source: str | None = None
    decline_rate: float | None = Field(default=None, gt=0)
    as_of: date | None = None


class EvaluateRequest(RankRequest):
    ideal_ranking: list[str]
    k: int = Field(default=DEFAULT_K, ge=1)


def resolve_ui_dir(explicit: str | None = None) -> Path | None:
    """Find built web UI assets: explicit flag, env var, or ./frontend/dist."""
    candidates = [explicit, os.environ.get(UI_DIR_ENV), os.path.join("frontend", "dist")]
    for candidate in candidates:
        if candidate and Path(candidate).is_dir():
            return Path(candidate)
    return None


def _config_from(request: RankRequest, catalog: Catalog) -> ValuationConfig:
    if request.utility_source is not None and request.utility_source not in catalog.utility_sources():
        raise ValidationError(f"unknown utility source {request.utility_source!r}")
    kwargs = {
        "usage_mode": request.usage_mode,
        "utility_source": request.utility_source,
        "as_of_date": request.as_of or catalog.as_of_date,
    }
    if request.decline_rate is not None:
        kwargs["decline_rate"] = request.decline_rate
    return ValuationConfig(**kwargs)


def create_app(catalog: Catalog, ui_dir: Path | None = None) -> FastAPI:
    """Build the app around one immutable catalog."""
    app = FastAPI(title="valuerank", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origin_regex=r"http://(localhost|127\.0\.0\.1)(:\d+)?",
        allow_methods=["*"],
        allow_headers=["*"],
    )

    names = {r.id: r.name for r in catalog.datasets}

    @app.exception_handler(RequestValidationError)
    async def on_body_error(request: Request, exc: RequestValidationError) -> JSONResponse:
        first = exc.errors()[0] if exc.errors() else {}
        location = ".".join(str(part) for part in first.get("loc", ()))
        message = f"{location}: {first.get('msg', 'invalid request body')}"
        return JSONResponse(
            status_code=422, content={"error": "validation_error", "message": message}
        )

    for exc_type, code in _ERROR_CODES.items():

        def handler_for(error_code: str):
            async def handler(request: Request, exc: Exception) -> JSONResponse:
                return JSONResponse(
                    status_code=422, content={"error": error_code, "message": str(exc)}
                )

            return handler

        app.add_exception_handler(exc_type, handler_for(code))

    @app.get("/api/health")
    async def health() -> dict:
        return {"status": "ok"}

    @app.get("/api/catalog")
    async def catalog_summary() -> dict:
        return {
            "count": len(catalog),
            "as_of_date": catalog.as_of_date.isoformat(),
            "utility_sources": list(catalog.utility_sources()),
            "default_utility_source": catalog.default_utility_source(),
            "datasets": [
                {
                    "id": r.id,
                    "name": r.name,
                    "creation_date": r.creation_date.isoformat(),
                    "n_spatial_objects": r.n_spatial_objects,
                    "usage": [
                        {"month": f"{e.month.year:04d}-{e.month.month:02d}", "count": e.count}
                        for e in r.usage.entries
                    ],
                    "utilities": dict(sorted(r.utilities.items())),
                }
                for r in catalog.datasets
            ],
        }

    @app.post("/api/rank")
    async def rank_endpoint(request: RankRequest) -> dict:
        weights = WeightVector(**request.weights.model_dump())
        explanation = rank_explained(catalog, weights, _config_from(request, catalog))
        return {
            "weights": explanation.weights.as_dict(),
            "ranked": [
                {
                    "dataset_id": item.dataset_id,
                    "name": names[item.dataset_id],
                    "data_value": item.value,
                    "dimension_vector": explanation.dimensions[item.dataset_id].as_dict(),
                }
                for item in explanation.ranking
            ],
        }

    @app.post("/api/evaluate")
    async def evaluate_endpoint(request: EvaluateRequest) -> dict:
        weights = WeightVector(**request.weights.model_dump())
        relevance = relevance_from_ranking(request.ideal_ranking, expected_ids=catalog.ids())
        explanation = rank_explained(catalog, weights, _config_from(request, catalog))
        scores = explanation.ranking.values()
        return {
            "ndcg": ndcg(relevance, scores),
            "ndcg_at_k": ndcg(relevance, scores, request.k),
            "k": request.k,
        }

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
