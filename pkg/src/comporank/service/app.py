"""Stateless HTTP facade over the core modules.

Handlers only call pure functions; the single piece of shared state is the
catalog loaded at startup, which is immutable. Report bodies are rendered
through the same canonical serializer the CLI uses, so responses are
byte-identical to CLI output for identical inputs.
"""

from __future__ import annotations

import json

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from ..catalog import Catalog, catalog_to_dict, load_catalog, parse_catalog
from ..errors import ComporankError
from ..jsonfmt import dumps_canonical
from ..pipeline import (
    NeedsSpec,
    report_to_dict,
    run_pipeline,
    sensitivity_sweep,
    sweep_to_dict,
)
from ..quality_model import check_consistency, parse_criteria_config, resolve_model
from ..scoring import ScoringParams
from .schemas import RankRequest, SensitivityRequest, WeightsRequest


def create_app(catalog: Catalog | None = None, catalog_path=None, ui_dir=None) -> FastAPI:
    if catalog is None and catalog_path is not None:
        catalog = load_catalog(catalog_path)

    app = FastAPI(title="comporank", docs_url="/api/docs", openapi_url="/api/openapi.json")
    app.state.catalog = catalog

    @app.exception_handler(RequestValidationError)
    async def bad_request(request: Request, exc: RequestValidationError):
        detail = [
            {"loc": [str(p) for p in err.get("loc", ())],
             "msg": str(err.get("msg", "")),
             "type": str(err.get("type", ""))}
            for err in exc.errors()
        ]
        return JSONResponse(status_code=400,
                            content={"error": "bad_request", "detail": detail})

    @app.exception_handler(ComporankError)
    async def domain_error(request: Request, exc: ComporankError):
        return JSONResponse(status_code=422, content=exc.payload())

    @app.post("/api/weights")
    def weights(body: WeightsRequest) -> Response:
        tree, matrices = parse_criteria_config(body.criteria.model_dump(exclude_none=True))
        resolved = resolve_model(tree, matrices)
        consistency = {
            node_id: {"lambda_max": wv.lambda_max, "cr": wv.consistency_ratio}
            for node_id, wv in resolved.nodes.items()
        }
        failed = [
            node_id for node_id, wv in resolved.nodes.items()
            if not check_consistency(wv, body.cr_threshold).accepted
        ]
        if failed:
            return JSONResponse(status_code=422, content={
                "error": "inconsistent_matrix",
                "detail": f"consistency ratio above {body.cr_threshold} "
                          f"for node(s): {', '.join(failed)}",
                "failed": failed,
                "consistency": consistency,
            })
        payload = {"leaves": dict(resolved.leaf_weights), "consistency": consistency}
        return Response(dumps_canonical(payload), media_type="application/json")

    @app.post("/api/rank")
    def rank_candidates(body: RankRequest) -> Response:
        report = run_pipeline(_catalog_for(app, body), _needs_from(body))
        return Response(dumps_canonical(report_to_dict(report)), media_type="application/json")

    @app.post("/api/sensitivity")
    def sensitivity(body: SensitivityRequest) -> Response:
        sweep = sensitivity_sweep(_catalog_for(app, body), _needs_from(body), body.alphas)
        return Response(dumps_canonical(sweep_to_dict(sweep)), media_type="application/json")

    @app.get("/api/catalog")
    def catalog_echo() -> Response:
        if app.state.catalog is None:
            return JSONResponse(status_code=404,
                                content={"error": "no_catalog", "detail": "no catalog loaded"})
        return Response(json.dumps(catalog_to_dict(app.state.catalog)),
                        media_type="application/json")

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app


def _catalog_for(app: FastAPI, body: RankRequest) -> Catalog:
    if body.catalog is not None:
        return parse_catalog(body.catalog.model_dump(exclude_none=True))
    if app.state.catalog is None:
        raise ComporankError("no catalog loaded on the server and none supplied inline")
    return app.state.catalog


def _needs_from(body: RankRequest) -> NeedsSpec:
    tree, matrices = parse_criteria_config(body.criteria.model_dump(exclude_none=True))
    params = ScoringParams(
        alpha=body.alpha,
        cost_cap=body.cost_cap,
        time_cap=body.time_cap,
        satisfaction_threshold=body.threshold,
    )
    return NeedsSpec(
        required_services=frozenset(body.required_services),
        tree=tree,
        matrices=matrices,
        params=params,
        cr_threshold=body.cr_threshold,
    )
