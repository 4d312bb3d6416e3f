"""The HTTP gateway: Catalogue API + uniform Data API + SSE feeds.

One FastAPI app serves governed metadata, raw upstream bytes, and
harmonised/fused pipeline outputs, gated on catalogue approval.
"""

from __future__ import annotations

import asyncio
from dataclasses import dataclass

from fastapi import Body, FastAPI, Query, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse, Response, StreamingResponse

from semflow import errors
from semflow.catalogue.model import User
from semflow.catalogue.rdfio import export_rdf
from semflow.catalogue.seed import seed_demo_catalogue
from semflow.catalogue.store import ACTIONS, CatalogueStore
from semflow.catalogue.vocab import Vocabularies
from semflow.gateway.bindings import BindingStore, Fetcher, SourceBinding
from semflow.gateway.cache import SingleFlightCache
from semflow.gateway.config import GatewayConfig
from semflow.gateway.feeds import FeedHub, sse_frame
from semflow.gateway.pipeline import ExtraFilter, run_pipeline
from semflow.gateway.registry import Registry
from semflow.rdf.ntriples import serialize_ntriples

_ERROR_STATUS = [
    (errors.Forbidden, 403),
    (errors.NotFound, 404),
    (errors.IllegalTransition, 409),
    (errors.SchemaViolation, 422),
    (errors.UnknownVocabularyTerm, 422),
    (errors.IntegrationError, 422),
    (errors.UpstreamUnavailable, 502),
    (errors.PipelineError, 500),
]


class AuthError(Exception):
    def __init__(self, status: int, detail: str):
        self.status = status
        self.detail = detail


@dataclass
class PipelineOutput:
    payload: bytes
    media_type: str
    millis: float | None  # None for raw passthrough


@dataclass
class GatewayState:
    config: GatewayConfig
    store: CatalogueStore
    registry: Registry
    bindings: BindingStore
    cache: SingleFlightCache
    fetcher: Fetcher
    hub: FeedHub


def build_state(config: GatewayConfig, fetcher: Fetcher | None = None) -> GatewayState:
    vocab = Vocabularies.load(config.vocab_dir) if config.vocab_dir else Vocabularies()
    if config.journal_path:
        store = CatalogueStore.open(config.journal_path, vocab)
    else:
        store = CatalogueStore(None, vocab)
    registry = Registry(config.mappings_dir, config.templates_dir,
                        config.pipelines_dir, config.data_dir)
    return GatewayState(
        config=config,
        store=store,
        registry=registry,
        bindings=BindingStore(config.bindings_path),
        cache=SingleFlightCache(),
        fetcher=fetcher or Fetcher(config.data_dir, config.secrets),
        hub=FeedHub(),
    )


def create_app(config: GatewayConfig, fetcher: Fetcher | None = None,
               seed_demo: bool = False) -> FastAPI:
    state = build_state(config, fetcher)
    if seed_demo and not state.store.all_records():
        publishers = {u.user_id: u for u in config.tokens if u.role == "publisher"}
        tmb_users = [u for u in config.tokens if u.role == "tmb"]
        if publishers and tmb_users:
            from semflow.gateway.demo import seed_demo_bindings

            seed_demo_catalogue(state.store, publishers, tmb_users[0])
            seed_demo_bindings(state.store, state.bindings)

    app = FastAPI(title="semflow gateway")
    app.state.semflow = state
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"])

    @app.exception_handler(errors.SemflowError)
    async def semflow_error_handler(_request: Request, exc: errors.SemflowError):
        for klass, status in _ERROR_STATUS:
            if isinstance(exc, klass):
                return JSONResponse(
                    {"error": type(exc).__name__, "detail": str(exc)}, status_code=status)
        return JSONResponse({"error": type(exc).__name__, "detail": str(exc)}, status_code=500)

    @app.exception_handler(AuthError)
    async def auth_error_handler(_request: Request, exc: AuthError):
        return JSONResponse({"error": "AuthError", "detail": exc.detail}, status_code=exc.status)

    def current_user(request: Request) -> User | None:
        header = request.headers.get("authorization", "")
        if not header.lower().startswith("bearer "):
            return None
        return config.user_for_token(header[7:].strip())

    def require_user(request: Request) -> User:
        user = current_user(request)
        if user is None:
            raise AuthError(401, "missing or invalid bearer token")
        return user

    # --- health ---------------------------------------------------------

    @app.get("/healthz")
    def healthz():
        return PlainTextResponse("ok")

    # --- catalogue API ----------------------------------------------------

    @app.get("/catalogue/whoami")
    def whoami(request: Request):
        user = require_user(request)
        return {"userId": user.user_id, "role": user.role}

    @app.get("/catalogue/vocabularies")
    def vocabularies():
        return {
            "status": state.store.vocab.status,
            "dataRequirement": state.store.vocab.data_requirement,
            "sourceType": state.store.vocab.source_type,
        }

    @app.get("/catalogue/records")
    def list_records(
        text: str | None = None,
        status: str | None = None,
        dataRequirement: str | None = None,
        sourceType: str | None = None,
        caseStudy: str | None = None,
        format: str | None = None,
    ):
        if format == "ntriples":
            return PlainTextResponse(
                serialize_ntriples(export_rdf(state.store)), media_type="application/n-triples")
        records = state.store.search(
            text=text, status=status, data_requirement=dataRequirement,
            source_type=sourceType, case_study=caseStudy, dist_format=format)
        return [r.to_json() for r in records]

    @app.post("/catalogue/records", status_code=201)
    def create_record(request: Request, draft: dict = Body(...)):
        user = require_user(request)
        return state.store.create_record(user, draft).to_json()

    @app.get("/catalogue/records/{record_id}")
    def get_record(record_id: str, format: str | None = None):
        record = state.store.get(record_id)
        if format == "ntriples":
            return PlainTextResponse(
                serialize_ntriples(export_rdf(state.store, record.id)),
                media_type="application/n-triples")
        return record.to_json()

    @app.patch("/catalogue/records/{record_id}")
    def patch_record(record_id: str, request: Request, patch: dict = Body(...)):
        user = require_user(request)
        return state.store.update_record(user, record_id, patch).to_json()

    @app.post("/catalogue/records/{record_id}/transition")
    def transition_record(record_id: str, request: Request, body: dict = Body(...)):
        user = require_user(request)
        action = body.get("action")
        if action not in ACTIONS:
            raise errors.SchemaViolation(f"unknown transition action {action!r}", ["action"])
        return state.store.transition(user, record_id, action).to_json()

    # --- admin -----------------------------------------------------------

    @app.post("/admin/integrations")
    def register_integration(request: Request, body: dict = Body(...)):
        user = require_user(request)
        if user.role != "tmb":
            raise errors.Forbidden("only the data management board registers integrations")
        binding = SourceBinding.from_json(body)
        try:
            record = state.store.get(binding.record_id)
        except errors.NotFound as exc:
            raise errors.IntegrationError(str(exc)) from exc
        if (binding.cache_ttl_seconds and record.refresh_period_seconds is not None
                and binding.cache_ttl_seconds > record.refresh_period_seconds):
            raise errors.IntegrationError(
                f"cacheTtlSeconds {binding.cache_ttl_seconds} exceeds the record's "
                f"refreshPeriodSeconds {record.refresh_period_seconds}")
        if binding.pipeline_ref is not None:
            state.registry.pipeline(binding.pipeline_ref)  # raises NotFound -> 404
        state.bindings.put(binding)
        return binding.to_json()

    # --- data API -----------------------------------------------------------

    def _extra_filters(binding: SourceBinding, from_: str | None, to: str | None,
                       bbox: str | None) -> list[ExtraFilter]:
        filters: list[ExtraFilter] = []
        if from_ is not None or to is not None:
            temporal = binding.param_map.get("temporal")
            if not temporal:
                raise errors.IntegrationError(
                    "this integration does not support from/to filtering")
            args = {"predicate": temporal["predicate"]}
            if from_ is not None:
                args["from"] = from_
            if to is not None:
                args["to"] = to
            filters.append(ExtraFilter("filterTemporal", args))
        if bbox is not None:
            spatial = binding.param_map.get("bbox")
            if not spatial:
                raise errors.IntegrationError("this integration does not support bbox filtering")
            filters.append(ExtraFilter("filterBBox", {
                "latPredicate": spatial["latPredicate"],
                "lonPredicate": spatial["lonPredicate"],
                "bbox": bbox,
            }))
        return filters

    def _produce(record_id: str, binding: SourceBinding, dist,
                 filters: list[ExtraFilter], cache_key: object) -> PipelineOutput:
        try:
            upstream, upstream_media = state.fetcher(binding.fetch)
        except errors.UpstreamUnavailable:
            stale = state.cache.peek_stale(cache_key)
            if stale is not None:
                return stale  # type: ignore[return-value]
            raise

        if dist is None or dist.semantics == "raw":
            media = dist.format if dist is not None else upstream_media
            return PipelineOutput(upstream, media, None)

        tag, _, ref = dist.semantics.partition(":")
        if tag == "harmonised":
            if binding.pipeline_ref is None:
                raise errors.PipelineError("integration", "binding has no pipelineRef")
            spec = state.registry.pipeline(binding.pipeline_ref)
            result = run_pipeline(spec, {"upstream": upstream}, state.registry,
                                  extra_filters=filters, lower_override=ref)
        elif tag == "fused":
            spec = state.registry.pipeline(ref)
            result = run_pipeline(spec, {"upstream": upstream}, state.registry,
                                  extra_filters=filters)
        else:
            raise errors.PipelineError("integration", f"unknown semantics tag {dist.semantics!r}")

        if result.output is None:
            raise errors.PipelineError(spec.id, "pipeline has no lower step")
        media = "application/json" if result.output.output_format == "json" else "text/csv"
        state.hub.publish(f"data.{record_id}", result.output.text)
        return PipelineOutput(result.output.bytes, media, result.millis)

    @app.get("/data/{record_id}")
    def data(record_id: str, request: Request,
             distribution: str | None = None,
             from_: str | None = Query(None, alias="from"),
             to: str | None = None,
             bbox: str | None = None):
        require_user(request)
        record = state.store.get(record_id)
        if record.status != "approved":
            raise errors.IllegalTransition(
                f"record {record_id} is {record.status}, not approved")
        binding = state.bindings.get(record_id)
        if binding is None:
            raise errors.NotFound(f"no integration registered for record {record_id}")
        dist = None
        if distribution is not None:
            matches = [d for d in record.distributions if d.id == distribution]
            if not matches:
                raise errors.NotFound(f"record has no distribution {distribution!r}")
            dist = matches[0]

        filters = _extra_filters(binding, from_, to, bbox)
        cache_key = (record_id, distribution, from_, to, bbox)
        output, _cached = state.cache.get_or_compute(
            cache_key, binding.cache_ttl_seconds,
            lambda: _produce(record_id, binding, dist, filters, cache_key))
        headers = {}
        if output.millis is not None:
            headers["X-Pipeline-Millis"] = f"{output.millis:.3f}"
        return Response(content=output.payload, media_type=output.media_type, headers=headers)

    # --- feeds ------------------------------------------------------------

    @app.get("/feeds/{record_id}")
    async def feed(record_id: str, request: Request):
        require_user(request)
        record = state.store.get(record_id)
        if record.status != "approved":
            raise errors.IllegalTransition(
                f"record {record_id} is {record.status}, not approved")
        loop = asyncio.get_running_loop()
        sub = state.hub.subscribe(f"data.{record_id}", loop)

        async def stream():
            try:
                while True:
                    try:
                        payload = await asyncio.wait_for(sub.queue.get(), timeout=1.0)
                        yield sse_frame(payload)
                    except asyncio.TimeoutError:
                        yield ": keepalive\n\n"
            finally:
                state.hub.unsubscribe(sub)

        return StreamingResponse(stream(), media_type="text/event-stream")

    return app
