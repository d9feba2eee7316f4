"""Process boundary: configuration, wiring, persistence, and the JSON API.

Persistence is event-sourced: the single append-only log in data_dir is both
the research telemetry stream and the source of truth. Boot replays it to
restore sessions, transcripts, and survey state, so stopping and restarting
the service is observationally transparent.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field
from datetime import datetime
from decimal import Decimal
from pathlib import Path
from typing import Callable

from fastapi import Body, FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, Response
from starlette.exceptions import HTTPException as StarletteHTTPException

from . import analytics, errors
from .analytics import EventLog, RatingDistribution, SurveyResponse, SurveyStore
from .assistant import AssistantGateway, ChatExchange, ProviderConfig, Transcript, make_provider
from .catalog import Basis, Product, ProductCatalog, find_products, load_catalog, product_doc
from .compare import ComparisonTable, build_comparison
from .errors import BadRequest, ConfigError, HealthyChoiceError
from .scenario import Scenario, ScenarioSet, load_scenarios
from .session import (
    InitialDecision,
    Session,
    SessionManager,
    SuitabilityRating,
    Summary,
)

logger = logging.getLogger(__name__)

# exception type -> (stable API code, transport status); exactly one entry
# per domain error, checked by an exhaustiveness test
ERROR_MAP: dict[type[HealthyChoiceError], tuple[str, int]] = {
    errors.ParseError: ("parse_error", 400),
    errors.DuplicateProductId: ("duplicate_product_id", 400),
    errors.EmptyCatalog: ("empty_catalog", 400),
    errors.InvalidNutrient: ("invalid_nutrient", 400),
    errors.UnknownProduct: ("unknown_product", 404),
    errors.UnknownProductReference: ("unknown_product_reference", 400),
    errors.DuplicateScenarioId: ("duplicate_scenario_id", 400),
    errors.EmptySpan: ("empty_span", 400),
    errors.OutOfBounds: ("out_of_bounds", 400),
    errors.InvertedSpan: ("inverted_span", 400),
    errors.UnknownScenario: ("unknown_scenario", 404),
    errors.UnknownSession: ("unknown_session", 404),
    errors.SessionCompleted: ("session_completed", 409),
    errors.DuplicateHighlight: ("duplicate_highlight", 409),
    errors.IndexOutOfRange: ("index_out_of_range", 404),
    errors.IneligibleProduct: ("ineligible_product", 409),
    errors.NotInSelectedSet: ("not_in_selected_set", 409),
    errors.BlankJustification: ("blank_justification", 400),
    errors.MissingRecommendation: ("missing_recommendation", 409),
    errors.MissingJustification: ("missing_justification", 409),
    errors.EmptyProductList: ("empty_product_list", 400),
    errors.MixedServingUnits: ("mixed_serving_units", 409),
    errors.EmptyQuestion: ("empty_question", 400),
    errors.BusyAsking: ("busy_asking", 409),
    errors.ProviderUnavailable: ("provider_unavailable", 503),
    errors.ProviderRejected: ("provider_rejected", 502),
    errors.StorageFailure: ("storage_failure", 500),
    errors.EmptyDistribution: ("empty_distribution", 409),
    errors.RatingOutOfRange: ("rating_out_of_range", 400),
    errors.ConfigError: ("config_error", 500),
    errors.BadRequest: ("bad_request", 400),
}


@dataclass(frozen=True)
class ApiError:
    code: str
    message: str
    status: int


def to_api_error(exc: HealthyChoiceError) -> ApiError:
    code, status = ERROR_MAP[type(exc)]
    return ApiError(code=code, message=str(exc), status=status)


@dataclass
class ServiceConfig:
    catalog_path: Path
    scenarios_path: Path
    data_dir: Path
    listen_port: int = 8000
    provider: ProviderConfig = field(default_factory=ProviderConfig)
    log_verbosity: str = "info"
    # injection points for deterministic harnesses; None means wall clock / uuid
    clock: Callable[[], datetime] | None = None
    id_factory: Callable[[], str] | None = None


class AppState:
    """Everything the route handlers touch, restored from the log at boot."""

    def __init__(self, config: ServiceConfig):
        if not 1 <= config.listen_port <= 65535:
            raise ConfigError(f"listen_port {config.listen_port} outside [1, 65535]")
        for label, path in (("catalog", config.catalog_path), ("scenarios", config.scenarios_path)):
            if not Path(path).is_file():
                raise ConfigError(f"{label} file {path} does not exist")
        self.config = config
        self.catalog: ProductCatalog = load_catalog(Path(config.catalog_path).read_bytes())
        self.scenarios: ScenarioSet = load_scenarios(
            Path(config.scenarios_path).read_bytes(), self.catalog
        )
        data_dir = Path(config.data_dir)
        data_dir.mkdir(parents=True, exist_ok=True)
        self.log = EventLog(data_dir / "events.jsonl", clock=config.clock)
        self.provider = make_provider(config.provider)
        self.sessions = SessionManager(
            self.scenarios, self.catalog, self.log, id_factory=config.id_factory
        )
        self.assistant = AssistantGateway(
            self.catalog,
            self.scenarios,
            self.log,
            self.provider,
            system_preamble=config.provider.system_preamble,
        )
        self.surveys = SurveyStore(self.log)
        self._replay()

    def _replay(self) -> None:
        for record in self.log.events():
            if record.kind in ("ai_question", "ai_cleared"):
                self.assistant.apply_event(record)
            elif record.kind == "survey_submitted":
                self.surveys.apply_event(record)
            else:
                self.sessions.apply_event(record)

    def healthcheck(self) -> dict:
        doc = {
            "status": "ok",
            "catalog_products": len(self.catalog),
            "scenarios": len(self.scenarios),
            "provider": self.config.provider.kind,
        }
        if self.config.provider.kind == "remote" and not os.environ.get(
            self.config.provider.api_key_env
        ):
            doc["status"] = "degraded"
            doc["reason"] = (
                f"provider credential missing from {self.config.provider.api_key_env}"
            )
        return doc

    def close(self) -> None:
        self.log.close()


# --- document shaping ---------------------------------------------------------

def _iso(ts: datetime | None) -> str | None:
    return ts.isoformat() if ts is not None else None


def _num(value: Decimal | None) -> float | None:
    return float(value) if value is not None else None


def _jsonable(doc):
    if isinstance(doc, Decimal):
        return float(doc)
    if isinstance(doc, dict):
        return {k: _jsonable(v) for k, v in doc.items()}
    if isinstance(doc, (list, tuple)):
        return [_jsonable(v) for v in doc]
    return doc


def session_doc(session: Session) -> dict:
    return {
        "id": session.id,
        "user_ref": session.user_ref,
        "scenario_id": session.scenario_id,
        "phase": session.phase.value,
        "highlights": [
            {"start": h.start, "end": h.end, "extracted": h.extracted}
            for h in session.highlights
        ],
        "assessments": {
            pid: {
                "product_id": a.product_id,
                "rating": a.rating.value,
                "decision": a.decision.value,
                "at": _iso(a.at),
            }
            for pid, a in session.assessments.items()
        },
        "selected_product_ids": session.selected_items(),
        "recommendation": session.recommendation,
        "justification": session.justification,
        "created_at": _iso(session.created_at),
        "finalized_at": _iso(session.finalized_at),
    }


def scenario_doc(scenario: Scenario) -> dict:
    return {
        "id": scenario.id,
        "title": scenario.title,
        "narrative": scenario.narrative,
        "client_profile": [{"key": k, "value": v} for k, v in scenario.client_profile],
        "eligible_product_ids": list(scenario.eligible_product_ids),
        "difficulty": scenario.difficulty,
    }


def table_doc(table: ComparisonTable) -> dict:
    return {
        "product_ids": list(table.product_ids),
        "basis": table.basis.value,
        "rows": [
            {
                "key": row.key,
                "unit": row.unit,
                "values": [_num(v) for v in row.values],
                "min_marks": list(row.min_marks),
                "max_marks": list(row.max_marks),
            }
            for row in table.rows
        ],
    }


def exchange_doc(exchange: ChatExchange) -> dict:
    return {
        "question": exchange.question,
        "answer": exchange.answer,
        "provider_id": exchange.provider_id,
        "at": _iso(exchange.at),
        "context_digest": exchange.context_digest,
    }


def transcript_doc(transcript: Transcript) -> dict:
    return {
        "session_id": transcript.session_id,
        "exchanges": [exchange_doc(e) for e in transcript.exchanges],
    }


def summary_doc(summary: Summary) -> dict:
    return {
        "highlights": [
            {"start": h.start, "end": h.end, "extracted": h.extracted}
            for h in summary.highlights
        ],
        "recommendation_product": _jsonable(product_doc(summary.recommendation_product)),
        "justification": summary.justification,
    }


def distribution_doc(dist: RatingDistribution) -> dict:
    doc: dict = {"counts": {str(v): c for v, c in sorted(dist.counts.items())}, "n": dist.n}
    if dist.n > 0:
        stats = analytics.descriptive_stats(dist)
        doc["stats"] = {
            "mean": _num(stats.mean),
            "median": _num(stats.median),
            "modes": list(stats.modes),
            "n": stats.n,
        }
        doc["percentages"] = {
            str(v): _num(p) for v, p in analytics.distribution_percentages(dist).items()
        }
    else:
        doc["stats"] = None
        doc["percentages"] = {}
    return doc


# --- request parsing -----------------------------------------------------------

def _require(body: dict, name: str, kind: type, optional: bool = False):
    if name not in body or body[name] is None:
        if optional:
            return None
        raise BadRequest(f"missing field {name!r}")
    value = body[name]
    if kind is int and isinstance(value, bool):
        raise BadRequest(f"field {name!r} must be an integer")
    if not isinstance(value, kind):
        raise BadRequest(f"field {name!r} must be {kind.__name__}")
    return value


def _parse_rating(raw: str) -> SuitabilityRating:
    try:
        return SuitabilityRating(raw)
    except ValueError:
        valid = ", ".join(r.value for r in SuitabilityRating)
        raise BadRequest(f"rating must be one of: {valid}") from None


def _parse_decision(raw: str) -> InitialDecision:
    try:
        return InitialDecision(raw)
    except ValueError:
        valid = ", ".join(d.value for d in InitialDecision)
        raise BadRequest(f"decision must be one of: {valid}") from None


def _parse_basis(raw: str | None) -> Basis:
    if raw is None:
        return Basis.PER_SERVING
    try:
        return Basis(raw)
    except ValueError:
        valid = ", ".join(b.value for b in Basis)
        raise BadRequest(f"basis must be one of: {valid}") from None


# --- app ------------------------------------------------------------------------

def create_app(config: ServiceConfig) -> FastAPI:
    """Load fixtures, replay the event log, and expose the routing table."""
    state = AppState(config)
    app = FastAPI(title="healthychoice", openapi_url=None, docs_url=None, redoc_url=None)
    app.state.hc = state

    @app.exception_handler(HealthyChoiceError)
    async def _domain_error(request: Request, exc: HealthyChoiceError):
        api_error = to_api_error(exc)
        return JSONResponse(
            status_code=api_error.status,
            content={"code": api_error.code, "message": api_error.message},
        )

    @app.exception_handler(RequestValidationError)
    async def _validation_error(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={"code": "bad_request", "message": "request body must be a JSON object"},
        )

    @app.exception_handler(StarletteHTTPException)
    async def _http_error(request: Request, exc: StarletteHTTPException):
        code = "not_found" if exc.status_code in (404, 405) else "http_error"
        status = 404 if exc.status_code == 405 else exc.status_code
        return JSONResponse(status_code=status, content={"code": code, "message": str(exc.detail)})

    @app.get("/healthz")
    def healthz():
        return state.healthcheck()

    # --- scenarios and products ---

    @app.get("/api/scenarios")
    def list_scenarios():
        return {"scenarios": [scenario_doc(s) for s in state.scenarios]}

    @app.get("/api/scenarios/{scenario_id}")
    def get_scenario(scenario_id: str):
        return scenario_doc(state.scenarios.get(scenario_id))

    @app.get("/api/products")
    def list_products(category: str | None = None, q: str | None = None):
        found = find_products(state.catalog, category=category, keyword=q)
        return {"products": [_jsonable(product_doc(p)) for p in found]}

    @app.get("/api/products/{product_id}")
    def get_product(product_id: str, session_id: str | None = None):
        product = state.catalog.get(product_id)
        if session_id is not None:
            state.sessions.note_product_viewed(session_id, product_id)
        return _jsonable(product_doc(product))

    # --- sessions ---

    @app.post("/api/sessions", status_code=201)
    def create_session(body: dict = Body(...)):
        user_ref = _require(body, "user_ref", str)
        scenario_id = _require(body, "scenario_id", str)
        session = state.sessions.start_session(user_ref, scenario_id)
        return session_doc(session)

    @app.get("/api/sessions/{session_id}")
    def get_session(session_id: str):
        return session_doc(state.sessions.get(session_id))

    @app.post("/api/sessions/{session_id}/highlights", status_code=201)
    def add_highlight(session_id: str, body: dict = Body(...)):
        start = _require(body, "start", int)
        end = _require(body, "end", int)
        return session_doc(state.sessions.add_highlight(session_id, start, end))

    @app.delete("/api/sessions/{session_id}/highlights/{index}")
    def remove_highlight(session_id: str, index: int):
        return session_doc(state.sessions.remove_highlight(session_id, index))

    @app.post("/api/sessions/{session_id}/assessments")
    def record_assessment(session_id: str, body: dict = Body(...)):
        product_id = _require(body, "product_id", str)
        rating = _parse_rating(_require(body, "rating", str))
        decision = _parse_decision(_require(body, "decision", str))
        return session_doc(
            state.sessions.record_assessment(session_id, product_id, rating, decision)
        )

    @app.get("/api/sessions/{session_id}/selected")
    def selected_items(session_id: str):
        return {"product_ids": state.sessions.selected_items(session_id)}

    @app.post("/api/sessions/{session_id}/compare")
    def compare(session_id: str, body: dict = Body(...)):
        ids = _require(body, "product_ids", list)
        if not all(isinstance(v, str) for v in ids):
            raise BadRequest("product_ids must be a list of strings")
        basis = _parse_basis(_require(body, "basis", str, optional=True))
        state.sessions.get(session_id)
        products = [state.catalog.get(pid) for pid in ids]
        table = build_comparison(products, basis)
        state.sessions.note_comparison_built(session_id, ids, basis.value)
        return table_doc(table)

    # --- assistant ---

    @app.post("/api/sessions/{session_id}/ask")
    def ask(session_id: str, body: dict = Body(...)):
        question = _require(body, "question", str)
        focus = _require(body, "focus_product_id", str, optional=True)
        session = state.sessions.get(session_id)
        exchange = state.assistant.ask(session, question, focus_product_id=focus)
        return exchange_doc(exchange)

    @app.get("/api/sessions/{session_id}/chat")
    def get_chat(session_id: str):
        state.sessions.get(session_id)
        return transcript_doc(state.assistant.transcript(session_id))

    @app.delete("/api/sessions/{session_id}/chat")
    def clear_chat(session_id: str):
        session = state.sessions.get(session_id)
        return transcript_doc(state.assistant.clear_records(session))

    # --- recommendation and completion ---

    @app.post("/api/sessions/{session_id}/recommendation")
    def set_recommendation(session_id: str, body: dict = Body(...)):
        product_id = _require(body, "product_id", str)
        return session_doc(state.sessions.set_recommendation(session_id, product_id))

    @app.post("/api/sessions/{session_id}/justification")
    def submit_justification(session_id: str, body: dict = Body(...)):
        text = _require(body, "text", str)
        return session_doc(state.sessions.submit_justification(session_id, text))

    @app.post("/api/sessions/{session_id}/finalize")
    def finalize(session_id: str):
        return session_doc(state.sessions.finalize(session_id))

    @app.get("/api/sessions/{session_id}/summary")
    def summary(session_id: str):
        return summary_doc(state.sessions.summary_view(session_id))

    # --- surveys and analytics ---

    @app.post("/api/surveys", status_code=201)
    def submit_survey(body: dict = Body(...)):
        response = SurveyResponse(
            participant_ref=_require(body, "participant_ref", str),
            usefulness=_require(body, "usefulness", int),
            ease=_require(body, "ease", int),
            feedback=_require(body, "feedback", str, optional=True),
        )
        state.surveys.ingest(response)
        return {"status": "recorded"}

    @app.get("/api/admin/analytics")
    def admin_analytics():
        return {
            "usefulness": distribution_doc(state.surveys.usefulness),
            "ease": distribution_doc(state.surveys.ease),
            "responses": len(state.surveys.responses),
        }

    @app.get("/api/admin/export.csv")
    def admin_export():
        return Response(content=state.surveys.export_csv(), media_type="text/csv")

    return app
