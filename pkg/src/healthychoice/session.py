"""One learner's pass through one scenario.

Every mutation is expressed as an event: the manager validates the call,
appends the event to the log, then folds it into the session through
Session.apply. Replaying a session's events from an empty session therefore
reproduces its state by construction, and the event log is the persistence
layer.

Phase records the furthest point reached (forethought -> performance ->
self-reflection -> completed); navigating back never regresses it.
"""

from __future__ import annotations

import threading
import uuid
from collections import defaultdict
from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
from typing import Callable

from .analytics import EventLog, EventRecord
from .catalog import Product, ProductCatalog
from .errors import (
    BlankJustification,
    DuplicateHighlight,
    IndexOutOfRange,
    IneligibleProduct,
    MissingJustification,
    MissingRecommendation,
    NotInSelectedSet,
    SessionCompleted,
    UnknownSession,
)
from .scenario import HighlightSpan, Scenario, ScenarioSet, validate_span


class Phase(str, Enum):
    FORETHOUGHT = "forethought"
    PERFORMANCE = "performance"
    SELF_REFLECTION = "self_reflection"
    COMPLETED = "completed"


_PHASE_RANK = {
    Phase.FORETHOUGHT: 0,
    Phase.PERFORMANCE: 1,
    Phase.SELF_REFLECTION: 2,
    Phase.COMPLETED: 3,
}


class SuitabilityRating(str, Enum):
    NOT_APPROPRIATE = "not_appropriate"
    APPROPRIATE = "appropriate"
    HIGHLY_APPROPRIATE = "highly_appropriate"
    NOT_SURE = "not_sure"


class InitialDecision(str, Enum):
    SELECT = "select"
    NOT_SELECT = "not_select"


@dataclass(frozen=True)
class Assessment:
    product_id: str
    rating: SuitabilityRating
    decision: InitialDecision
    at: datetime


@dataclass
class Session:
    id: str
    user_ref: str
    scenario_id: str
    created_at: datetime
    phase: Phase = Phase.FORETHOUGHT
    highlights: list[HighlightSpan] = field(default_factory=list)
    assessments: dict[str, Assessment] = field(default_factory=dict)
    recommendation: str | None = None
    justification: str | None = None
    finalized_at: datetime | None = None
    # rank of each product's first-ever Select, for selected_items ordering
    first_selected: dict[str, int] = field(default_factory=dict)

    @property
    def completed(self) -> bool:
        return self.phase is Phase.COMPLETED

    def selected_items(self) -> list[str]:
        """Product ids whose current decision is Select, in first-selection order."""
        chosen = [
            (self.first_selected[pid], pid)
            for pid, assessment in self.assessments.items()
            if assessment.decision is InitialDecision.SELECT
        ]
        return [pid for _, pid in sorted(chosen)]

    def _advance(self, target: Phase) -> None:
        if _PHASE_RANK[target] > _PHASE_RANK[self.phase]:
            self.phase = target

    def apply(self, kind: str, payload: dict, at: datetime) -> None:
        """Fold one event into the session. Events are facts: no validation here."""
        if kind == "highlight_added":
            self.highlights.append(
                HighlightSpan(payload["start"], payload["end"], payload["extracted"])
            )
        elif kind == "highlight_removed":
            del self.highlights[payload["index"]]
        elif kind == "assessment_recorded":
            product_id = payload["product_id"]
            decision = InitialDecision(payload["decision"])
            self.assessments[product_id] = Assessment(
                product_id=product_id,
                rating=SuitabilityRating(payload["rating"]),
                decision=decision,
                at=at,
            )
            if decision is InitialDecision.SELECT and product_id not in self.first_selected:
                self.first_selected[product_id] = len(self.first_selected)
            self._advance(Phase.PERFORMANCE)
        elif kind == "recommendation_set":
            self.recommendation = payload["product_id"]
            if self.recommendation is not None:
                self._advance(Phase.SELF_REFLECTION)
        elif kind == "justification_submitted":
            self.justification = payload["text"]
        elif kind == "session_finalized":
            self.phase = Phase.COMPLETED
            self.finalized_at = at
        # scenario_viewed / product_viewed / comparison_built / ai_* are
        # telemetry only and change no session field


@dataclass(frozen=True)
class Summary:
    highlights: tuple[HighlightSpan, ...]
    recommendation_product: Product
    justification: str | None


def replay_session(events: list[EventRecord]) -> Session:
    """Rebuild a session by folding its events from scratch.

    The first event must be the scenario_viewed that started the session.
    """
    if not events or events[0].kind != "scenario_viewed":
        raise ValueError("session event stream must start with scenario_viewed")
    first = events[0]
    session = Session(
        id=first.session_id,
        user_ref=first.payload["user_ref"],
        scenario_id=first.payload["scenario_id"],
        created_at=first.at,
    )
    for record in events[1:]:
        session.apply(record.kind, record.payload, record.at)
    return session


class SessionManager:
    """Serializes mutations per session and owns the live session registry."""

    def __init__(
        self,
        scenarios: ScenarioSet,
        catalog: ProductCatalog,
        log: EventLog,
        id_factory: Callable[[], str] | None = None,
    ):
        self._scenarios = scenarios
        self._catalog = catalog
        self._log = log
        self._id_factory = id_factory or (lambda: uuid.uuid4().hex)
        self._sessions: dict[str, Session] = {}
        self._locks: defaultdict[str, threading.Lock] = defaultdict(threading.Lock)
        self._registry_lock = threading.Lock()

    @property
    def scenarios(self) -> ScenarioSet:
        return self._scenarios

    @property
    def catalog(self) -> ProductCatalog:
        return self._catalog

    def get(self, session_id: str) -> Session:
        try:
            return self._sessions[session_id]
        except KeyError:
            raise UnknownSession(f"no session with id {session_id!r}") from None

    def sessions(self) -> list[Session]:
        return list(self._sessions.values())

    def _lock_for(self, session_id: str) -> threading.Lock:
        with self._registry_lock:
            return self._locks[session_id]

    def _scenario_of(self, session: Session) -> Scenario:
        return self._scenarios.get(session.scenario_id)

    def _emit(self, session: Session, kind: str, payload: dict) -> EventRecord:
        record = self._log.append(kind, session.id, payload)
        session.apply(record.kind, record.payload, record.at)
        return record

    # --- operations -----------------------------------------------------

    def start_session(self, user_ref: str, scenario_id: str) -> Session:
        self._scenarios.get(scenario_id)  # raises UnknownScenario
        session_id = self._id_factory()
        record = self._log.append(
            "scenario_viewed",
            session_id,
            {"user_ref": user_ref, "scenario_id": scenario_id},
        )
        session = Session(
            id=session_id,
            user_ref=user_ref,
            scenario_id=scenario_id,
            created_at=record.at,
        )
        with self._registry_lock:
            self._sessions[session_id] = session
        return session

    def add_highlight(self, session_id: str, start: int, end: int) -> Session:
        session = self.get(session_id)
        with self._lock_for(session_id):
            self._require_open(session)
            span = validate_span(self._scenario_of(session), start, end)
            if any(h.start == start and h.end == end for h in session.highlights):
                raise DuplicateHighlight(f"span [{start}, {end}) already highlighted")
            self._emit(
                session,
                "highlight_added",
                {"start": span.start, "end": span.end, "extracted": span.extracted},
            )
            return session

    def remove_highlight(self, session_id: str, index: int) -> Session:
        session = self.get(session_id)
        with self._lock_for(session_id):
            self._require_open(session)
            if not 0 <= index < len(session.highlights):
                raise IndexOutOfRange(
                    f"highlight index {index} out of range for panel of {len(session.highlights)}"
                )
            self._emit(session, "highlight_removed", {"index": index})
            return session

    def record_assessment(
        self,
        session_id: str,
        product_id: str,
        rating: SuitabilityRating,
        decision: InitialDecision,
    ) -> Session:
        session = self.get(session_id)
        with self._lock_for(session_id):
            self._require_open(session)
            scenario = self._scenario_of(session)
            if product_id not in scenario.eligible_product_ids:
                raise IneligibleProduct(
                    f"product {product_id!r} not eligible for scenario {scenario.id!r}"
                )
            self._emit(
                session,
                "assessment_recorded",
                {"product_id": product_id, "rating": rating.value, "decision": decision.value},
            )
            # deselecting the recommended product clears the recommendation
            if session.recommendation == product_id and decision is not InitialDecision.SELECT:
                self._emit(
                    session,
                    "recommendation_set",
                    {"product_id": None, "auto_cleared": True},
                )
            return session

    def selected_items(self, session_id: str) -> list[str]:
        return self.get(session_id).selected_items()

    def set_recommendation(self, session_id: str, product_id: str) -> Session:
        session = self.get(session_id)
        with self._lock_for(session_id):
            self._require_open(session)
            if product_id not in session.selected_items():
                raise NotInSelectedSet(f"product {product_id!r} is not currently selected")
            self._emit(session, "recommendation_set", {"product_id": product_id})
            return session

    def submit_justification(self, session_id: str, text: str) -> Session:
        session = self.get(session_id)
        with self._lock_for(session_id):
            self._require_open(session)
            if not isinstance(text, str) or not text.strip():
                raise BlankJustification("justification must contain a non-whitespace character")
            self._emit(session, "justification_submitted", {"text": text})
            return session

    def finalize(self, session_id: str) -> Session:
        session = self.get(session_id)
        with self._lock_for(session_id):
            self._require_open(session)
            if session.recommendation is None:
                raise MissingRecommendation("finalize requires a recommendation")
            if session.justification is None or not session.justification.strip():
                raise MissingJustification("finalize requires a justification")
            self._emit(session, "session_finalized", {})
            return session

    def summary_view(self, session_id: str) -> Summary:
        session = self.get(session_id)
        with self._lock_for(session_id):
            if session.recommendation is None:
                raise MissingRecommendation("summary requires a recommendation")
            return Summary(
                highlights=tuple(session.highlights),
                recommendation_product=self._catalog.get(session.recommendation),
                justification=session.justification,
            )

    # --- telemetry hooks --------------------------------------------------

    def note_product_viewed(self, session_id: str, product_id: str) -> None:
        session = self.get(session_id)
        self._log.append("product_viewed", session.id, {"product_id": product_id})

    def note_comparison_built(self, session_id: str, product_ids: list[str], basis: str) -> None:
        session = self.get(session_id)
        self._log.append(
            "comparison_built", session.id, {"product_ids": product_ids, "basis": basis}
        )

    # --- replay -----------------------------------------------------------

    def apply_event(self, record: EventRecord) -> None:
        """Fold one persisted event during boot. Never writes to the log."""
        if record.kind == "scenario_viewed":
            if record.session_id not in self._sessions:
                self._scenarios.get(record.payload["scenario_id"])
                self._sessions[record.session_id] = Session(
                    id=record.session_id,
                    user_ref=record.payload["user_ref"],
                    scenario_id=record.payload["scenario_id"],
                    created_at=record.at,
                )
            return
        session = self.get(record.session_id)
        session.apply(record.kind, record.payload, record.at)

    @staticmethod
    def _require_open(session: Session) -> None:
        if session.completed:
            raise SessionCompleted(f"session {session.id} is finalized")
