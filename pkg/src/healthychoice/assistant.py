"""AI-assistant gateway: context assembly, provider calls, transcripts.

Providers are pluggable behind a two-method protocol. The stub provider is a
pure function of (preamble, context, question), so tests and offline demos
are deterministic; the remote provider speaks a chat-completion wire protocol
over HTTPS. A failed ask never touches the transcript: only a failure event
is appended to the log.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import threading
import time
from dataclasses import dataclass, field
from datetime import datetime
from typing import Protocol

import httpx

from .analytics import EventLog, EventRecord
from .catalog import ProductCatalog, Product
from .errors import (
    BusyAsking,
    ConfigError,
    EmptyQuestion,
    IneligibleProduct,
    ProviderRejected,
    ProviderUnavailable,
)
from .rounding import fmt_number
from .scenario import ScenarioSet
from .session import Session

logger = logging.getLogger(__name__)

DEFAULT_SYSTEM_PREAMBLE = (
    "You are the nutrition assistant inside a guided product-evaluation "
    "exercise. Answer only questions about nutrition concepts, the client "
    "scenario, and the focused product's label information. Explain clearly "
    "and briefly. Never state or imply which product the learner should "
    "ultimately recommend; that decision is theirs."
)

RETRY_BASE_DELAY = 0.25


@dataclass(frozen=True)
class ChatContext:
    scenario_excerpt: str
    product_excerpt: str | None
    system_preamble: str


@dataclass(frozen=True)
class ChatExchange:
    question: str
    answer: str
    provider_id: str
    at: datetime
    context_digest: str


@dataclass
class Transcript:
    session_id: str
    exchanges: list[ChatExchange] = field(default_factory=list)


@dataclass(frozen=True)
class ProviderConfig:
    kind: str = "stub"  # "stub" | "remote"
    endpoint: str | None = None
    model_name: str | None = None
    timeout: float = 30.0
    max_retries: int = 2
    api_key_env: str = "HC_PROVIDER_KEY"
    system_preamble: str = DEFAULT_SYSTEM_PREAMBLE

    def __post_init__(self):
        if self.kind not in ("stub", "remote"):
            raise ConfigError(f"unknown provider kind {self.kind!r}")
        if self.kind == "remote" and (not self.endpoint or not self.model_name):
            raise ConfigError("remote provider requires endpoint and model_name")


class Provider(Protocol):
    provider_id: str

    def complete(self, preamble: str, context: str, question: str) -> str: ...


def context_digest(ctx: ChatContext) -> str:
    doc = {
        "scenario_excerpt": ctx.scenario_excerpt,
        "product_excerpt": ctx.product_excerpt,
        "system_preamble": ctx.system_preamble,
    }
    blob = json.dumps(doc, sort_keys=True, ensure_ascii=False).encode("utf-8")
    return hashlib.sha256(blob).hexdigest()


def context_text(ctx: ChatContext) -> str:
    text = f"Scenario:\n{ctx.scenario_excerpt}"
    if ctx.product_excerpt is not None:
        text += f"\n\nProduct in focus:\n{ctx.product_excerpt}"
    return text


def render_product_excerpt(product: Product) -> str:
    """Plain-text rendering of name, nutrition entries, and ingredients."""
    serving = product.serving
    lines = [product.name]
    serving_text = f"Serving: {fmt_number(serving.amount)} {serving.unit}"
    if serving.description:
        serving_text += f" ({serving.description})"
    lines.append(serving_text)
    lines.append("Nutrition facts:")
    for entry in product.nutrition.entries:
        line = f"- {entry.key}: {fmt_number(entry.amount)} {entry.unit}"
        if entry.percent_dv is not None:
            line += f" ({fmt_number(entry.percent_dv)}% DV)"
        lines.append(line)
    lines.append("Ingredients: " + ", ".join(product.ingredients))
    if product.claims:
        lines.append("Label claims: " + "; ".join(product.claims))
    return "\n".join(lines)


class StubProvider:
    """Deterministic test double: answer is a pure function of its inputs."""

    provider_id = "stub"

    def complete(self, preamble: str, context: str, question: str) -> str:
        blob = "\x1f".join([preamble, context, question]).encode("utf-8")
        digest = hashlib.sha256(blob).hexdigest()[:12]
        return f"STUB[{digest}]: {question[:80]}"


class RemoteChatCompletionProvider:
    """Chat-completion client with retries on transport errors only.

    The credential is read from the environment variable named in the config
    at call time and is never logged or persisted.
    """

    def __init__(self, config: ProviderConfig, transport: httpx.BaseTransport | None = None):
        if not config.endpoint or not config.model_name:
            raise ConfigError("remote provider requires endpoint and model_name")
        self._config = config
        self.provider_id = f"remote:{config.model_name}"
        self._client = httpx.Client(timeout=config.timeout, transport=transport)

    def complete(self, preamble: str, context: str, question: str) -> str:
        config = self._config
        payload = {
            "model": config.model_name,
            "messages": [
                {"role": "system", "content": f"{preamble}\n\n{context}"},
                {"role": "user", "content": question},
            ],
        }
        headers = {}
        key = os.environ.get(config.api_key_env)
        if key:
            headers["Authorization"] = f"Bearer {key}"
        logger.debug(
            "provider request to %s (auth %s): %s",
            config.endpoint,
            "redacted" if key else "none",
            json.dumps(payload, ensure_ascii=False),
        )
        delay = RETRY_BASE_DELAY
        for attempt in range(config.max_retries + 1):
            try:
                response = self._client.post(config.endpoint, json=payload, headers=headers)
            except httpx.TransportError as exc:  # timeouts and connection errors
                if attempt < config.max_retries:
                    time.sleep(delay)
                    delay *= 2
                    continue
                raise ProviderUnavailable(
                    f"provider unreachable after {attempt + 1} attempts: {exc}"
                ) from exc
            if response.status_code // 100 != 2:
                raise ProviderRejected(f"provider returned status {response.status_code}")
            logger.debug("provider response: %s", response.text)
            try:
                return response.json()["choices"][0]["message"]["content"]
            except (ValueError, KeyError, IndexError, TypeError) as exc:
                raise ProviderRejected(f"malformed provider response: {exc}") from exc
        raise ProviderUnavailable("provider retry loop exhausted")  # unreachable


def make_provider(config: ProviderConfig, transport: httpx.BaseTransport | None = None) -> Provider:
    if config.kind == "stub":
        return StubProvider()
    return RemoteChatCompletionProvider(config, transport=transport)


class AssistantGateway:
    """Per-session transcripts over a pluggable provider."""

    def __init__(
        self,
        catalog: ProductCatalog,
        scenarios: ScenarioSet,
        log: EventLog,
        provider: Provider,
        system_preamble: str = DEFAULT_SYSTEM_PREAMBLE,
    ):
        self._catalog = catalog
        self._scenarios = scenarios
        self._log = log
        self._provider = provider
        self._preamble = system_preamble
        self._transcripts: dict[str, Transcript] = {}
        self._in_flight: set[str] = set()
        self._flight_lock = threading.Lock()

    @property
    def provider(self) -> Provider:
        return self._provider

    def transcript(self, session_id: str) -> Transcript:
        if session_id not in self._transcripts:
            self._transcripts[session_id] = Transcript(session_id=session_id)
        return self._transcripts[session_id]

    def assemble_context(self, session: Session, focus_product_id: str | None = None) -> ChatContext:
        scenario = self._scenarios.get(session.scenario_id)
        product_excerpt = None
        if focus_product_id is not None:
            product = self._catalog.get(focus_product_id)  # raises UnknownProduct
            if focus_product_id not in scenario.eligible_product_ids:
                raise IneligibleProduct(
                    f"product {focus_product_id!r} not eligible for scenario {scenario.id!r}"
                )
            product_excerpt = render_product_excerpt(product)
        return ChatContext(
            scenario_excerpt=scenario.narrative,
            product_excerpt=product_excerpt,
            system_preamble=self._preamble,
        )

    def ask(self, session: Session, question: str, focus_product_id: str | None = None) -> ChatExchange:
        if not isinstance(question, str) or not question.strip():
            raise EmptyQuestion("question must contain a non-whitespace character")
        with self._flight_lock:
            if session.id in self._in_flight:
                raise BusyAsking(f"an ask is already in flight for session {session.id}")
            self._in_flight.add(session.id)
        try:
            ctx = self.assemble_context(session, focus_product_id)
            digest = context_digest(ctx)
            try:
                answer = self._provider.complete(ctx.system_preamble, context_text(ctx), question)
            except (ProviderUnavailable, ProviderRejected) as exc:
                self._log.append(
                    "ai_question",
                    session.id,
                    {
                        "question": question,
                        "focus_product_id": focus_product_id,
                        "status": "failed",
                        "error": type(exc).__name__,
                        "context_digest": digest,
                    },
                )
                raise
            record = self._log.append(
                "ai_question",
                session.id,
                {
                    "question": question,
                    "focus_product_id": focus_product_id,
                    "status": "ok",
                    "answer": answer,
                    "provider_id": self._provider.provider_id,
                    "context_digest": digest,
                },
            )
            exchange = ChatExchange(
                question=question,
                answer=answer,
                provider_id=self._provider.provider_id,
                at=record.at,
                context_digest=digest,
            )
            self.transcript(session.id).exchanges.append(exchange)
            return exchange
        finally:
            with self._flight_lock:
                self._in_flight.discard(session.id)

    def clear_records(self, session: Session) -> Transcript:
        """Empty the visible transcript; prior exchanges stay in the event log."""
        transcript = self.transcript(session.id)
        transcript.exchanges.clear()
        self._log.append("ai_cleared", session.id, {})
        return transcript

    def apply_event(self, record: EventRecord) -> None:
        """Replay path: rebuild transcripts from the log without provider calls."""
        if record.kind == "ai_question":
            if record.payload.get("status") != "ok":
                return
            self.transcript(record.session_id).exchanges.append(
                ChatExchange(
                    question=record.payload["question"],
                    answer=record.payload["answer"],
                    provider_id=record.payload["provider_id"],
                    at=record.at,
                    context_digest=record.payload["context_digest"],
                )
            )
        elif record.kind == "ai_cleared":
            self.transcript(record.session_id).exchanges.clear()
