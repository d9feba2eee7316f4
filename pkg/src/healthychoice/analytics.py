"""Append-only telemetry log, survey capture, and descriptive statistics.

The event log doubles as the persistence layer: one JSON line per event,
flushed and fsynced before the append returns. Replaying the log rebuilds
session, transcript, and survey state at boot.
"""

from __future__ import annotations

import csv
import io
import json
import os
import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone
from decimal import Decimal
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable

from .errors import EmptyDistribution, RatingOutOfRange, StorageFailure
from .rounding import round_half_up

EVENT_KINDS = frozenset(
    {
        "scenario_viewed",
        "highlight_added",
        "highlight_removed",
        "product_viewed",
        "assessment_recorded",
        "comparison_built",
        "ai_question",
        "ai_cleared",
        "recommendation_set",
        "justification_submitted",
        "session_finalized",
        "survey_submitted",
    }
)

RATING_MIN = 1
RATING_MAX = 10


@dataclass(frozen=True)
class EventRecord:
    seq: int
    session_id: str
    at: datetime
    kind: str
    payload: dict

    def to_json_line(self) -> str:
        doc = {
            "seq": self.seq,
            "session_id": self.session_id,
            "at": self.at.isoformat(),
            "kind": self.kind,
            "payload": self.payload,
        }
        return json.dumps(doc, sort_keys=True, ensure_ascii=False, separators=(",", ":"))

    @classmethod
    def from_json_line(cls, line: str) -> "EventRecord":
        try:
            doc = json.loads(line)
            return cls(
                seq=doc["seq"],
                session_id=doc["session_id"],
                at=datetime.fromisoformat(doc["at"]),
                kind=doc["kind"],
                payload=doc["payload"],
            )
        except (ValueError, KeyError, TypeError) as exc:
            raise StorageFailure(f"corrupt event line: {exc}") from exc


def _utc_now() -> datetime:
    return datetime.now(timezone.utc)


class EventLog:
    """Append-only event stream with strictly increasing seq numbers.

    Appends are serialized through one lock; with a path, every append is
    flushed and fsynced before it returns. Without a path the log is
    memory-only (test and replay harness use).
    """

    def __init__(self, path: str | Path | None = None, clock: Callable[[], datetime] | None = None):
        self._path = Path(path) if path is not None else None
        self._clock = clock or _utc_now
        self._lock = threading.Lock()
        self._events: list[EventRecord] = []
        self._last_at: datetime | None = None
        self._fh = None
        if self._path is not None:
            if self._path.exists():
                self._load()
            try:
                self._fh = open(self._path, "a", encoding="utf-8")
            except OSError as exc:
                raise StorageFailure(f"cannot open event log {self._path}: {exc}") from exc

    def _load(self) -> None:
        with open(self._path, "r", encoding="utf-8") as fh:
            prev_seq = 0
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                record = EventRecord.from_json_line(line)
                if record.seq <= prev_seq:
                    raise StorageFailure(
                        f"event seq {record.seq} not increasing (previous {prev_seq})"
                    )
                prev_seq = record.seq
                self._events.append(record)
        if self._events:
            self._last_at = self._events[-1].at

    @property
    def last_seq(self) -> int:
        return self._events[-1].seq if self._events else 0

    def append(
        self,
        kind: str,
        session_id: str,
        payload: dict,
        at: datetime | None = None,
    ) -> EventRecord:
        """Assign the next seq and durably append before returning."""
        if kind not in EVENT_KINDS:
            raise ValueError(f"unknown event kind {kind!r}")
        with self._lock:
            stamp = at or self._clock()
            if self._last_at is not None and stamp < self._last_at:
                stamp = self._last_at
            record = EventRecord(
                seq=self.last_seq + 1,
                session_id=session_id,
                at=stamp,
                kind=kind,
                payload=payload,
            )
            if self._fh is not None:
                try:
                    self._fh.write(record.to_json_line() + "\n")
                    self._fh.flush()
                    os.fsync(self._fh.fileno())
                except OSError as exc:
                    raise StorageFailure(f"event append failed: {exc}") from exc
            self._events.append(record)
            self._last_at = stamp
            return record

    def events(self) -> list[EventRecord]:
        """Snapshot copy of all events in seq order."""
        with self._lock:
            return list(self._events)

    def close(self) -> None:
        if self._fh is not None:
            self._fh.close()
            self._fh = None


def record_event(log: EventLog, kind: str, session_id: str, payload: dict) -> EventRecord:
    return log.append(kind, session_id, payload)


# --- survey ratings ----------------------------------------------------------

@dataclass(frozen=True)
class SurveyResponse:
    participant_ref: str
    usefulness: int
    ease: int
    feedback: str | None = None


class RatingDistribution:
    """Counts per rating value on the closed 1..10 scale."""

    def __init__(self, counts: dict[int, int] | None = None):
        self.counts: dict[int, int] = {}
        if counts:
            for value, count in counts.items():
                self._check_value(value)
                if not isinstance(count, int) or count < 0:
                    raise ValueError(f"count for rating {value} must be a non-negative int")
                if count:
                    self.counts[value] = count

    @staticmethod
    def _check_value(value: int) -> None:
        if isinstance(value, bool) or not isinstance(value, int) or not RATING_MIN <= value <= RATING_MAX:
            raise RatingOutOfRange(f"rating {value!r} outside [{RATING_MIN}, {RATING_MAX}]")

    @property
    def n(self) -> int:
        return sum(self.counts.values())

    def increment(self, value: int) -> None:
        self._check_value(value)
        self.counts[value] = self.counts.get(value, 0) + 1


@dataclass(frozen=True)
class DescriptiveStats:
    mean: Decimal
    median: Decimal
    modes: tuple[int, ...]
    n: int


def _kth_value(d: RatingDistribution, k: int) -> int:
    """k-th smallest rating (1-based) of the expanded multiset."""
    running = 0
    for value in sorted(d.counts):
        running += d.counts[value]
        if running >= k:
            return value
    raise EmptyDistribution("rank beyond distribution size")


def descriptive_stats(d: RatingDistribution) -> DescriptiveStats:
    """Mean (2 dp half-up), median of the expanded multiset, and all modes."""
    n = d.n
    if n == 0:
        raise EmptyDistribution("no ratings recorded")
    total = sum(value * count for value, count in d.counts.items())
    mean = round_half_up(Fraction(total, n), 2)
    if n % 2 == 1:
        median = Decimal(_kth_value(d, (n + 1) // 2))
    else:
        lower = _kth_value(d, n // 2)
        upper = _kth_value(d, n // 2 + 1)
        median = round_half_up(Fraction(lower + upper, 2), 1)
    max_count = max(d.counts.values())
    modes = tuple(sorted(v for v, c in d.counts.items() if c == max_count))
    return DescriptiveStats(mean=mean, median=median, modes=modes, n=n)


def distribution_percentages(d: RatingDistribution) -> dict[int, Decimal]:
    """Share of each observed rating, in percent, 1 dp half-up."""
    n = d.n
    if n == 0:
        raise EmptyDistribution("no ratings recorded")
    return {
        value: round_half_up(Fraction(100 * count, n), 1)
        for value, count in sorted(d.counts.items())
    }


def band_share(d: RatingDistribution, values: Iterable[int]) -> Decimal:
    """Combined share of the listed rating values, in percent, 1 dp half-up."""
    n = d.n
    if n == 0:
        raise EmptyDistribution("no ratings recorded")
    combined = sum(d.counts.get(v, 0) for v in set(values))
    return round_half_up(Fraction(100 * combined, n), 1)


# --- survey store ------------------------------------------------------------

class SurveyStore:
    """Survey responses in ingestion order, with per-question distributions."""

    def __init__(self, log: EventLog | None = None):
        self._log = log
        self._lock = threading.Lock()
        self.usefulness = RatingDistribution()
        self.ease = RatingDistribution()
        self.responses: list[SurveyResponse] = []

    def ingest(self, response: SurveyResponse) -> None:
        RatingDistribution._check_value(response.usefulness)
        RatingDistribution._check_value(response.ease)
        with self._lock:
            self._apply(response)
            if self._log is not None:
                self._log.append(
                    "survey_submitted",
                    "",
                    {
                        "participant_ref": response.participant_ref,
                        "usefulness": response.usefulness,
                        "ease": response.ease,
                        "feedback": response.feedback,
                    },
                )

    def _apply(self, response: SurveyResponse) -> None:
        self.usefulness.increment(response.usefulness)
        self.ease.increment(response.ease)
        self.responses.append(response)

    def apply_event(self, record: EventRecord) -> None:
        """Replay path: rebuild state without re-logging."""
        payload = record.payload
        self._apply(
            SurveyResponse(
                participant_ref=payload["participant_ref"],
                usefulness=payload["usefulness"],
                ease=payload["ease"],
                feedback=payload.get("feedback"),
            )
        )

    def export_csv(self) -> bytes:
        """RFC 4180 CSV of all responses in ingestion order."""
        buffer = io.StringIO()
        writer = csv.writer(buffer)
        writer.writerow(["participant_ref", "usefulness", "ease", "feedback"])
        with self._lock:
            for r in self.responses:
                writer.writerow([r.participant_ref, r.usefulness, r.ease, r.feedback or ""])
        return buffer.getvalue().encode("utf-8")


def ingest_survey(store: SurveyStore, response: SurveyResponse) -> None:
    store.ingest(response)


def export_survey(store: SurveyStore) -> bytes:
    return store.export_csv()
