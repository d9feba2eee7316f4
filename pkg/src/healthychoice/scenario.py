"""Client scenarios with highlightable narrative text.

Highlight offsets are Unicode scalar-value indices (Python string indices),
not bytes and not UTF-16 code units; clients convert at the boundary.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator

from .catalog import ProductCatalog
from .errors import (
    DuplicateScenarioId,
    EmptySpan,
    InvertedSpan,
    OutOfBounds,
    ParseError,
    UnknownProductReference,
    UnknownScenario,
)


@dataclass(frozen=True)
class HighlightSpan:
    start: int
    end: int
    extracted: str


@dataclass(frozen=True)
class Scenario:
    id: str
    title: str
    narrative: str
    client_profile: tuple[tuple[str, str], ...]
    eligible_product_ids: tuple[str, ...]
    difficulty: int


class ScenarioSet:
    """Scenarios in presentation order; the practice scenario comes first."""

    def __init__(self, scenarios: list[Scenario]):
        self._by_id = {s.id: s for s in scenarios}
        self.ordering = tuple(s.id for s in scenarios)

    def __len__(self) -> int:
        return len(self.ordering)

    def __iter__(self) -> Iterator[Scenario]:
        return (self._by_id[sid] for sid in self.ordering)

    def __contains__(self, scenario_id: str) -> bool:
        return scenario_id in self._by_id

    def get(self, scenario_id: str) -> Scenario:
        try:
            return self._by_id[scenario_id]
        except KeyError:
            raise UnknownScenario(f"no scenario with id {scenario_id!r}") from None


_SCENARIO_KEYS = {"id", "title", "narrative", "client_profile", "eligible_product_ids", "difficulty"}


def _parse_scenario(obj, index: int, catalog: ProductCatalog) -> Scenario:
    where = f"scenarios[{index}]"
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    unknown = set(obj) - _SCENARIO_KEYS
    if unknown:
        raise ParseError(f"{where}: unknown keys {sorted(unknown)}")
    missing = _SCENARIO_KEYS - set(obj)
    if missing:
        raise ParseError(f"{where}: missing keys {sorted(missing)}")

    scenario_id = obj["id"]
    title = obj["title"]
    narrative = obj["narrative"]
    if not isinstance(scenario_id, str) or not scenario_id:
        raise ParseError(f"{where}: id must be a non-empty string")
    if not isinstance(title, str):
        raise ParseError(f"{where}: title must be a string")
    if not isinstance(narrative, str) or not narrative:
        raise ParseError(f"{where}: narrative must be non-empty")

    profile_raw = obj["client_profile"]
    if not isinstance(profile_raw, list):
        raise ParseError(f"{where}: client_profile must be a list")
    profile: list[tuple[str, str]] = []
    for j, item in enumerate(profile_raw):
        if (
            not isinstance(item, dict)
            or set(item) != {"key", "value"}
            or not isinstance(item["key"], str)
            or not isinstance(item["value"], str)
        ):
            raise ParseError(f"{where}.client_profile[{j}]: expected {{key, value}} strings")
        profile.append((item["key"], item["value"]))

    ids_raw = obj["eligible_product_ids"]
    if not isinstance(ids_raw, list) or not ids_raw or any(not isinstance(v, str) for v in ids_raw):
        raise ParseError(f"{where}: eligible_product_ids must be a non-empty list of strings")
    for pid in ids_raw:
        if pid not in catalog:
            raise UnknownProductReference(f"{where}: product id {pid!r} not in catalog")

    difficulty = obj["difficulty"]
    if isinstance(difficulty, bool) or not isinstance(difficulty, int) or not 1 <= difficulty <= 5:
        raise ParseError(f"{where}: difficulty must be an integer in 1..5")

    return Scenario(
        id=scenario_id,
        title=title,
        narrative=narrative,
        client_profile=tuple(profile),
        eligible_product_ids=tuple(ids_raw),
        difficulty=difficulty,
    )


def load_scenarios(source: bytes, catalog: ProductCatalog) -> ScenarioSet:
    """Parse the scenario document; array order is the presentation order."""
    try:
        doc = json.loads(source.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ParseError(f"scenario document is not valid UTF-8 JSON: {exc}") from exc
    if not isinstance(doc, dict) or set(doc) != {"scenarios"}:
        raise ParseError("scenario document must be an object with a single 'scenarios' key")
    raw = doc["scenarios"]
    if not isinstance(raw, list):
        raise ParseError("scenarios must be a list")
    if not raw:
        raise ParseError("scenario list is empty")
    scenarios = [_parse_scenario(obj, i, catalog) for i, obj in enumerate(raw)]
    seen: set[str] = set()
    for scenario in scenarios:
        if scenario.id in seen:
            raise DuplicateScenarioId(f"scenario id {scenario.id!r} appears more than once")
        seen.add(scenario.id)
    return ScenarioSet(scenarios)


def validate_span(scenario: Scenario, start: int, end: int) -> HighlightSpan:
    """Check offsets against the narrative and fill in the extracted text."""
    if start == end:
        raise EmptySpan(f"span [{start}, {end}) selects nothing")
    if start < 0 or end > len(scenario.narrative):
        raise OutOfBounds(
            f"span [{start}, {end}) outside narrative of length {len(scenario.narrative)}"
        )
    if start > end:
        raise InvertedSpan(f"span [{start}, {end}) has start after end")
    return HighlightSpan(start=start, end=end, extracted=scenario.narrative[start:end])
