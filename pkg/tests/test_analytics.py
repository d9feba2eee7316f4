import csv
import io
from decimal import Decimal
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from healthychoice.analytics import (
    EventLog,
    RatingDistribution,
    SurveyResponse,
    SurveyStore,
    band_share,
    descriptive_stats,
    distribution_percentages,
    export_survey,
    ingest_survey,
    record_event,
)
from healthychoice.errors import EmptyDistribution, RatingOutOfRange, StorageFailure

from survey_fixtures import (
    EASE_COUNTS,
    EASE_KNOWN,
    USEFULNESS_COUNTS,
    USEFULNESS_KNOWN,
    complete_counts,
)


# --- event log -----------------------------------------------------------------

def test_seq_starts_at_one():
    log = EventLog()
    record = record_event(log, "scenario_viewed", "s1", {"user_ref": "u", "scenario_id": "x"})
    assert record.seq == 1


def test_seq_monotone():
    log = EventLog()
    seqs = [log.append("ai_cleared", "s1", {}).seq for _ in range(3)]
    assert seqs == [1, 2, 3]


def test_unknown_kind_rejected():
    log = EventLog()
    with pytest.raises(ValueError):
        log.append("somebody_sneezed", "s1", {})


def test_file_log_persists_and_continues(tmp_path):
    path = tmp_path / "events.jsonl"
    log = EventLog(path)
    log.append("ai_cleared", "s1", {})
    log.append("ai_cleared", "s1", {})
    log.close()

    reopened = EventLog(path)
    assert [e.seq for e in reopened.events()] == [1, 2]
    record = reopened.append("ai_cleared", "s2", {})
    assert record.seq == 3
    reopened.close()

    third = EventLog(path)
    assert [e.seq for e in third.events()] == [1, 2, 3]
    assert third.events()[2].session_id == "s2"
    third.close()


def test_corrupt_log_rejected(tmp_path):
    path = tmp_path / "events.jsonl"
    path.write_text('{"seq": 1, "session_id": "s", "at": "not a time", "kind": "ai_cleared", "payload": {}}\n')
    with pytest.raises(StorageFailure):
        EventLog(path)


def test_non_monotone_log_rejected(tmp_path):
    path = tmp_path / "events.jsonl"
    log = EventLog(path)
    line = log.append("ai_cleared", "s1", {}).to_json_line()
    log.close()
    path.write_text(line + "\n" + line + "\n")
    with pytest.raises(StorageFailure):
        EventLog(path)


def test_event_timestamps_round_trip(tmp_path):
    path = tmp_path / "events.jsonl"
    log = EventLog(path)
    original = log.append("ai_cleared", "s1", {})
    log.close()
    reopened = EventLog(path)
    assert reopened.events()[0] == original


# --- descriptive statistics -----------------------------------------------------

def test_usefulness_fixture_matches_reported_stats():
    stats = descriptive_stats(RatingDistribution(USEFULNESS_COUNTS))
    assert stats.mean == Decimal("8.19")
    assert stats.median == 8
    assert stats.modes == (8,)
    assert stats.n == 113


def test_ease_fixture_matches_reported_stats():
    stats = descriptive_stats(RatingDistribution(EASE_COUNTS))
    assert stats.mean == Decimal("8.50")
    assert stats.median == 9
    assert stats.modes == (10,)
    assert stats.n == 113


def test_fixture_completions_come_from_integer_search():
    useful = complete_counts(USEFULNESS_KNOWN, "8.19")
    ease = complete_counts(EASE_KNOWN, "8.50")
    assert USEFULNESS_COUNTS in useful
    assert EASE_COUNTS in ease
    # ties broken by the smallest 7-count
    assert min(useful, key=lambda c: c.get(7, 0)) == USEFULNESS_COUNTS
    assert min(ease, key=lambda c: c.get(7, 0)) == EASE_COUNTS


def test_single_rating():
    stats = descriptive_stats(RatingDistribution({7: 1}))
    assert stats.mean == Decimal("7.00")
    assert stats.median == 7
    assert stats.modes == (7,)
    assert stats.n == 1


def test_even_n_median_mean_of_middles():
    stats = descriptive_stats(RatingDistribution({6: 1, 9: 1}))
    assert stats.median == Decimal("7.5")
    stats2 = descriptive_stats(RatingDistribution({6: 2, 9: 2}))
    assert stats2.median == Decimal("7.5")


def test_multimodal_reports_all_modes():
    stats = descriptive_stats(RatingDistribution({3: 5, 9: 5, 6: 2}))
    assert stats.modes == (3, 9)


def test_empty_distribution_errors():
    empty = RatingDistribution()
    with pytest.raises(EmptyDistribution):
        descriptive_stats(empty)
    with pytest.raises(EmptyDistribution):
        distribution_percentages(empty)
    with pytest.raises(EmptyDistribution):
        band_share(empty, {8, 9, 10})


def test_usefulness_percentages():
    got = distribution_percentages(RatingDistribution(USEFULNESS_COUNTS))
    assert got[10] == Decimal("21.2")
    assert got[9] == Decimal("24.8")
    assert got[8] == Decimal("27.4")
    assert got[5] == Decimal("2.7")


def test_ease_percentages():
    got = distribution_percentages(RatingDistribution(EASE_COUNTS))
    assert got[10] == Decimal("31.0")
    assert got[9] == Decimal("29.2")
    assert got[8] == Decimal("15.9")


def test_band_shares():
    useful = RatingDistribution(USEFULNESS_COUNTS)
    ease = RatingDistribution(EASE_COUNTS)
    assert band_share(useful, {8, 9, 10}) == Decimal("73.5")
    assert band_share(ease, {8, 9, 10}) == Decimal("76.1")
    assert band_share(ease, {1, 2, 3, 4, 5}) == Decimal("4.4")
    assert band_share(useful, set(range(1, 11))) == Decimal("100.0")


def test_singleton_percentage():
    got = distribution_percentages(RatingDistribution({5: 1}))
    assert got == {5: Decimal("100.0")}


counts_strategy = st.dictionaries(
    keys=st.integers(min_value=1, max_value=10),
    values=st.integers(min_value=0, max_value=50),
    min_size=1,
).filter(lambda c: sum(c.values()) > 0)


@given(counts_strategy)
def test_mean_rounding_bound(counts):
    d = RatingDistribution(counts)
    stats = descriptive_stats(d)
    exact = Fraction(sum(v * c for v, c in counts.items()), d.n)
    # exact ties (x.xx5) land on the bound itself under half-up rounding
    assert abs(Fraction(str(stats.mean)) - exact) <= Fraction(5, 1000)


@given(counts_strategy)
def test_modes_attain_max_count(counts):
    d = RatingDistribution(counts)
    stats = descriptive_stats(d)
    max_count = max(d.counts.values())
    assert stats.modes
    assert all(d.counts[m] == max_count for m in stats.modes)
    if sum(1 for c in d.counts.values() if c == max_count) == 1:
        assert len(stats.modes) == 1


@given(counts_strategy)
def test_band_partition_sums_to_about_100(counts):
    d = RatingDistribution(counts)
    bands = [{1, 2, 3}, {4, 5, 6}, {7, 8}, {9, 10}]
    total = sum(band_share(d, band) for band in bands)
    assert Decimal("99.8") <= total <= Decimal("100.2")


@given(counts_strategy)
def test_percentages_agree_with_rational_oracle(counts):
    d = RatingDistribution(counts)
    got = distribution_percentages(d)
    for value, count in d.counts.items():
        exact = Fraction(100 * count, d.n)
        floor = Fraction(int(exact * 10), 10)
        expected = floor if exact - floor < Fraction(1, 20) else floor + Fraction(1, 10)
        assert Fraction(str(got[value])) == expected


# --- survey store ----------------------------------------------------------------

def test_ingest_updates_distributions():
    store = SurveyStore()
    ingest_survey(store, SurveyResponse("p1", 8, 10, "loved the compare tool"))
    assert store.usefulness.counts == {8: 1}
    assert store.ease.counts == {10: 1}
    assert store.responses[0].feedback == "loved the compare tool"


def test_ingest_rejects_out_of_range():
    store = SurveyStore()
    with pytest.raises(RatingOutOfRange):
        ingest_survey(store, SurveyResponse("p1", 11, 5))
    with pytest.raises(RatingOutOfRange):
        ingest_survey(store, SurveyResponse("p1", 5, 0))
    assert store.responses == []


def test_ingest_logs_event():
    log = EventLog()
    store = SurveyStore(log)
    ingest_survey(store, SurveyResponse("p1", 8, 9))
    events = log.events()
    assert len(events) == 1
    assert events[0].kind == "survey_submitted"
    assert events[0].payload["participant_ref"] == "p1"


def test_full_fixture_ingest_reproduces_stats():
    store = SurveyStore()
    useful_values = [v for v, c in sorted(USEFULNESS_COUNTS.items()) for _ in range(c)]
    ease_values = [v for v, c in sorted(EASE_COUNTS.items()) for _ in range(c)]
    for i, (u, e) in enumerate(zip(useful_values, ease_values)):
        ingest_survey(store, SurveyResponse(f"p{i:03d}", u, e))
    useful_stats = descriptive_stats(store.usefulness)
    ease_stats = descriptive_stats(store.ease)
    assert (useful_stats.mean, useful_stats.median, useful_stats.modes) == (Decimal("8.19"), 8, (8,))
    assert (ease_stats.mean, ease_stats.median, ease_stats.modes) == (Decimal("8.50"), 9, (10,))
    assert useful_stats.n == ease_stats.n == 113


def test_export_empty_store_is_header_only():
    store = SurveyStore()
    assert export_survey(store) == b"participant_ref,usefulness,ease,feedback\r\n"


def test_export_two_responses_three_lines():
    store = SurveyStore()
    ingest_survey(store, SurveyResponse("p1", 8, 9))
    ingest_survey(store, SurveyResponse("p2", 7, 6, 'said "great", really'))
    data = export_survey(store)
    lines = data.decode("utf-8").split("\r\n")
    assert len([l for l in lines if l]) == 3
    # RFC 4180 quoting for embedded quotes
    assert b'"said ""great"", really"' in data


def test_export_parse_export_fixed_point():
    store = SurveyStore()
    ingest_survey(store, SurveyResponse("p1", 8, 9, "line one\nline two, with comma"))
    ingest_survey(store, SurveyResponse("p2", 3, 4))
    first = export_survey(store)

    parsed = list(csv.reader(io.StringIO(first.decode("utf-8"))))
    rebuilt = SurveyStore()
    for row in parsed[1:]:
        rebuilt.ingest(SurveyResponse(row[0], int(row[1]), int(row[2]), row[3] or None))
    assert export_survey(rebuilt) == first
