"""Loader, validator and stats contracts for the clip bank."""

import json

import pytest

from docgen import (
    DanglingSpeaker,
    DuplicateId,
    EmptyBank,
    ParseError,
    UnknownTopicRef,
    bank_from_dict,
    bank_stats,
    display_topic,
    load_bank,
    normalize_topic,
    validate_bank,
)
from docgen.clipbank import schema_text

from conftest import HOUSING_BANK, make_bank

TEN_FILTERS = {
    "affordable housing",
    "social conditions",
    "rentals",
    "government",
    "families",
    "gentrification",
    "developers",
    "tourism",
    "transportation",
    "universities",
}


def _clip(cid, speaker="p1", duration=30, keywords=("news",), qindex=0, **extra):
    return {
        "id": cid,
        "interviewee_id": speaker,
        "duration_s": duration,
        "keywords": list(keywords),
        "question_index": qindex,
        "media_uri": f"media/{cid}.mp4",
        **extra,
    }


def _manifest(**overrides):
    base = {
        "topics": ["news"],
        "interviewees": [{"id": "p1", "display_name": "Pat", "role": "resident"}],
        "clips": [_clip("c1")],
    }
    base.update(overrides)
    return base


class TestTopicNormalization:
    def test_lowercases_and_hyphenates(self):
        assert normalize_topic("Affordable Housing") == "affordable-housing"
        assert normalize_topic("  tourism ") == "tourism"

    def test_display_restores_spaces(self):
        assert display_topic("affordable-housing") == "affordable housing"

    @pytest.mark.parametrize("bad", ["", "  ", "a" * 41, "no!way", "-lead", "trail-"])
    def test_rejects_invalid_tokens(self, bad):
        with pytest.raises(ParseError):
            normalize_topic(bad)


class TestLoadBank:
    def test_fixture_loads_with_expected_shape(self, housing_bank):
        assert len(housing_bank.interviewees) == 14
        assert len(housing_bank.topics) == 10
        assert len(housing_bank.clips) == 120
        assert set(housing_bank.topics_display()) == TEN_FILTERS
        stats = bank_stats(housing_bank)
        assert stats.interviewee_count == 14
        assert len(stats.per_topic_clip_counts) == 10

    def test_load_is_deterministic(self):
        assert load_bank(HOUSING_BANK) == load_bank(HOUSING_BANK)

    def test_zero_clips_is_empty_bank(self):
        with pytest.raises(EmptyBank):
            bank_from_dict(_manifest(clips=[]))

    def test_duplicate_clip_id_names_the_id(self):
        with pytest.raises(DuplicateId, match="c3"):
            bank_from_dict(_manifest(clips=[_clip("c1"), _clip("c3"), _clip("c3")]))

    def test_duplicate_interviewee_id(self):
        people = [
            {"id": "p1", "display_name": "Pat", "role": "resident"},
            {"id": "p1", "display_name": "Sam", "role": "official"},
        ]
        with pytest.raises(DuplicateId, match="p1"):
            bank_from_dict(_manifest(interviewees=people))

    def test_unknown_keyword_is_unknown_topic_ref(self):
        with pytest.raises(UnknownTopicRef, match="ghosts"):
            bank_from_dict(_manifest(clips=[_clip("c1", keywords=["ghosts"])]))

    def test_unknown_speaker_is_dangling(self):
        with pytest.raises(DanglingSpeaker, match="p9"):
            bank_from_dict(_manifest(clips=[_clip("c1", speaker="p9")]))

    def test_unknown_keys_rejected(self):
        with pytest.raises(ParseError, match="surprise"):
            bank_from_dict(_manifest(surprise=1))
        with pytest.raises(ParseError):
            bank_from_dict(_manifest(clips=[_clip("c1", surprise=1)]))

    @pytest.mark.parametrize(
        "field,value",
        [("duration_s", 0), ("duration_s", 12.5), ("duration_s", True), ("question_index", -1)],
    )
    def test_bad_numeric_fields(self, field, value):
        clip = _clip("c1")
        clip[field] = value
        with pytest.raises(ParseError):
            bank_from_dict(_manifest(clips=[clip]))

    def test_empty_keywords_rejected(self):
        with pytest.raises(ParseError):
            bank_from_dict(_manifest(clips=[_clip("c1", keywords=[])]))

    def test_not_json_is_parse_error(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{nope")
        with pytest.raises(ParseError):
            load_bank(path)

    def test_bank_is_immutable(self, desk_bank):
        with pytest.raises(AttributeError):
            desk_bank.topics = frozenset()
        with pytest.raises(AttributeError):
            desk_bank.clips[0].duration_s = 1


class TestValidateBank:
    def test_conforming_fixture_has_empty_report(self, housing_bank):
        assert validate_bank(housing_bank) == []

    def test_out_of_range_duration_warns(self):
        bank = make_bank(["news"], [("c1", "p1", 90, ["news"], 0), ("c2", "p1", 30, ["news"], 0)])
        report = validate_bank(bank)
        assert len(report) == 1
        finding = report[0]
        assert (finding.severity, finding.code, finding.subject) == ("warning", "DurationOutOfObservedRange", "c1")

    def test_boundary_durations_do_not_warn(self):
        bank = make_bank(["news"], [("c1", "p1", 18, ["news"], 0), ("c2", "p1", 74, ["news"], 0)])
        assert validate_bank(bank) == []

    def test_dead_filter_warns(self):
        bank = make_bank(["news", "tourism"], [("c1", "p1", 30, ["news"], 0)])
        report = validate_bank(bank)
        assert [(f.code, f.subject) for f in report] == [("DeadFilter", "tourism")]

    def test_no_error_severity_for_any_loadable_bank(self, housing_bank, desk_bank):
        for bank in (housing_bank, desk_bank):
            assert all(f.severity == "warning" for f in validate_bank(bank))


class TestBankStats:
    def test_simple_arithmetic(self):
        bank = make_bank(
            ["news"],
            [("c1", "p1", 20, ["news"], 0), ("c2", "p2", 30, ["news"], 0), ("c3", "p3", 40, ["news"], 0)],
        )
        stats = bank_stats(bank)
        assert stats.total_clip_duration_s == 90
        assert stats.mean_duration_s == 30
        assert (stats.min_duration_s, stats.max_duration_s) == (20, 40)

    def test_single_clip_bank(self):
        stats = bank_stats(make_bank(["news"], [("c1", "p1", 45, ["news"], 0)]))
        assert stats.min_duration_s == stats.max_duration_s == stats.mean_duration_s == 45

    def test_per_topic_counts_match_independent_tally(self, housing_bank):
        # Independent oracle: raw scan of the manifest document.
        raw = json.loads(HOUSING_BANK.read_text())
        tally = {}
        for clip in raw["clips"]:
            for keyword in set(clip["keywords"]):
                token = keyword.lower().replace(" ", "-")
                tally[token] = tally.get(token, 0) + 1
        stats = bank_stats(housing_bank)
        assert stats.per_topic_clip_counts == tally
        assert sum(tally.values()) >= 120

    def test_stats_recomputable_from_clips(self, desk_bank):
        stats = bank_stats(desk_bank)
        assert stats.clip_count == len(desk_bank.clips)
        assert stats.total_clip_duration_s == sum(c.duration_s for c in desk_bank.clips)
        per_speaker = {}
        for clip in desk_bank.clips:
            per_speaker[clip.interviewee_id] = per_speaker.get(clip.interviewee_id, 0) + 1
        assert stats.per_speaker_clip_counts == per_speaker


class TestManifestSchema:
    def test_fixture_satisfies_shipped_schema(self):
        jsonschema = pytest.importorskip("jsonschema")
        schema = json.loads(schema_text())
        jsonschema.validate(json.loads(HOUSING_BANK.read_text()), schema)

    def test_schema_rejects_unknown_keys(self):
        jsonschema = pytest.importorskip("jsonschema")
        schema = json.loads(schema_text())
        doc = _manifest(surprise=1)
        with pytest.raises(jsonschema.ValidationError):
            jsonschema.validate(doc, schema)
