"""Clip bank: the validated collection of tagged interview clips.

Everything downstream (generation, analytics, the service) reads from a
ClipBank and never mutates it.  A bank comes from a single JSON manifest
(see schemas/clip_bank.schema.json); the loader normalizes topic strings,
enforces referential integrity, and rejects anything structurally off.
Soft findings (odd durations, topics nothing references) are reported by
validate_bank() as warnings rather than load failures.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Iterable, Literal

# Observed clip duration envelope (seconds) for the warning check: clips are
# expected to run between 18 s and 1:14.
OBSERVED_DURATION_RANGE = (18, 74)

_TOKEN_RE = re.compile(r"^[a-z0-9](?:[a-z0-9-]{0,38}[a-z0-9])?$")


class BankError(Exception):
    """Base class for manifest load failures."""


class ParseError(BankError):
    """Manifest is malformed: bad JSON, wrong types, unknown keys, bad values."""


class EmptyBank(BankError):
    """Manifest contains zero clips."""


class DuplicateId(BankError):
    """A clip or interviewee id occurs more than once."""


class UnknownTopicRef(BankError):
    """A clip keyword is not in the declared topic vocabulary."""


class DanglingSpeaker(BankError):
    """A clip references an interviewee id that is not in the roster."""


def normalize_topic(raw: str) -> str:
    """Normalize a topic to its canonical token: lowercase, spaces -> hyphens.

    Raises ParseError if the result is not a valid token (1-40 chars of
    letters, digits and hyphens, not starting or ending with a hyphen).
    """
    token = re.sub(r"\s+", "-", raw.strip().lower())
    if not _TOKEN_RE.match(token):
        raise ParseError(f"invalid topic {raw!r} (normalized {token!r})")
    return token


def display_topic(token: str) -> str:
    """Human-facing form of a topic token (hyphens shown as spaces)."""
    return token.replace("-", " ")


@dataclass(frozen=True)
class Interviewee:
    id: str
    display_name: str
    role: str


@dataclass(frozen=True)
class Clip:
    """One tagged interview segment.

    duration_s is authoritative metadata (the media behind media_uri is never
    inspected); question_index is the clip's position in the shared question
    line and doubles as the narrative ordering key.
    """

    id: str
    interviewee_id: str
    duration_s: int
    keywords: frozenset[str]
    question_index: int
    media_uri: str
    excerpt: str | None = None


@dataclass(frozen=True)
class ClipBank:
    """Immutable, validated clip collection plus vocabulary and roster."""

    topics: frozenset[str]
    interviewees: tuple[Interviewee, ...]
    clips: tuple[Clip, ...]
    source_notes: str | None = None

    _clips_by_id: dict = field(init=False, repr=False, compare=False, default_factory=dict)
    _interviewees_by_id: dict = field(init=False, repr=False, compare=False, default_factory=dict)
    _clip_ids_by_topic: dict = field(init=False, repr=False, compare=False, default_factory=dict)

    def __post_init__(self):
        by_id = {c.id: c for c in self.clips}
        speakers = {p.id: p for p in self.interviewees}
        by_topic: dict[str, tuple[str, ...]] = {}
        for topic in self.topics:
            ids = sorted(c.id for c in self.clips if topic in c.keywords)
            by_topic[topic] = tuple(ids)
        object.__setattr__(self, "_clips_by_id", by_id)
        object.__setattr__(self, "_interviewees_by_id", speakers)
        object.__setattr__(self, "_clip_ids_by_topic", by_topic)

    def clip(self, clip_id: str) -> Clip:
        return self._clips_by_id[clip_id]

    def has_clip(self, clip_id: str) -> bool:
        return clip_id in self._clips_by_id

    def interviewee(self, interviewee_id: str) -> Interviewee:
        return self._interviewees_by_id[interviewee_id]

    def clips_for_topic(self, topic: str) -> tuple[Clip, ...]:
        """All clips tagged with the (normalized) topic, in id order."""
        return tuple(self._clips_by_id[i] for i in self._clip_ids_by_topic.get(topic, ()))

    def topics_display(self) -> list[str]:
        return sorted(display_topic(t) for t in self.topics)


@dataclass(frozen=True)
class BankStats:
    clip_count: int
    interviewee_count: int
    total_clip_duration_s: int
    per_topic_clip_counts: dict[str, int]
    per_speaker_clip_counts: dict[str, int]
    min_duration_s: int
    max_duration_s: int
    mean_duration_s: float


Severity = Literal["warning", "error"]


@dataclass(frozen=True)
class Finding:
    severity: Severity
    code: str
    subject: str
    message: str


def _require_keys(obj: dict, required: Iterable[str], optional: Iterable[str], where: str) -> None:
    allowed = set(required) | set(optional)
    for key in obj:
        if key not in allowed:
            raise ParseError(f"unknown key {key!r} in {where}")
    for key in required:
        if key not in obj:
            raise ParseError(f"missing key {key!r} in {where}")


def _expect_str(value: Any, where: str) -> str:
    if not isinstance(value, str) or not value:
        raise ParseError(f"{where} must be a non-empty string")
    return value


def _expect_int(value: Any, where: str, minimum: int) -> int:
    if type(value) is not int or value < minimum:
        raise ParseError(f"{where} must be an integer >= {minimum}")
    return value


def bank_from_dict(data: Any) -> ClipBank:
    """Build and validate a ClipBank from an already-parsed manifest document.

    Raises the same errors as load_bank; useful for tests and programmatic
    bank construction.
    """
    if not isinstance(data, dict):
        raise ParseError("manifest root must be a JSON object")
    _require_keys(data, ["topics", "interviewees", "clips"], ["source_notes"], "manifest root")

    raw_topics = data["topics"]
    if not isinstance(raw_topics, list):
        raise ParseError("'topics' must be an array of strings")
    topics: list[str] = []
    for raw in raw_topics:
        token = normalize_topic(_expect_str(raw, "topic"))
        if token in topics:
            raise ParseError(f"duplicate topic {token!r} in vocabulary")
        topics.append(token)
    if not topics:
        raise ParseError("topic vocabulary is empty")

    raw_people = data["interviewees"]
    if not isinstance(raw_people, list):
        raise ParseError("'interviewees' must be an array")
    people: list[Interviewee] = []
    seen_people: set[str] = set()
    for obj in raw_people:
        if not isinstance(obj, dict):
            raise ParseError("interviewee entries must be objects")
        _require_keys(obj, ["id", "display_name", "role"], [], "interviewee")
        pid = _expect_str(obj["id"], "interviewee id")
        if pid in seen_people:
            raise DuplicateId(f"duplicate interviewee id {pid!r}")
        seen_people.add(pid)
        people.append(
            Interviewee(
                id=pid,
                display_name=_expect_str(obj["display_name"], f"interviewee {pid!r} display_name"),
                role=_expect_str(obj["role"], f"interviewee {pid!r} role"),
            )
        )

    raw_clips = data["clips"]
    if not isinstance(raw_clips, list):
        raise ParseError("'clips' must be an array")
    if not raw_clips:
        raise EmptyBank("manifest contains zero clips")

    topic_set = set(topics)
    clips: list[Clip] = []
    seen_clips: set[str] = set()
    for obj in raw_clips:
        if not isinstance(obj, dict):
            raise ParseError("clip entries must be objects")
        _require_keys(
            obj,
            ["id", "interviewee_id", "duration_s", "keywords", "question_index", "media_uri"],
            ["excerpt"],
            "clip",
        )
        cid = _expect_str(obj["id"], "clip id")
        if cid in seen_clips:
            raise DuplicateId(f"duplicate clip id {cid!r}")
        seen_clips.add(cid)
        speaker = _expect_str(obj["interviewee_id"], f"clip {cid!r} interviewee_id")
        if speaker not in seen_people:
            raise DanglingSpeaker(f"clip {cid!r} references unknown interviewee {speaker!r}")
        raw_keywords = obj["keywords"]
        if not isinstance(raw_keywords, list) or not raw_keywords:
            raise ParseError(f"clip {cid!r} keywords must be a non-empty array")
        keywords = set()
        for raw in raw_keywords:
            token = normalize_topic(_expect_str(raw, f"clip {cid!r} keyword"))
            if token not in topic_set:
                raise UnknownTopicRef(f"clip {cid!r} keyword {token!r} not in topic vocabulary")
            keywords.add(token)
        excerpt = obj.get("excerpt")
        if excerpt is not None:
            excerpt = _expect_str(excerpt, f"clip {cid!r} excerpt")
        clips.append(
            Clip(
                id=cid,
                interviewee_id=speaker,
                duration_s=_expect_int(obj["duration_s"], f"clip {cid!r} duration_s", 1),
                keywords=frozenset(keywords),
                question_index=_expect_int(obj["question_index"], f"clip {cid!r} question_index", 0),
                media_uri=_expect_str(obj["media_uri"], f"clip {cid!r} media_uri"),
                excerpt=excerpt,
            )
        )

    source_notes = data.get("source_notes")
    if source_notes is not None:
        source_notes = _expect_str(source_notes, "source_notes")

    return ClipBank(
        topics=frozenset(topics),
        interviewees=tuple(people),
        clips=tuple(clips),
        source_notes=source_notes,
    )


def load_bank(manifest_path: str | Path) -> ClipBank:
    """Load, normalize and validate a clip-bank manifest from disk.

    Same file bytes always produce a structurally identical bank.  Raises
    ParseError / EmptyBank / DuplicateId / UnknownTopicRef / DanglingSpeaker
    on contract violations; I/O problems propagate as OSError.
    """
    text = Path(manifest_path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"manifest is not valid JSON: {exc}") from exc
    return bank_from_dict(data)


def validate_bank(bank: ClipBank) -> list[Finding]:
    """Report warning-level findings on a loaded bank.

    An empty report means the bank is fully conforming.  Load-time contract
    violations raise from load_bank instead; nothing here is ERROR severity.
    """
    findings: list[Finding] = []
    low, high = OBSERVED_DURATION_RANGE
    for clip in bank.clips:
        if not low <= clip.duration_s <= high:
            findings.append(
                Finding(
                    severity="warning",
                    code="DurationOutOfObservedRange",
                    subject=clip.id,
                    message=(
                        f"clip {clip.id!r} runs {clip.duration_s} s, "
                        f"outside the observed [{low}, {high}] s range"
                    ),
                )
            )
    referenced = set()
    for clip in bank.clips:
        referenced |= clip.keywords
    for topic in sorted(bank.topics - referenced):
        findings.append(
            Finding(
                severity="warning",
                code="DeadFilter",
                subject=topic,
                message=f"topic {display_topic(topic)!r} is offered but no clip carries it",
            )
        )
    return findings


def bank_stats(bank: ClipBank) -> BankStats:
    """Exact aggregates over the bank; recomputable from the raw clips."""
    durations = [c.duration_s for c in bank.clips]
    per_topic = {t: len(bank.clips_for_topic(t)) for t in sorted(bank.topics)}
    per_speaker = {p.id: 0 for p in bank.interviewees}
    for clip in bank.clips:
        per_speaker[clip.interviewee_id] += 1
    return BankStats(
        clip_count=len(bank.clips),
        interviewee_count=len(bank.interviewees),
        total_clip_duration_s=sum(durations),
        per_topic_clip_counts=per_topic,
        per_speaker_clip_counts=per_speaker,
        min_duration_s=min(durations),
        max_duration_s=max(durations),
        mean_duration_s=sum(durations) / len(durations),
    )


def schema_text() -> str:
    """The JSON Schema shipped for the manifest format."""
    return resources.files("docgen.schemas").joinpath("clip_bank.schema.json").read_text("utf-8")
