"""Session logging and exposure analytics.

A reconfiguring viewer regenerates their documentary over and over; each
regeneration lands in an append-only session log.  The coverage report then
answers the question the single-feed experience raises: across everything
this session generated, how much of the topic space and the speaker roster
did the viewer actually see, and how much of each cut repeated the last one?

Logs persist as newline-delimited JSON (one entry per line) so a crash loses
at most the in-flight entry.  Reports are pure functions of (log, bank).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from datetime import datetime, timedelta, timezone
from pathlib import Path

from .clipbank import ClipBank, display_topic
from .generator import (
    Documentary,
    FilterSelection,
    GenerationConstraints,
    Infeasible,
    generate,
)
from .rng import SplitMix64

SIMULATED_EPOCH = datetime(2000, 1, 1, tzinfo=timezone.utc)


class ForeignClip(Exception):
    """A log entry or documentary references a clip the bank does not have."""


class EmptyLog(Exception):
    """Coverage asked of a session with no recorded generations."""


@dataclass(frozen=True)
class LogEntry:
    timestamp: datetime
    topics: frozenset[str]
    seed: int
    clip_ids: tuple[str, ...]
    total_duration_s: int

    def to_json_dict(self) -> dict:
        return {
            "timestamp": self.timestamp.isoformat(),
            "topics": sorted(display_topic(t) for t in self.topics),
            "seed": self.seed,
            "clip_ids": list(self.clip_ids),
            "total_duration_s": self.total_duration_s,
        }


@dataclass(frozen=True)
class SessionLog:
    """Append-only record of one session's generations, strictly time-ordered."""

    session_id: str
    entries: tuple[LogEntry, ...] = ()


@dataclass(frozen=True)
class CoverageReport:
    generations: int
    skipped: int
    distinct_clips_viewed: int
    topics_viewed: int
    vocabulary_size: int
    speakers_viewed: int
    roster_size: int
    mean_consecutive_overlap: float | None

    @property
    def topic_fraction(self) -> float:
        return self.topics_viewed / self.vocabulary_size

    @property
    def speaker_fraction(self) -> float:
        return self.speakers_viewed / self.roster_size

    def to_json_dict(self) -> dict:
        return {
            "generations": self.generations,
            "skipped": self.skipped,
            "distinct_clips_viewed": self.distinct_clips_viewed,
            "topics_viewed": self.topics_viewed,
            "vocabulary_size": self.vocabulary_size,
            "topic_fraction": self.topic_fraction,
            "speakers_viewed": self.speakers_viewed,
            "roster_size": self.roster_size,
            "speaker_fraction": self.speaker_fraction,
            "mean_consecutive_overlap": self.mean_consecutive_overlap,
        }


def record_generation(
    log: SessionLog,
    doc: Documentary,
    bank: ClipBank,
    timestamp: datetime | None = None,
) -> SessionLog:
    """Extend the log by one entry; prior entries are untouched.

    Timestamps stay strictly increasing: an entry arriving within the clock's
    resolution of the previous one is nudged forward a microsecond.
    """
    for clip in doc.clips:
        if not bank.has_clip(clip.id):
            raise ForeignClip(f"documentary references unknown clip {clip.id!r}")
    when = timestamp if timestamp is not None else doc.generated_at
    if log.entries and when <= log.entries[-1].timestamp:
        when = log.entries[-1].timestamp + timedelta(microseconds=1)
    entry = LogEntry(
        timestamp=when,
        topics=doc.selection.topics,
        seed=doc.seed,
        clip_ids=doc.clip_ids(),
        total_duration_s=doc.total_duration_s,
    )
    return replace(log, entries=log.entries + (entry,))


def _jaccard(a: set[str], b: set[str]) -> float:
    union = a | b
    return len(a & b) / len(union) if union else 1.0


def coverage_report(log: SessionLog, bank: ClipBank, skipped: int = 0) -> CoverageReport:
    """Exact exposure aggregates for the session; raises EmptyLog on none."""
    if not log.entries:
        raise EmptyLog(f"session {log.session_id!r} has no generations")
    clip_sets = []
    for entry in log.entries:
        for clip_id in entry.clip_ids:
            if not bank.has_clip(clip_id):
                raise ForeignClip(f"log entry references unknown clip {clip_id!r}")
        clip_sets.append(set(entry.clip_ids))
    all_clips = set().union(*clip_sets)
    topics_seen = set()
    speakers_seen = set()
    for clip_id in all_clips:
        clip = bank.clip(clip_id)
        topics_seen |= clip.keywords
        speakers_seen.add(clip.interviewee_id)
    overlaps = [
        _jaccard(clip_sets[i], clip_sets[i + 1]) for i in range(len(clip_sets) - 1)
    ]
    return CoverageReport(
        generations=len(log.entries),
        skipped=skipped,
        distinct_clips_viewed=len(all_clips),
        topics_viewed=len(topics_seen),
        vocabulary_size=len(bank.topics),
        speakers_viewed=len(speakers_seen),
        roster_size=len(bank.interviewees),
        mean_consecutive_overlap=sum(overlaps) / len(overlaps) if overlaps else None,
    )


# --- NDJSON persistence ---------------------------------------------------


def entry_line(entry: LogEntry) -> bytes:
    return (json.dumps(entry.to_json_dict(), sort_keys=True, separators=(",", ":")) + "\n").encode("utf-8")


def append_entry(path: str | Path, entry: LogEntry) -> None:
    with open(path, "ab") as fh:
        fh.write(entry_line(entry))


def write_log(log: SessionLog, path: str | Path) -> None:
    with open(path, "wb") as fh:
        for entry in log.entries:
            fh.write(entry_line(entry))


def read_log(path: str | Path, session_id: str) -> SessionLog:
    """Rebuild a SessionLog from its NDJSON file."""
    entries = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        obj = json.loads(line)
        entries.append(
            LogEntry(
                timestamp=datetime.fromisoformat(obj["timestamp"]),
                topics=FilterSelection.from_raw(obj["topics"]).topics,
                seed=obj["seed"],
                clip_ids=tuple(obj["clip_ids"]),
                total_duration_s=obj["total_duration_s"],
            )
        )
    return SessionLog(session_id=session_id, entries=tuple(entries))


# --- Simulated viewers -----------------------------------------------------


@dataclass(frozen=True)
class SimulationPolicy:
    """Uniform random viewer: selections of topics_per_selection[0]..[1] topics."""

    topics_per_selection: tuple[int, int] = (1, 3)
    generations: int = 10

    def __post_init__(self):
        lo, hi = self.topics_per_selection
        if not 1 <= lo <= hi:
            raise ValueError("topics_per_selection must satisfy 1 <= lo <= hi")
        if self.generations < 1:
            raise ValueError("generations must be >= 1")


def run_simulation(
    bank: ClipBank,
    policy: SimulationPolicy,
    seed: int,
    constraints: GenerationConstraints | None = None,
) -> tuple[SessionLog, CoverageReport]:
    """Run the policy for N generations in a fresh session; deterministic per seed.

    Infeasible generations are skipped (and counted); entry timestamps are
    synthetic (epoch + k seconds) so identical seeds reproduce identical logs
    byte for byte.
    """
    constraints = constraints or GenerationConstraints()
    rng = SplitMix64(seed)
    vocabulary = sorted(bank.topics)
    lo, hi = policy.topics_per_selection
    log = SessionLog(session_id=f"sim-{seed:016x}")
    skipped = 0
    for k in range(policy.generations):
        size = min(lo + rng.below(hi - lo + 1), len(vocabulary))
        chosen = rng.sample(vocabulary, size)
        gen_seed = rng.next_u64()
        try:
            doc = generate(bank, FilterSelection(frozenset(chosen)), constraints, gen_seed)
        except Infeasible:
            skipped += 1
            continue
        log = record_generation(log, doc, bank, timestamp=SIMULATED_EPOCH + timedelta(seconds=k))
    report = coverage_report(log, bank, skipped=skipped) if log.entries else CoverageReport(
        generations=0,
        skipped=skipped,
        distinct_clips_viewed=0,
        topics_viewed=0,
        vocabulary_size=len(bank.topics),
        speakers_viewed=0,
        roster_size=len(bank.interviewees),
        mean_consecutive_overlap=None,
    )
    return log, report


def simulate(
    bank: ClipBank,
    policy: SimulationPolicy,
    seed: int,
    constraints: GenerationConstraints | None = None,
) -> CoverageReport:
    """Coverage report of a simulated reconfiguring session (see run_simulation)."""
    _, report = run_simulation(bank, policy, seed, constraints)
    return report
