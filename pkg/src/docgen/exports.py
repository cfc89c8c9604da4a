"""Playlist export formats for a generated documentary.

The JSON manifest is the canonical interchange form: the same (bank,
selection, constraints, seed) must produce byte-identical manifests whether
they travel through the library, the CLI, or the HTTP service.  Canonical
means UTF-8, lexicographically sorted keys, compact separators, and a single
trailing newline; the wall-clock generation time is deliberately not part of
the manifest so replays compare equal.
"""

from __future__ import annotations

import csv
import io
import json

from .clipbank import ClipBank, display_topic
from .generator import Documentary


def documentary_manifest(doc: Documentary, bank: ClipBank) -> dict:
    """The manifest as a plain dict (clips in playout order)."""
    clips = []
    for clip in doc.clips:
        entry = {
            "id": clip.id,
            "interviewee_id": clip.interviewee_id,
            "interviewee_name": bank.interviewee(clip.interviewee_id).display_name,
            "duration_s": clip.duration_s,
            "question_index": clip.question_index,
            "keywords": sorted(display_topic(k) for k in clip.keywords),
            "media_uri": clip.media_uri,
        }
        if clip.excerpt is not None:
            entry["excerpt"] = clip.excerpt
        clips.append(entry)
    return {
        "seed": doc.seed,
        "selection": {"topics": doc.selection.topics_display()},
        "constraints": {
            "min_total_s": doc.constraints.min_total_s,
            "max_total_s": doc.constraints.max_total_s,
            "max_clips_per_speaker": doc.constraints.max_clips_per_speaker,
            "require_topic_coverage": doc.constraints.require_topic_coverage,
            "max_restarts": doc.constraints.max_restarts,
        },
        "total_duration_s": doc.total_duration_s,
        "clips": clips,
    }


def canonical_json_bytes(payload) -> bytes:
    """Canonical JSON encoding: sorted keys, compact, UTF-8, trailing newline."""
    return (json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n").encode("utf-8")


def manifest_bytes(doc: Documentary, bank: ClipBank) -> bytes:
    return canonical_json_bytes(documentary_manifest(doc, bank))


def to_m3u(doc: Documentary, bank: ClipBank) -> str:
    """Extended M3U: one #EXTINF line (duration, speaker + clip id) per entry."""
    lines = ["#EXTM3U"]
    for clip in doc.clips:
        name = bank.interviewee(clip.interviewee_id).display_name
        lines.append(f"#EXTINF:{clip.duration_s},{name} ({clip.id})")
        lines.append(clip.media_uri)
    return "\n".join(lines) + "\n"


def to_edl_csv(doc: Documentary, bank: ClipBank) -> str:
    """Edit-decision-list CSV: clip_id, interviewee, start_order, duration_s."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["clip_id", "interviewee", "start_order", "duration_s"])
    for position, clip in enumerate(doc.clips, start=1):
        writer.writerow(
            [clip.id, bank.interviewee(clip.interviewee_id).display_name, position, clip.duration_s]
        )
    return buffer.getvalue()


EXPORT_FORMATS = ("json", "m3u", "edl")


def export_documentary(doc: Documentary, bank: ClipBank, fmt: str) -> bytes:
    if fmt == "json":
        return manifest_bytes(doc, bank)
    if fmt == "m3u":
        return to_m3u(doc, bank).encode("utf-8")
    if fmt == "edl":
        return to_edl_csv(doc, bank).encode("utf-8")
    raise ValueError(f"unknown export format {fmt!r} (expected one of {', '.join(EXPORT_FORMATS)})")
