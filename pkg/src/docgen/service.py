"""HTTP facade over the bank, the generator, and session analytics.

Handlers are thin adapters: every response body is reproducible by calling
the underlying library function on the same inputs.  The documentary endpoint
returns the canonical manifest bytes unchanged (the session token travels in
the X-Session-Id header and a cookie, not the body), which is what makes
shared cuts replayable and lets the test suite compare the library, CLI and
HTTP paths byte for byte.

Sessions are client-initiated opaque tokens; no accounts, no auth.  Each
session's generations append to one newline-delimited JSON file under
session_dir, serialized per session, so concurrent generations never tear a
log line.
"""

from __future__ import annotations

import json
import os
import re
import secrets
import threading
import uuid
from dataclasses import dataclass, replace
from datetime import datetime, timedelta
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, ConfigDict, Field

from . import analytics
from .clipbank import ClipBank, bank_stats, display_topic, load_bank
from .exports import canonical_json_bytes, manifest_bytes
from .generator import (
    EmptySelection,
    FilterSelection,
    GenerationConstraints,
    Infeasible,
    UnknownTopic,
    generate,
)
from .rng import MASK64

BANK_PATH_ENV = "DOCGEN_BANK_PATH"
SESSION_COOKIE = "docgen_session"
SESSION_HEADER = "X-Session-Id"

_SESSION_TOKEN_RE = re.compile(r"^[A-Za-z0-9_-]{1,64}$")


@dataclass(frozen=True)
class ServiceConfig:
    bank_path: Path
    listen_address: str = "127.0.0.1:8000"
    media_root: Path | None = None
    session_dir: Path = Path("sessions")
    defaults: GenerationConstraints = GenerationConstraints()
    ui_root: Path | None = None

    @property
    def host(self) -> str:
        return self.listen_address.rsplit(":", 1)[0]

    @property
    def port(self) -> int:
        return int(self.listen_address.rsplit(":", 1)[1])


def resolve_bank_path(path: str | Path) -> Path:
    """The configured manifest path, unless DOCGEN_BANK_PATH overrides it."""
    return Path(os.environ.get(BANK_PATH_ENV) or path)


class SessionStore:
    """Per-session NDJSON logs with serialized appends."""

    def __init__(self, directory: Path):
        self.directory = directory
        self.directory.mkdir(parents=True, exist_ok=True)
        self._locks: dict[str, threading.Lock] = {}
        self._tails: dict[str, datetime] = {}
        self._registry_lock = threading.Lock()

    def _lock_for(self, session_id: str) -> threading.Lock:
        with self._registry_lock:
            return self._locks.setdefault(session_id, threading.Lock())

    def path_for(self, session_id: str) -> Path:
        return self.directory / f"{session_id}.ndjson"

    def append(self, session_id: str, entry: analytics.LogEntry) -> None:
        with self._lock_for(session_id):
            tail = self._tails.get(session_id)
            if tail is None:
                existing = self.load(session_id)
                if existing is not None and existing.entries:
                    tail = existing.entries[-1].timestamp
            # Keep the log strictly time-ordered even at clock resolution.
            if tail is not None and entry.timestamp <= tail:
                entry = replace(entry, timestamp=tail + timedelta(microseconds=1))
            self._tails[session_id] = entry.timestamp
            analytics.append_entry(self.path_for(session_id), entry)

    def load(self, session_id: str) -> analytics.SessionLog | None:
        path = self.path_for(session_id)
        if not path.exists():
            return None
        return analytics.read_log(path, session_id)


class ConstraintOverrides(BaseModel):
    model_config = ConfigDict(extra="forbid")
    min_total_s: int | None = None
    max_total_s: int | None = None
    max_clips_per_speaker: int | None = None
    require_topic_coverage: bool | None = None
    max_restarts: int | None = None


class GenerateRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    topics: list[str]
    seed: int | None = Field(default=None, ge=0, le=MASK64)
    constraints: ConstraintOverrides | None = None


def _merge_constraints(
    defaults: GenerationConstraints, overrides: ConstraintOverrides | None
) -> GenerationConstraints:
    if overrides is None:
        return defaults
    patch = {k: v for k, v in overrides.model_dump().items() if v is not None}
    return replace(defaults, **patch)


def create_app(config: ServiceConfig) -> FastAPI:
    bank: ClipBank = load_bank(config.bank_path)
    raw_clips: dict[str, dict] = {
        c["id"]: c for c in json.loads(Path(config.bank_path).read_text("utf-8"))["clips"]
    }
    stats = bank_stats(bank)
    sessions = SessionStore(Path(config.session_dir))

    app = FastAPI(title="docgen", docs_url=None, redoc_url=None)
    app.state.bank = bank
    app.state.config = config

    @app.exception_handler(RequestValidationError)
    async def malformed_body(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"error": "MalformedRequest", "detail": exc.errors()})

    def canonical(payload, status: int = 200, headers: dict | None = None) -> Response:
        return Response(
            content=canonical_json_bytes(payload),
            status_code=status,
            media_type="application/json",
            headers=headers,
        )

    @app.get("/api/topics")
    def topics() -> Response:
        per_topic = stats.per_topic_clip_counts
        payload = [
            {"topic": display_topic(t), "clip_count": per_topic[t]} for t in sorted(per_topic)
        ]
        return canonical(payload)

    @app.get("/api/clips/{clip_id}")
    def clip(clip_id: str) -> Response:
        record = raw_clips.get(clip_id)
        if record is None:
            return canonical({"error": "UnknownClip", "clip_id": clip_id}, status=404)
        return canonical(record)

    @app.post("/api/generate")
    def generate_documentary(request: GenerateRequest, http_request: Request) -> Response:
        session_id = http_request.headers.get(SESSION_HEADER) or http_request.cookies.get(SESSION_COOKIE)
        if session_id is not None and not _SESSION_TOKEN_RE.match(session_id):
            return canonical({"error": "BadSessionToken"}, status=400)
        if session_id is None:
            session_id = uuid.uuid4().hex

        try:
            constraints = _merge_constraints(config.defaults, request.constraints)
        except ValueError as exc:
            return canonical({"error": "BadConstraints", "detail": str(exc)}, status=400)
        seed = request.seed if request.seed is not None else secrets.randbits(64)
        selection = FilterSelection.from_raw(request.topics)
        try:
            doc = generate(bank, selection, constraints, seed)
        except EmptySelection as exc:
            return canonical({"error": "EmptySelection", "detail": str(exc)}, status=400)
        except UnknownTopic as exc:
            return canonical({"error": "UnknownTopic", "topic": display_topic(exc.topic)}, status=404)
        except Infeasible as exc:
            return canonical(
                {
                    "error": "Infeasible",
                    "reason": exc.reason.value if exc.reason is not None else None,
                    "detail": exc.detail,
                },
                status=422,
            )

        entry = analytics.LogEntry(
            timestamp=doc.generated_at,
            topics=doc.selection.topics,
            seed=doc.seed,
            clip_ids=doc.clip_ids(),
            total_duration_s=doc.total_duration_s,
        )
        sessions.append(session_id, entry)

        response = Response(
            content=manifest_bytes(doc, bank),
            media_type="application/json",
            headers={SESSION_HEADER: session_id},
        )
        response.set_cookie(SESSION_COOKIE, session_id, samesite="lax")
        return response

    @app.get("/api/sessions/{session_id}/coverage")
    def session_coverage(session_id: str) -> Response:
        log = sessions.load(session_id) if _SESSION_TOKEN_RE.match(session_id) else None
        if log is None or not log.entries:
            return canonical({"error": "UnknownSession", "session_id": session_id}, status=404)
        report = analytics.coverage_report(log, bank)
        return canonical(report.to_json_dict())

    @app.get("/api/sessions/{session_id}/log")
    def session_log(session_id: str) -> Response:
        log = sessions.load(session_id) if _SESSION_TOKEN_RE.match(session_id) else None
        if log is None:
            return canonical({"error": "UnknownSession", "session_id": session_id}, status=404)
        entries = [e.to_json_dict() for e in log.entries]
        return canonical({"session_id": session_id, "entries": entries})

    if config.media_root is not None:
        app.mount("/media", StaticFiles(directory=config.media_root), name="media")
    if config.ui_root is not None:
        app.mount("/", StaticFiles(directory=config.ui_root, html=True), name="ui")

    return app


def run_server(config: ServiceConfig) -> None:
    import uvicorn

    app = create_app(config)
    uvicorn.run(app, host=config.host, port=config.port, log_level="info")
