"""Headless operation: validate banks, report stats, cut playlists, simulate, serve.

Machine-readable output goes to stdout, diagnostics to stderr.  Exit codes:
0 ok, 1 bank validation errors, 2 generation impossible (unknown topic,
empty selection, infeasible), 3 I/O problems.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from . import analytics
from .clipbank import BankError, bank_stats, load_bank, validate_bank
from .exports import EXPORT_FORMATS, canonical_json_bytes, export_documentary
from .generator import FilterSelection, GenerationConstraints, GenerationError, generate
from .rng import MASK64

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_INFEASIBLE = 2
EXIT_IO = 3


def _seed_arg(value: str) -> int:
    seed = int(value)
    if not 0 <= seed <= MASK64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return seed


def _range_arg(value: str) -> tuple[int, int]:
    """Parse 'lo..hi' (or a single integer) into an inclusive range."""
    parts = value.split("..") if ".." in value else [value, value]
    try:
        lo, hi = int(parts[0]), int(parts[1])
    except (ValueError, IndexError):
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {value!r}")
    if not 1 <= lo <= hi:
        raise argparse.ArgumentTypeError("range must satisfy 1 <= lo <= hi")
    return lo, hi


def _topics_arg(value: str) -> list[str]:
    return [part for part in (p.strip() for p in value.split(",")) if part]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="docgen", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="load a manifest and report findings")
    p_validate.add_argument("manifest", type=Path)

    p_stats = sub.add_parser("stats", help="print bank statistics as JSON")
    p_stats.add_argument("manifest", type=Path)

    p_generate = sub.add_parser("generate", help="cut a documentary playlist")
    p_generate.add_argument("manifest", type=Path)
    p_generate.add_argument("--topics", type=_topics_arg, required=True, metavar="A,B,...")
    p_generate.add_argument("--seed", type=_seed_arg, default=None)
    p_generate.add_argument("--format", choices=EXPORT_FORMATS, default="json")
    p_generate.add_argument("--output", "-o", type=Path, default=None, help="write to a file instead of stdout")
    p_generate.add_argument("--min-total", type=int, default=None, metavar="SECONDS")
    p_generate.add_argument("--max-total", type=int, default=None, metavar="SECONDS")
    p_generate.add_argument("--max-per-speaker", type=int, default=None, metavar="N")
    p_generate.add_argument("--no-topic-coverage", action="store_true")
    p_generate.add_argument("--max-restarts", type=int, default=None, metavar="N")

    p_simulate = sub.add_parser("simulate", help="run a simulated reconfiguring session")
    p_simulate.add_argument("manifest", type=Path)
    p_simulate.add_argument("--generations", type=int, required=True, metavar="N")
    p_simulate.add_argument("--topics-per", type=_range_arg, default=(1, 3), metavar="LO..HI")
    p_simulate.add_argument("--seed", type=_seed_arg, default=0)
    p_simulate.add_argument("--log", type=Path, default=None, help="also write the session log (NDJSON)")

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("manifest", type=Path)
    p_serve.add_argument("--listen", default="127.0.0.1:8000", metavar="HOST:PORT")
    p_serve.add_argument("--session-dir", type=Path, default=Path("sessions"))
    p_serve.add_argument("--media-root", type=Path, default=None)
    p_serve.add_argument("--ui", type=Path, default=None, help="static directory for the web UI")

    return parser


def _emit(data: bytes, output: Path | None) -> None:
    if output is None:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        output.write_bytes(data)


def _constraints_from_args(args: argparse.Namespace) -> GenerationConstraints:
    constraints = GenerationConstraints()
    patch = {}
    if args.min_total is not None:
        patch["min_total_s"] = args.min_total
    if args.max_total is not None:
        patch["max_total_s"] = args.max_total
    if args.max_per_speaker is not None:
        patch["max_clips_per_speaker"] = args.max_per_speaker
    if args.no_topic_coverage:
        patch["require_topic_coverage"] = False
    if args.max_restarts is not None:
        patch["max_restarts"] = args.max_restarts
    return replace(constraints, **patch)


def cmd_validate(args: argparse.Namespace) -> int:
    findings = validate_bank(load_bank(args.manifest))
    payload = {
        "findings": [
            {"severity": f.severity, "code": f.code, "subject": f.subject, "message": f.message}
            for f in findings
        ]
    }
    _emit(canonical_json_bytes(payload), None)
    return EXIT_OK


def cmd_stats(args: argparse.Namespace) -> int:
    stats = bank_stats(load_bank(args.manifest))
    payload = {
        "clip_count": stats.clip_count,
        "interviewee_count": stats.interviewee_count,
        "total_clip_duration_s": stats.total_clip_duration_s,
        "per_topic_clip_counts": stats.per_topic_clip_counts,
        "per_speaker_clip_counts": stats.per_speaker_clip_counts,
        "min_duration_s": stats.min_duration_s,
        "max_duration_s": stats.max_duration_s,
        "mean_duration_s": stats.mean_duration_s,
    }
    _emit(canonical_json_bytes(payload), None)
    return EXIT_OK


def cmd_generate(args: argparse.Namespace) -> int:
    import secrets

    bank = load_bank(args.manifest)
    seed = args.seed if args.seed is not None else secrets.randbits(64)
    constraints = _constraints_from_args(args)
    doc = generate(bank, FilterSelection.from_raw(args.topics), constraints, seed)
    _emit(export_documentary(doc, bank, args.format), args.output)
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    bank = load_bank(args.manifest)
    policy = analytics.SimulationPolicy(
        topics_per_selection=args.topics_per, generations=args.generations
    )
    log, report = analytics.run_simulation(bank, policy, args.seed)
    if args.log is not None:
        analytics.write_log(log, args.log)
    _emit(canonical_json_bytes(report.to_json_dict()), None)
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    from .service import ServiceConfig, resolve_bank_path, run_server

    config = ServiceConfig(
        bank_path=resolve_bank_path(args.manifest),
        listen_address=args.listen,
        media_root=args.media_root,
        session_dir=args.session_dir,
        ui_root=args.ui,
    )
    run_server(config)
    return EXIT_OK


_COMMANDS = {
    "validate": cmd_validate,
    "stats": cmd_stats,
    "generate": cmd_generate,
    "simulate": cmd_simulate,
    "serve": cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except BankError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except GenerationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
