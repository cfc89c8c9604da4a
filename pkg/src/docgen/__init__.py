"""docgen: viewer-configurable micro-documentaries from a tagged clip bank.

Load a validated bank of interview clips, let a viewer pick topics, and
assemble a short documentary by seeded randomized selection under duration,
speaker and coverage constraints.  Session analytics measure how much of the
topic and speaker space repeated regenerations actually exposed.
"""

from .analytics import (
    CoverageReport,
    EmptyLog,
    ForeignClip,
    LogEntry,
    SessionLog,
    SimulationPolicy,
    coverage_report,
    read_log,
    record_generation,
    run_simulation,
    simulate,
    write_log,
)
from .clipbank import (
    BankError,
    BankStats,
    Clip,
    ClipBank,
    DanglingSpeaker,
    DuplicateId,
    EmptyBank,
    Finding,
    Interviewee,
    ParseError,
    UnknownTopicRef,
    bank_from_dict,
    bank_stats,
    display_topic,
    load_bank,
    normalize_topic,
    validate_bank,
)
from .exports import (
    canonical_json_bytes,
    documentary_manifest,
    export_documentary,
    manifest_bytes,
    to_edl_csv,
    to_m3u,
)
from .generator import (
    Documentary,
    EmptySelection,
    FeasibilityReport,
    FilterSelection,
    GenerationConstraints,
    GenerationError,
    Infeasible,
    InfeasibleReason,
    PoolTooLarge,
    UnknownTopic,
    feasible,
    filter_candidates,
    generate,
    oracle_enumerate,
)

__version__ = "0.1.0"
