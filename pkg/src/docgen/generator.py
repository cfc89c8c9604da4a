"""Documentary assembly: seeded randomized selection under hard constraints.

A documentary is an ordered playlist of clips that (a) all match the viewer's
topic selection, (b) total between min_total_s and max_total_s, (c) never
repeat a clip, (d) cap how many clips any single speaker contributes, and
(e) when coverage is required, represent every selected topic at least once.
Playout order follows the shared interview question line (ascending
question_index), with ties shuffled by the seed.

Topic selections combine as a UNION: a clip qualifies if it carries any
selected topic.  The coverage requirement restores the intuition that every
chosen topic actually shows up in the result.

generate() is deterministic: the same (bank, selection, constraints, seed)
always yields the same clip sequence.  Randomness comes exclusively from the
SplitMix64 stream derived from the seed (see docs/determinism.md), restarted
with a derived sub-seed on each dead end.  feasible() answers the existence
question exactly by pruned exhaustive search on small candidate pools, and
oracle_enumerate() lists every valid sequence outright; exponential by
design, intended for desk-scale pools in tests.
"""

from __future__ import annotations

import itertools
import re
from collections import Counter
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from typing import Iterable

from .clipbank import Clip, ClipBank, display_topic
from .rng import MASK64, SplitMix64, derive_subseed

EXACT_SEARCH_CAP = 24
ORACLE_POOL_CAP = 12


class GenerationError(Exception):
    """Base class for selection/generation failures."""


class EmptySelection(GenerationError):
    """The selection contains no topics."""


class UnknownTopic(GenerationError):
    """A selected topic is not in the bank's vocabulary."""

    def __init__(self, topic: str):
        self.topic = topic
        super().__init__(f"unknown topic: {display_topic(topic)!r}")


class PoolTooLarge(GenerationError):
    """Candidate pool exceeds the exact-search (or oracle) cap."""


class InfeasibleReason(str, Enum):
    NO_CANDIDATES = "NoCandidates"
    INSUFFICIENT_DURATION = "InsufficientDuration"
    CANNOT_FIT_WINDOW = "CannotFitWindow"
    COVERAGE_IMPOSSIBLE = "CoverageImpossible"


class Infeasible(GenerationError):
    """No documentary satisfies the constraints for this selection.

    reason is an InfeasibleReason when infeasibility was proved (exact search
    or a sound bound); None when a large pool merely exhausted its restart
    budget without proof either way.
    """

    def __init__(self, reason: InfeasibleReason | None, detail: str):
        self.reason = reason
        self.detail = detail
        label = reason.value if reason is not None else "RestartsExhausted"
        super().__init__(f"{label}: {detail}")


_WS_RE = re.compile(r"\s+")


@dataclass(frozen=True)
class FilterSelection:
    """The viewer's chosen topics, stored as normalized tokens."""

    topics: frozenset[str]

    @classmethod
    def from_raw(cls, raw_topics: Iterable[str]) -> "FilterSelection":
        """Normalize user-supplied topic strings (case/whitespace lenient).

        Empty strings are dropped; vocabulary membership is checked later,
        when the selection meets a bank.
        """
        tokens = set()
        for raw in raw_topics:
            token = _WS_RE.sub("-", str(raw).strip().lower())
            if token:
                tokens.add(token)
        return cls(topics=frozenset(tokens))

    def topics_display(self) -> list[str]:
        return sorted(display_topic(t) for t in self.topics)


@dataclass(frozen=True)
class GenerationConstraints:
    min_total_s: int = 120
    max_total_s: int = 240
    max_clips_per_speaker: int = 2
    require_topic_coverage: bool = True
    max_restarts: int = 64

    def __post_init__(self):
        if not 0 < self.min_total_s <= self.max_total_s:
            raise ValueError("need 0 < min_total_s <= max_total_s")
        if self.max_clips_per_speaker < 1:
            raise ValueError("max_clips_per_speaker must be >= 1")
        if self.max_restarts < 1:
            raise ValueError("max_restarts must be >= 1")


@dataclass(frozen=True)
class Documentary:
    """A generated playlist plus the full provenance needed to replay it."""

    clips: tuple[Clip, ...]
    total_duration_s: int
    selection: FilterSelection
    seed: int
    constraints: GenerationConstraints
    generated_at: datetime = field(compare=False)

    def clip_ids(self) -> tuple[str, ...]:
        return tuple(c.id for c in self.clips)


@dataclass(frozen=True)
class FeasibilityReport:
    feasible: bool
    witness: tuple[str, ...] | None
    reason: InfeasibleReason | None


def _validated_selection(bank: ClipBank, selection: FilterSelection) -> frozenset[str]:
    if not selection.topics:
        raise EmptySelection("selection contains no topics")
    for topic in sorted(selection.topics):
        if topic not in bank.topics:
            raise UnknownTopic(topic)
    return selection.topics


def filter_candidates(bank: ClipBank, selection: FilterSelection) -> tuple[Clip, ...]:
    """Clips whose keywords intersect the selection (union over topics).

    Returned in clip-id order so downstream seeded choices are reproducible.
    """
    topics = _validated_selection(bank, selection)
    ids: set[str] = set()
    for topic in topics:
        ids.update(c.id for c in bank.clips_for_topic(topic))
    return tuple(bank.clip(i) for i in sorted(ids))


def _capped_duration_bound(pool: tuple[Clip, ...], cap: int) -> int:
    """Max achievable total when each speaker contributes at most cap clips."""
    by_speaker: dict[str, list[int]] = {}
    for clip in pool:
        by_speaker.setdefault(clip.interviewee_id, []).append(clip.duration_s)
    total = 0
    for durations in by_speaker.values():
        total += sum(sorted(durations, reverse=True)[:cap])
    return total


def _search_subset(
    pool: tuple[Clip, ...],
    constraints: GenerationConstraints,
    coverage: frozenset[str] | None,
) -> list[Clip] | None:
    """Find one subset meeting window + speaker caps (+ coverage), or None.

    Pruned depth-first search over the id-ordered pool; exact on any pool it
    is given, exponential in the worst case.
    """
    n = len(pool)
    suffix_sum = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix_sum[i] = suffix_sum[i + 1] + pool[i].duration_s
    suffix_topics: list[frozenset[str]] = [frozenset()] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix_topics[i] = suffix_topics[i + 1] | pool[i].keywords

    lo, hi = constraints.min_total_s, constraints.max_total_s
    cap = constraints.max_clips_per_speaker
    counts: Counter[str] = Counter()

    def dfs(i: int, total: int, uncovered: frozenset[str]) -> list[Clip] | None:
        if lo <= total <= hi and not uncovered:
            return []
        if i == n or total + suffix_sum[i] < lo:
            return None
        if uncovered and not uncovered <= suffix_topics[i]:
            return None
        clip = pool[i]
        if counts[clip.interviewee_id] < cap and total + clip.duration_s <= hi:
            counts[clip.interviewee_id] += 1
            rest = dfs(i + 1, total + clip.duration_s, uncovered - clip.keywords)
            counts[clip.interviewee_id] -= 1
            if rest is not None:
                return [clip] + rest
        return dfs(i + 1, total, uncovered)

    want = coverage if coverage is not None else frozenset()
    return dfs(0, 0, frozenset(want))


def feasible(
    bank: ClipBank,
    selection: FilterSelection,
    constraints: GenerationConstraints | None = None,
    exact_cap: int = EXACT_SEARCH_CAP,
) -> FeasibilityReport:
    """Exact answer to "can any clip subset satisfy every constraint?".

    Raises PoolTooLarge above exact_cap clips; large pools are arbitrated by
    generate()'s restart budget instead.  The witness, when present, is one
    valid documentary ordered by (question_index, clip id).
    """
    constraints = constraints or GenerationConstraints()
    pool = filter_candidates(bank, selection)
    if not pool:
        return FeasibilityReport(False, None, InfeasibleReason.NO_CANDIDATES)
    if len(pool) > exact_cap:
        raise PoolTooLarge(f"candidate pool has {len(pool)} clips, exact search capped at {exact_cap}")
    if sum(c.duration_s for c in pool) < constraints.min_total_s:
        return FeasibilityReport(False, None, InfeasibleReason.INSUFFICIENT_DURATION)

    fits_window = _search_subset(pool, constraints, coverage=None)
    if fits_window is None:
        return FeasibilityReport(False, None, InfeasibleReason.CANNOT_FIT_WINDOW)
    if constraints.require_topic_coverage:
        covered = _search_subset(pool, constraints, coverage=frozenset(selection.topics))
        if covered is None:
            return FeasibilityReport(False, None, InfeasibleReason.COVERAGE_IMPOSSIBLE)
        chosen = covered
    else:
        chosen = fits_window
    witness = tuple(c.id for c in sorted(chosen, key=lambda c: (c.question_index, c.id)))
    return FeasibilityReport(True, witness, None)


def _provable_reason(
    pool: tuple[Clip, ...],
    topics: frozenset[str],
    constraints: GenerationConstraints,
) -> InfeasibleReason | None:
    """Cheap sound infeasibility proofs, in the same precedence feasible() uses."""
    if not pool:
        return InfeasibleReason.NO_CANDIDATES
    if sum(c.duration_s for c in pool) < constraints.min_total_s:
        return InfeasibleReason.INSUFFICIENT_DURATION
    if min(c.duration_s for c in pool) > constraints.max_total_s:
        return InfeasibleReason.CANNOT_FIT_WINDOW
    if _capped_duration_bound(pool, constraints.max_clips_per_speaker) < constraints.min_total_s:
        return InfeasibleReason.CANNOT_FIT_WINDOW
    if constraints.require_topic_coverage:
        for topic in topics:
            if not any(topic in c.keywords for c in pool):
                return InfeasibleReason.COVERAGE_IMPOSSIBLE
    return None


def _assemble(
    pool: tuple[Clip, ...],
    topics: frozenset[str],
    constraints: GenerationConstraints,
    rng: SplitMix64,
) -> list[Clip] | None:
    """One randomized assembly attempt; None on a dead end."""
    cap = constraints.max_clips_per_speaker
    hi = constraints.max_total_s
    picked: list[Clip] = []
    used: set[str] = set()
    per_speaker: Counter[str] = Counter()
    total = 0

    def eligible(clip: Clip) -> bool:
        return (
            clip.id not in used
            and per_speaker[clip.interviewee_id] < cap
            and total + clip.duration_s <= hi
        )

    def take(clip: Clip) -> None:
        nonlocal total
        picked.append(clip)
        used.add(clip.id)
        per_speaker[clip.interviewee_id] += 1
        total += clip.duration_s

    if constraints.require_topic_coverage:
        order = sorted(topics)
        rng.shuffle(order)
        for topic in order:
            if any(topic in c.keywords for c in picked):
                continue
            candidates = [c for c in pool if topic in c.keywords and eligible(c)]
            if not candidates:
                return None
            take(rng.choice(candidates))

    while total < constraints.min_total_s:
        candidates = [c for c in pool if eligible(c)]
        if not candidates:
            return None
        fewest = min(per_speaker[c.interviewee_id] for c in candidates)
        preferred = [c for c in candidates if per_speaker[c.interviewee_id] == fewest]
        take(rng.choice(preferred))

    return picked


def _order_playlist(picked: list[Clip], rng: SplitMix64) -> tuple[Clip, ...]:
    """Ascending question_index; ties shuffled by the seeded stream."""
    groups: dict[int, list[Clip]] = {}
    for clip in picked:
        groups.setdefault(clip.question_index, []).append(clip)
    ordered: list[Clip] = []
    for index in sorted(groups):
        group = groups[index]
        rng.shuffle(group)
        ordered.extend(group)
    return tuple(ordered)


def generate(
    bank: ClipBank,
    selection: FilterSelection,
    constraints: GenerationConstraints | None = None,
    seed: int = 0,
) -> Documentary:
    """Assemble a documentary for the selection; deterministic per seed.

    Runs up to max_restarts randomized attempts (coverage pass, then fill
    pass, then ordering pass), each on a sub-seed derived from (seed,
    attempt).  If every attempt dead-ends, a small pool is settled exactly by
    feasible(); a large one raises Infeasible with whatever could be proved.
    """
    constraints = constraints or GenerationConstraints()
    if not 0 <= seed <= MASK64:
        raise ValueError("seed must be an unsigned 64-bit integer")
    topics = _validated_selection(bank, selection)
    pool = filter_candidates(bank, selection)

    proved = _provable_reason(pool, topics, constraints)
    if proved is not None:
        raise Infeasible(proved, f"no documentary possible for {sorted(topics)}")

    for attempt in range(constraints.max_restarts):
        rng = SplitMix64(derive_subseed(seed, attempt))
        picked = _assemble(pool, topics, constraints, rng)
        if picked is not None:
            return Documentary(
                clips=_order_playlist(picked, rng),
                total_duration_s=sum(c.duration_s for c in picked),
                selection=selection,
                seed=seed,
                constraints=constraints,
                generated_at=datetime.now(timezone.utc),
            )

    if len(pool) <= EXACT_SEARCH_CAP:
        report = feasible(bank, selection, constraints)
        if not report.feasible:
            raise Infeasible(report.reason, f"no documentary possible for {sorted(topics)}")
        rng = SplitMix64(derive_subseed(seed, constraints.max_restarts))
        witness = [bank.clip(i) for i in report.witness]
        return Documentary(
            clips=_order_playlist(witness, rng),
            total_duration_s=sum(c.duration_s for c in witness),
            selection=selection,
            seed=seed,
            constraints=constraints,
            generated_at=datetime.now(timezone.utc),
        )
    raise Infeasible(
        None,
        f"restart budget exhausted after {constraints.max_restarts} attempts "
        f"on a pool of {len(pool)} clips",
    )


def oracle_enumerate(
    bank: ClipBank,
    selection: FilterSelection,
    constraints: GenerationConstraints | None = None,
    max_pool: int = ORACLE_POOL_CAP,
) -> frozenset[tuple[str, ...]]:
    """Every valid clip-id sequence for the selection, by brute force.

    Exhaustively enumerates all candidate subsets and, for each valid subset,
    all playout orders that keep question_index non-decreasing (permutations
    within equal-index groups).  Exponential by design; raises PoolTooLarge
    beyond max_pool clips.  generate() may return exactly the members of this
    set and must fail exactly when it is empty.
    """
    constraints = constraints or GenerationConstraints()
    topics = _validated_selection(bank, selection)
    pool = filter_candidates(bank, selection)
    if len(pool) > max_pool:
        raise PoolTooLarge(f"candidate pool has {len(pool)} clips, oracle capped at {max_pool}")

    sequences: set[tuple[str, ...]] = set()
    for subset_bits in range(1, 1 << len(pool)):
        subset = [pool[i] for i in range(len(pool)) if subset_bits >> i & 1]
        total = sum(c.duration_s for c in subset)
        if not constraints.min_total_s <= total <= constraints.max_total_s:
            continue
        speaker_counts = Counter(c.interviewee_id for c in subset)
        if any(n > constraints.max_clips_per_speaker for n in speaker_counts.values()):
            continue
        if constraints.require_topic_coverage:
            carried = frozenset().union(*(c.keywords for c in subset))
            if not topics <= carried:
                continue
        groups: dict[int, list[Clip]] = {}
        for clip in subset:
            groups.setdefault(clip.question_index, []).append(clip)
        per_group_orders = [
            list(itertools.permutations(groups[index])) for index in sorted(groups)
        ]
        for combo in itertools.product(*per_group_orders):
            sequences.add(tuple(c.id for c in itertools.chain.from_iterable(combo)))
    return frozenset(sequences)
