#!/usr/bin/env python3
"""Measure what a reconfiguring viewer actually sees.

Letting viewers filter by interest risks a narrow view: always the same
topics, always the same voices.  The session log records every regeneration;
the coverage report turns it into fractions of the topic vocabulary and the
speaker roster seen so far, plus how much consecutive cuts overlapped.

This demo simulates a viewer who regenerates ten times with 1-3 random
topics, then prints the coverage trajectory.
"""

from pathlib import Path

from docgen import (
    SessionLog,
    SimulationPolicy,
    coverage_report,
    load_bank,
    run_simulation,
)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def main() -> None:
    bank = load_bank(FIXTURES / "housing_bank.json")
    policy = SimulationPolicy(topics_per_selection=(1, 3), generations=10)
    log, final_report = run_simulation(bank, policy, seed=2024)

    print("gen  topics seen   speakers seen   overlap with previous")
    for n in range(1, len(log.entries) + 1):
        prefix = SessionLog(log.session_id, log.entries[:n])
        report = coverage_report(prefix, bank)
        overlap = report.mean_consecutive_overlap
        print(
            f"{n:3d}   {report.topic_fraction:7.0%}      {report.speaker_fraction:8.0%}"
            f"        {'-' if overlap is None else f'{overlap:.2f} (mean)'}"
        )

    print(
        f"\nAfter {final_report.generations} regenerations the viewer saw "
        f"{final_report.topics_viewed}/{final_report.vocabulary_size} topics, "
        f"{final_report.speakers_viewed}/{final_report.roster_size} speakers, "
        f"{final_report.distinct_clips_viewed} distinct clips."
    )


if __name__ == "__main__":
    main()
