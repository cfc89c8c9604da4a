#!/usr/bin/env python3
"""Load a clip bank, check its health, and read its vital signs.

The bank is the single source of truth: a JSON manifest declaring the topic
vocabulary, the interviewee roster, and every tagged clip.  Loading validates
hard rules (unique ids, known speakers, keywords inside the vocabulary);
validate_bank() then reports soft findings like odd durations or topics that
no clip carries.
"""

from pathlib import Path

from docgen import bank_stats, load_bank, validate_bank

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def main() -> None:
    bank = load_bank(FIXTURES / "housing_bank.json")
    print(f"Loaded {len(bank.clips)} clips from {len(bank.interviewees)} interviewees.")
    print(f"Topic vocabulary: {', '.join(bank.topics_display())}")

    findings = validate_bank(bank)
    if findings:
        for finding in findings:
            print(f"  [{finding.severity}] {finding.code}: {finding.message}")
    else:
        print("Validation: clean (no warnings).")

    stats = bank_stats(bank)
    minutes, seconds = divmod(stats.total_clip_duration_s, 60)
    print(f"\nTotal material: {minutes} min {seconds} s across {stats.clip_count} clips")
    print(f"Durations: {stats.min_duration_s}-{stats.max_duration_s} s, mean {stats.mean_duration_s:.1f} s")
    print("\nClips per topic:")
    for topic, count in sorted(stats.per_topic_clip_counts.items()):
        print(f"  {topic.replace('-', ' '):20s} {count:3d}  {'#' * count}")


if __name__ == "__main__":
    main()
