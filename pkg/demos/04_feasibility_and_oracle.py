#!/usr/bin/env python3
"""When can a selection produce a documentary at all?

Thin pools make the duration window a real constraint.  feasible() answers
the existence question exactly (with a witness playlist or a reason), and
oracle_enumerate() lists every valid sequence outright: the exhaustive
ground truth the randomized generator is tested against.

Uses the small desk bank, where everything can be checked by hand.
"""

from pathlib import Path

from docgen import (
    FilterSelection,
    GenerationConstraints,
    feasible,
    generate,
    load_bank,
    oracle_enumerate,
)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def main() -> None:
    bank = load_bank(FIXTURES / "desk_bank.json")

    workable = FilterSelection.from_raw(["government", "families"])
    report = feasible(bank, workable)
    print(f"{workable.topics_display()}: feasible={report.feasible}, witness={report.witness}")

    oracle = oracle_enumerate(bank, workable)
    print(f"  the oracle counts {len(oracle)} valid sequences in total")
    doc = generate(bank, workable, None, seed=42)
    print(f"  seed 42 picks {doc.clip_ids()} ({doc.total_duration_s} s), in the oracle set: {doc.clip_ids() in oracle}")

    thin = FilterSelection.from_raw(["tourism"])
    report = feasible(bank, thin)
    print(f"\n{thin.topics_display()}: feasible={report.feasible}, reason={report.reason.value}")
    print("  (the bank's single tourism clip runs 45 s, far short of the 120 s floor)")

    tight = GenerationConstraints(min_total_s=40, max_total_s=50)
    report = feasible(bank, thin, tight)
    print(f"  with a [40, 50] s window instead: feasible={report.feasible}, witness={report.witness}")


if __name__ == "__main__":
    main()
