#!/usr/bin/env python3
"""Cut a short documentary: pick topics, pick a seed, get a playlist.

The generator unions the candidate pools of the selected topics, then
assembles a 2-4 minute sequence: every selected topic represented, no clip
twice, at most two clips per speaker, ordered along the shared interview
question line.  The seed makes the cut replayable; change it and the same
selection tells the story through different voices.
"""

from pathlib import Path

from docgen import FilterSelection, generate, load_bank, to_edl_csv, to_m3u

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def describe(doc, bank) -> None:
    minutes, seconds = divmod(doc.total_duration_s, 60)
    print(f"  seed {doc.seed}: {len(doc.clips)} clips, {minutes}:{seconds:02d}")
    for clip in doc.clips:
        speaker = bank.interviewee(clip.interviewee_id)
        tags = ", ".join(sorted(k.replace("-", " ") for k in clip.keywords))
        print(f"    q{clip.question_index:<2d} {clip.duration_s:3d}s  {speaker.display_name:18s} [{tags}]")


def main() -> None:
    bank = load_bank(FIXTURES / "housing_bank.json")
    selection = FilterSelection.from_raw(["gentrification", "tourism"])
    print(f"Selection: {', '.join(selection.topics_display())}\n")

    for seed in (7, 8):
        describe(generate(bank, selection, None, seed), bank)
        print()

    doc = generate(bank, selection, None, seed=7)
    out_dir = Path(__file__).resolve().parent / "out"
    out_dir.mkdir(exist_ok=True)
    (out_dir / "cut.m3u").write_text(to_m3u(doc, bank))
    (out_dir / "cut.edl.csv").write_text(to_edl_csv(doc, bank))
    print(f"Wrote {out_dir / 'cut.m3u'} and {out_dir / 'cut.edl.csv'}")


if __name__ == "__main__":
    main()
