#!/usr/bin/env python3
"""Regenerate fixtures/housing_bank.json, the demo clip bank.

The bank models fourteen studio interviews about housing pressure in a
fast-gentrifying city, cut into 120 clips of 18-74 seconds and hand-tagged
against a ten-topic vocabulary.  Generation is fully seeded so the committed
fixture is reproducible: rerunning this script yields byte-identical output.

Guarantees baked in:
  - every topic tags at least 20 clips (no dead filters, deep pools)
  - clip durations span exactly [18, 74] seconds
  - all fourteen speakers contribute (round-robin, 8-9 clips each)
"""

from __future__ import annotations

import json
from pathlib import Path

from docgen.rng import SplitMix64

SEED = 0x5EED_BA2E
TOPICS = [
    "affordable housing",
    "social conditions",
    "rentals",
    "government",
    "families",
    "gentrification",
    "developers",
    "tourism",
    "transportation",
    "universities",
]
INTERVIEWEES = [
    ("p01", "Marta Cardoso", "city housing official"),
    ("p02", "Jorge Almeida", "displaced resident"),
    ("p03", "Ines Tavares", "neighborhood association leader"),
    ("p04", "Ricardo Fonseca", "journalist"),
    ("p05", "Helena Duarte", "urban studies researcher"),
    ("p06", "Tiago Moreira", "property developer"),
    ("p07", "Ana Beatriz Lopes", "tenant union organizer"),
    ("p08", "Miguel Santana", "short-stay rental manager"),
    ("p09", "Catarina Melo", "social worker"),
    ("p10", "Paulo Estevao", "longtime shop owner"),
    ("p11", "Sofia Rocha", "architect"),
    ("p12", "Andre Pinho", "university student"),
    ("p13", "Luisa Barros", "retired teacher"),
    ("p14", "Nuno Carvalho", "tourism board member"),
]
QUESTION_COUNT = 12
CLIP_COUNT = 120
MIN_TOPIC_POOL = 20

EXCERPT_TEMPLATES = [
    "When people ask me about {topic}, I tell them to walk down my old street first.",
    "The change in {topic} happened faster than anyone at the city hall expected.",
    "For my neighbors, {topic} is not an abstract debate, it is the rent letter in the mailbox.",
    "I have studied {topic} for years and the last two surprised even me.",
    "Nobody wants to say it, but {topic} decides who gets to stay.",
    "We organized because {topic} was pushing families out one lease at a time.",
    "You can measure {topic} in closed groceries and new lockboxes on doors.",
    "My grandmother's building tells the whole story of {topic} in this city.",
    "If you want to understand {topic}, look at who rides the first morning bus.",
    "The investors saw {topic} as an opportunity; we lived it as an eviction notice.",
]


def build_bank() -> dict:
    rng = SplitMix64(SEED)
    clips = []
    keyword_sets: list[set[str]] = []

    for i in range(CLIP_COUNT):
        n_keywords = 1 + rng.below(3)
        keyword_sets.append(set(rng.sample(TOPICS, n_keywords)))

    # Deepen thin topics so every filter has a workable pool.
    counts = {t: sum(t in ks for ks in keyword_sets) for t in TOPICS}
    for topic in TOPICS:
        while counts[topic] < MIN_TOPIC_POOL:
            open_slots = [i for i, ks in enumerate(keyword_sets) if topic not in ks and len(ks) < 3]
            slot = open_slots[rng.below(len(open_slots))]
            keyword_sets[slot].add(topic)
            counts[topic] += 1

    for i in range(CLIP_COUNT):
        clip_id = f"c{i + 1:03d}"
        speaker_id = INTERVIEWEES[i % len(INTERVIEWEES)][0]
        duration = 18 + rng.below(57)
        if i == 0:
            duration = 18
        elif i == 1:
            duration = 74
        keywords = sorted(keyword_sets[i])
        template = EXCERPT_TEMPLATES[rng.below(len(EXCERPT_TEMPLATES))]
        clips.append(
            {
                "id": clip_id,
                "interviewee_id": speaker_id,
                "duration_s": duration,
                "keywords": keywords,
                "question_index": rng.below(QUESTION_COUNT),
                "media_uri": f"media/clips/{clip_id}.mp4",
                "excerpt": template.format(topic=keywords[0]),
            }
        )

    return {
        "topics": TOPICS,
        "interviewees": [
            {"id": pid, "display_name": name, "role": role} for pid, name, role in INTERVIEWEES
        ],
        "clips": clips,
        "source_notes": (
            "Demonstration bank: fourteen studio interviews on housing pressure in a "
            "fast-gentrifying European capital, cut to one answer per clip and hand-tagged. "
            "Every interview used one shared list of questions; a clip's question_index is "
            "that question's position in the list. Totals are a property of this bank, not a target."
        ),
    }


def main() -> None:
    out = Path(__file__).resolve().parent.parent / "fixtures" / "housing_bank.json"
    bank = build_bank()
    out.write_text(json.dumps(bank, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    durations = [c["duration_s"] for c in bank["clips"]]
    per_topic = {t: sum(t in c["keywords"] for c in bank["clips"]) for t in bank["topics"]}
    print(f"wrote {out}")
    print(f"clips={len(bank['clips'])} total_s={sum(durations)} span=[{min(durations)},{max(durations)}]")
    print("per-topic:", per_topic)


if __name__ == "__main__":
    main()
