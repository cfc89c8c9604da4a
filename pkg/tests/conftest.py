import sys
from pathlib import Path

import pytest

from docgen import bank_from_dict, load_bank

REPO_ROOT = Path(__file__).resolve().parent.parent
HOUSING_BANK = REPO_ROOT / "fixtures" / "housing_bank.json"
DESK_BANK = REPO_ROOT / "fixtures" / "desk_bank.json"

sys.path.insert(0, str(REPO_ROOT / "tests"))


@pytest.fixture(scope="session")
def housing_bank():
    return load_bank(HOUSING_BANK)


@pytest.fixture(scope="session")
def desk_bank():
    return load_bank(DESK_BANK)


def make_bank(topics, clips, interviewees=None, **extra):
    """Build a small bank from terse clip tuples: (id, speaker, dur, keywords, qindex)."""
    speakers = sorted({c[1] for c in clips})
    if interviewees is None:
        interviewees = [
            {"id": s, "display_name": f"Speaker {s.upper()}", "role": "interviewee"} for s in speakers
        ]
    return bank_from_dict(
        {
            "topics": list(topics),
            "interviewees": interviewees,
            "clips": [
                {
                    "id": cid,
                    "interviewee_id": speaker,
                    "duration_s": duration,
                    "keywords": list(keywords),
                    "question_index": qindex,
                    "media_uri": f"media/{cid}.mp4",
                }
                for cid, speaker, duration, keywords, qindex in clips
            ],
            **extra,
        }
    )
