"""CLI contract: wrappers over the modules, exit codes, byte-stable output."""

import json
import subprocess
import sys

from docgen.cli import main

from conftest import DESK_BANK, HOUSING_BANK, REPO_ROOT


def run_cli(*argv):
    """In-process invocation; returns (exit_code, stdout_bytes)."""
    import contextlib
    import io

    buffer = io.BytesIO()

    class _Stdout:
        buffer = None

        def write(self, s):
            buffer.write(s.encode())

        def flush(self):
            pass

    fake = _Stdout()
    fake.buffer = buffer
    with contextlib.redirect_stdout(fake):
        code = main(list(argv))
    return code, buffer.getvalue()


def run_cli_subprocess(*argv):
    proc = subprocess.run(
        [sys.executable, "-m", "docgen", *argv],
        capture_output=True,
        cwd=REPO_ROOT,
    )
    return proc.returncode, proc.stdout, proc.stderr


def test_validate_conforming_fixture_exit_0_empty_report():
    code, out = run_cli("validate", str(HOUSING_BANK))
    assert code == 0
    assert json.loads(out) == {"findings": []}


def test_validate_reports_warnings(tmp_path):
    manifest = json.loads(HOUSING_BANK.read_text())
    manifest["clips"][0]["duration_s"] = 90
    path = tmp_path / "bank.json"
    path.write_text(json.dumps(manifest))
    code, out = run_cli("validate", str(path))
    assert code == 0
    findings = json.loads(out)["findings"]
    assert [(f["code"], f["subject"]) for f in findings] == [("DurationOutOfObservedRange", "c001")]


def test_validate_broken_manifest_exit_1(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{broken")
    code, _ = run_cli("validate", str(path))
    assert code == 1


def test_missing_file_exit_3(tmp_path):
    code, _ = run_cli("validate", str(tmp_path / "nope.json"))
    assert code == 3


def test_stats_matches_library(housing_bank):
    code, out = run_cli("stats", str(HOUSING_BANK))
    assert code == 0
    payload = json.loads(out)
    assert payload["clip_count"] == 120
    assert payload["interviewee_count"] == 14
    assert len(payload["per_topic_clip_counts"]) == 10


def test_generate_m3u_deterministic_bytes():
    args = ("generate", str(HOUSING_BANK), "--topics", "tourism", "--seed", "42", "--format", "m3u")
    code1, out1 = run_cli(*args)
    code2, out2 = run_cli(*args)
    assert code1 == code2 == 0
    assert out1 == out2
    assert out1.startswith(b"#EXTM3U\n#EXTINF:")


def test_generate_unknown_topic_exit_2_names_it(capsys):
    code = main(["generate", str(HOUSING_BANK), "--topics", "nosuch", "--seed", "1"])
    assert code == 2
    assert "nosuch" in capsys.readouterr().err


def test_generate_infeasible_exit_2(capsys):
    code = main(["generate", str(DESK_BANK), "--topics", "tourism", "--seed", "1"])
    assert code == 2
    assert "InsufficientDuration" in capsys.readouterr().err


def test_generate_edl_format():
    code, out = run_cli(
        "generate", str(DESK_BANK), "--topics", "government,families", "--seed", "3", "--format", "edl"
    )
    assert code == 0
    lines = out.decode().splitlines()
    assert lines[0] == "clip_id,interviewee,start_order,duration_s"
    assert len(lines) >= 2


def test_generate_output_file(tmp_path):
    out_file = tmp_path / "cut.json"
    code, out = run_cli(
        "generate", str(HOUSING_BANK), "--topics", "families", "--seed", "9", "--output", str(out_file)
    )
    assert code == 0 and out == b""
    payload = json.loads(out_file.read_text())
    assert 120 <= payload["total_duration_s"] <= 240


def test_generate_constraint_flags():
    code, out = run_cli(
        "generate", str(HOUSING_BANK), "--topics", "tourism", "--seed", "4",
        "--min-total", "60", "--max-total", "90",
    )
    assert code == 0
    payload = json.loads(out)
    assert 60 <= payload["total_duration_s"] <= 90


def test_multiword_topics_quoted():
    code, out = run_cli(
        "generate", str(HOUSING_BANK), "--topics", "affordable housing,tourism", "--seed", "2"
    )
    assert code == 0
    assert json.loads(out)["selection"]["topics"] == ["affordable housing", "tourism"]


def test_simulate_outputs_report(tmp_path):
    log_path = tmp_path / "session.ndjson"
    code, out = run_cli(
        "simulate", str(HOUSING_BANK), "--generations", "5", "--topics-per", "1..3",
        "--seed", "8", "--log", str(log_path),
    )
    assert code == 0
    report = json.loads(out)
    assert report["generations"] + report["skipped"] == 5
    assert len(log_path.read_text().splitlines()) == report["generations"]


def test_cli_json_equals_library_manifest_bytes(housing_bank):
    from docgen import FilterSelection, generate, manifest_bytes

    code, out = run_cli("generate", str(HOUSING_BANK), "--topics", "rentals,government", "--seed", "77")
    assert code == 0
    doc = generate(housing_bank, FilterSelection.from_raw(["rentals", "government"]), None, 77)
    assert out == manifest_bytes(doc, housing_bank)


def test_subprocess_end_to_end_determinism():
    args = ("generate", str(HOUSING_BANK), "--topics", "tourism", "--seed", "42")
    code1, out1, _ = run_cli_subprocess(*args)
    code2, out2, _ = run_cli_subprocess(*args)
    assert code1 == code2 == 0
    assert out1 == out2
    in_process = run_cli(*args)
    assert in_process == (0, out1)


def test_subprocess_unknown_topic_exit_2():
    code, _, err = run_cli_subprocess("generate", str(HOUSING_BANK), "--topics", "nosuch")
    assert code == 2
    assert b"nosuch" in err
