import json
import subprocess
import sys
from pathlib import Path

import pytest

from sblearn.cli import EXIT_INPUT, EXIT_OK, InputError, main, parse_grid
from sblearn.learner import LearnerReport
from sblearn.pwf import parse_representation, representation_from_json
from sblearn.sfa import band_then_spike_sfa, sfa_from_json

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_data_files_match_fixtures(gamma1):
    assert representation_from_json(json.loads((DATA / "gamma1.json").read_text())) == gamma1
    assert sfa_from_json(json.loads((DATA / "band_then_spike.json").read_text())) == band_then_spike_sfa()


def test_learn_pwf_file(capsys):
    code, out, _ = run(capsys, "learn-pwf", DATA / "gamma1.json", "--strategy", "deep:100")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["verified"] and doc["strategy"] == "deep:100"
    report = LearnerReport.from_json(doc["report"])
    assert report.result == parse_representation("((-inf, -2/3), B)([-2/3, 1/2], A)((1/2, 3/2], B)((3/2, inf), A)")
    assert doc["queries"]["mq"] == report.mq_count


def test_learn_pwf_random_is_deterministic(capsys, tmp_path):
    outs = []
    for name in ("a.json", "b.json"):
        assert run(capsys, "learn-pwf", "--random-pieces", 9, "--seed", 4, "--out", tmp_path / name)[0] == EXIT_OK
        outs.append((tmp_path / name).read_bytes())
    assert outs[0] == outs[1]
    assert len(json.loads(outs[0])["target"]["pieces"]) == 9


def test_verbose_transcript(capsys):
    code, _, err = run(capsys, "learn-pwf", DATA / "constant.json", "--verbose")
    assert code == EXIT_OK
    entries = [json.loads(line) for line in err.splitlines()]
    assert [e["kind"] for e in entries] == ["mq", "eq"]


def test_learn_sfa(capsys):
    code, out, _ = run(capsys, "learn-sfa", DATA / "upper_then_lower.json")
    assert code == EXIT_OK and json.loads(out)["verified"]
    code, out, _ = run(capsys, "learn-sfa", "--random-states", 4, "--seed", 2)
    assert code == EXIT_OK and json.loads(out)["verified"]


def test_run(capsys):
    code, out, _ = run(capsys, "run", DATA / "band_then_spike.json", "7 14")
    assert code == EXIT_OK
    assert out == "accept\ns0 --7/1--> s1 --14/1--> s2\n"
    code, out, _ = run(capsys, "run", DATA / "upper_then_lower.json", "48 48")
    assert out.startswith("reject\n")


def test_export_dot(capsys, tmp_path):
    code, out, _ = run(capsys, "export-dot", DATA / "band_then_spike.json")
    assert code == EXIT_OK
    assert '"s0" -> "s1" [label="13/2 < x <= 23/3"];' in out
    run(capsys, "export-dot", DATA / "band_then_spike.json", "--out", tmp_path / "g.dot")
    assert (tmp_path / "g.dot").read_text() == out


@pytest.mark.parametrize(
    "argv",
    [
        ["learn-pwf"],
        ["learn-pwf", "missing.json"],
        ["learn-pwf", DATA / "gamma1.json", "--strategy", "sideways"],
        ["learn-pwf", DATA / "band_then_spike.json"],
        ["learn-sfa", DATA / "gamma1.json"],
        ["run", DATA / "band_then_spike.json", "1 x"],
        ["run", DATA / "band_then_spike.json", "1 inf"],
        ["bench", "--pieces", "0..4"],
        ["bench", "--strategy", "deep:"],
    ],
)
def test_input_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == EXIT_INPUT
    assert err.startswith("error: ")
    assert out == ""


def test_bad_json(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run(capsys, "learn-pwf", bad)[0] == EXIT_INPUT


def test_parse_grid():
    assert parse_grid("2..64") == [2, 4, 8, 16, 32, 64]
    assert parse_grid("3,5") == [3, 5]
    assert parse_grid("7") == [7]
    with pytest.raises(InputError):
        parse_grid("8..2")


def test_bench_is_byte_identical(capsys):
    argv = ["bench", "--pieces", "2..8", "--bits", "4,16", "--repeats", "2"]
    code, first, _ = run(capsys, *argv)
    assert code == EXIT_OK
    assert run(capsys, *argv, "--jobs", "2")[1] == first
    lines = first.splitlines()
    assert lines[0].startswith("pieces,bits,seed,repeat,strategy,size,mq,eq,break_links,mq_per_size,verified")
    assert "wall_ms" not in lines[0]
    assert len([ln for ln in lines if not ln.startswith("#")]) == 1 + 3 * 2 * 2
    assert "# all_verified: True" in lines


def test_bench_json_and_timing(capsys):
    code, out, _ = run(capsys, "bench", "--pieces", "4", "--bits", "8", "--format", "json", "--timing")
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["summary"]["eq_within_break_links"]
    assert "wall_ms" in doc["records"][0]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "sblearn", "run", str(DATA / "band_then_spike.json"), "7 14"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout.startswith("accept")
