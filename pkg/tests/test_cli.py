import json
import subprocess
import sys
from pathlib import Path

import pytest

from transfinia.cli import main
from transfinia.serialize import dumps
from transfinia.staged_sets import SeqSpec

SMALL = {
    "ordinals": {"count": 40, "batch": 20},
    "diff": {"universe": 3, "eta": 2},
    "learners-inc": {"count": 20},
    "matrices": {"count": 10, "relabelings": 5, "diag_height": 2, "diag_corpus": 4},
}
SAMPLES = Path(__file__).resolve().parent.parent / "samples"


@pytest.fixture(autouse=True)
def small_bounds(monkeypatch):
    monkeypatch.setenv("TRANSFINIA_SUITE_BOUNDS", json.dumps(SMALL))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eval_ordinal_literal(capsys):
    code, out, _ = run(capsys, "eval", "w^w")
    data = json.loads(out)
    assert code == 0 and data["result"]["parity"] == 0 == data["oracle"]["parity"]


def test_eval_two_level_example(tmp_path, capsys):
    path = tmp_path / "seq.json"
    path.write_text(dumps(SeqSpec.dec(2, [1, 2])))
    code, out, _ = run(capsys, "eval", str(path))
    assert code == 0 and json.loads(out) == {"oracle": [0], "result": [0]}


def test_eval_bundled_samples(capsys):
    for path in sorted(SAMPLES.glob("*.json")):
        code, out, _ = run(capsys, "eval", str(path))
        data = json.loads(out)
        assert code == 0, path
        assert data["result"] == data["oracle"], path


def test_eval_errors(tmp_path, capsys):
    assert run(capsys, "eval", "w^")[0] == 2
    assert run(capsys, "eval", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "seq"')
    code, _, err = run(capsys, "eval", str(bad))
    assert code == 2 and "line 1" in err


def test_invalid_eta_token_reports_location(capsys):
    code, _, err = run(capsys, "check", "--suite", "ordinals", "--eta", "w*")
    assert code == 2 and "position 2" in err


def test_unknown_suite_and_flags(capsys):
    assert run(capsys, "check", "--suite", "nosuch")[0] == 2
    assert run(capsys, "check", "--jobs", "0")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_bad_bounds_env(monkeypatch, capsys):
    monkeypatch.setenv("TRANSFINIA_SUITE_BOUNDS", "{oops")
    assert run(capsys, "check", "--suite", "ordinals")[0] == 2
    monkeypatch.setenv("TRANSFINIA_SUITE_BOUNDS", '{"nosuch": {}}')
    assert run(capsys, "check", "--suite", "ordinals")[0] == 2


def test_empty_selection_gives_empty_report(capsys):
    code, out, _ = run(capsys, "check", "--suite", "")
    report = json.loads(out)
    assert code == 0 and report["suites"] == [] and report["ok"]


def test_check_passes_and_is_deterministic(tmp_path, capsys):
    args = ["check", "--suite", "ordinals,diff,learners-inc,matrices", "--seed", "7"]
    assert run(capsys, *args, "--out", str(tmp_path / "a.json"))[0] == 0
    assert run(capsys, *args, "--out", str(tmp_path / "b.json"), "--jobs", "4")[0] == 0
    a, b = (tmp_path / "a.json").read_bytes(), (tmp_path / "b.json").read_bytes()
    assert a == b
    report = json.loads(a)
    assert [s["name"] for s in report["suites"]] == ["ordinals", "diff", "learners-inc", "matrices"]
    assert report["suites"][0]["bounds"] == SMALL["ordinals"]


def test_seed_changes_random_cases(tmp_path, capsys):
    for seed in ("1", "2"):
        run(capsys, "gen", "--seed", seed, "--suite", "learners-inc", "--out", str(tmp_path / seed))
    a = (tmp_path / "1" / "learners-inc" / "spec-0.json").read_text()
    b = (tmp_path / "2" / "learners-inc" / "spec-0.json").read_text()
    assert a != b


def test_negative_suite_fails_and_replays(tmp_path, capsys):
    report = tmp_path / "neg.json"
    code, _, _ = run(capsys, "check", "--suite", "negative", "--out", str(report))
    assert code == 1
    data = json.loads(report.read_text())
    assert data["failures"] == 4
    code, out, _ = run(capsys, "replay", str(report))
    assert code == 1 and "4/4 failures reproduced" in out
    witness = tmp_path / "one.json"
    witness.write_text(json.dumps(data["suites"][0]["failures"][0]))
    assert run(capsys, "replay", str(witness))[0] == 1
    code, out, _ = run(capsys, "report", str(report))
    assert code == 1 and "FAIL" in out


def test_replay_of_a_clean_report(tmp_path, capsys):
    report = tmp_path / "ok.json"
    run(capsys, "check", "--suite", "ordinals", "--out", str(report))
    code, out, _ = run(capsys, "replay", str(report))
    assert code == 0 and "0/0" in out
    assert run(capsys, "report", str(report))[0] == 0


def test_gen_is_deterministic(tmp_path, capsys):
    for name in ("a", "b"):
        assert run(capsys, "gen", "--seed", "1", "--universe", "4", "--suite", "matrices", "--out", str(tmp_path / name))[0] == 0
    files_a = sorted(p.relative_to(tmp_path / "a") for p in (tmp_path / "a").rglob("*.json"))
    files_b = sorted(p.relative_to(tmp_path / "b") for p in (tmp_path / "b").rglob("*.json"))
    assert files_a == files_b and files_a
    for rel in files_a:
        assert (tmp_path / "a" / rel).read_bytes() == (tmp_path / "b" / rel).read_bytes()
    code, out, _ = run(capsys, "eval", str(tmp_path / "a" / files_a[0]))
    assert code == 0 and json.loads(out)["ok"]


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "transfinia", "eval", "w*2+3"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["parity"] == 1
