import json
import subprocess
import sys
from pathlib import Path

import pytest

from dimcalc import cli, tensor
from dimcalc.model import InternalConsistencyError

PROGRAMS = Path(__file__).resolve().parent.parent / "scripts" / "programs"


def run(*args):
    return subprocess.run([sys.executable, "-m", "dimcalc", *map(str, args)],
                          capture_output=True, text=True)


def write(tmp_path, text):
    f = tmp_path / "prog.dc"
    f.write_text(text, encoding="utf-8")
    return f


def test_dvr_pair_text_report():
    out = run("eval", PROGRAMS / "dvr_pair.dc")
    assert out.returncode == 0, out.stderr
    assert "(tensor-dim R1 R2) = 4 [F4-PullbackPair]" in out.stdout.splitlines()


def test_af_pullback_raw_and_checked_in_one_report():
    out = run("eval", PROGRAMS / "af_pullback.dc")
    lines = out.stdout.splitlines()
    assert "(raw-pullback-pair R R) = 3 [raw-pullback-pair]" in lines
    assert "(tensor-dim R R) = 4 [F2-Wadsworth]" in lines


def test_legacy_raw_keyword(tmp_path):
    text = ("(def R (pullback :T (af :tdeg 2 :dim 2 :maximal (:ht 1 :res-tdeg 1)) :D (field 1)))\n"
            "(raw-thm19 R R)")
    out = run("eval", write(tmp_path, text))
    assert out.stdout == "(raw-thm19 R R) = 3 [raw-pullback-pair]\n"


def test_invariants_of_field(tmp_path):
    out = run("eval", write(tmp_path, "(invariants (field 2))"))
    assert out.stdout.startswith("(invariants (field 2)) = {tdeg 2; dim 0; vdim 0; AF yes;")


def test_json_schema(tmp_path):
    out = run("eval", "--json", PROGRAMS / "pvd_tower.dc")
    objs = [json.loads(line) for line in out.stdout.splitlines()]
    assert len(objs) == 5
    for o in objs:
        assert {"query", "value", "rule", "trace", "hypothesisChecks"} <= o.keys()
    vdim = objs[3]
    assert vdim["value"] == {"interval": [5, 6]}
    assert objs[2]["value"] == {"exact": 5}
    assert objs[2]["trace"]["rule"] == "F5-PullbackRecursive"


def test_trace_mode_shows_tree():
    out = run("eval", "--trace", PROGRAMS / "pvd_tower.dc")
    assert "max{2 + 2, 2 + 3} = 5" in out.stdout
    assert "x F4-PullbackPair not applicable" in out.stdout


@pytest.mark.parametrize("text", [
    "(dim (poly (field 2) 0))",
    "(dim X)",
    "(dim (af :tdeg 3 :dim 1 :maximal (:ht 1 :res-tdeg 1)))",
])
def test_input_errors_exit_1(tmp_path, text):
    out = run("eval", write(tmp_path, text))
    assert out.returncode == 1
    assert out.stdout == ""
    assert "prog.dc:1:" in out.stderr


def test_missing_file_exit_1(tmp_path):
    assert run("eval", tmp_path / "nope.dc").returncode == 1


def test_internal_consistency_exit_2(tmp_path, monkeypatch, capsys):
    def boom(*_):
        raise InternalConsistencyError("paths disagree")
    monkeypatch.setattr(tensor, "tensor_krull_dim", boom)
    code = cli.main(["eval", str(write(tmp_path, "(tensor-dim (k) (k))"))])
    assert code == 2
    assert "paths disagree" in capsys.readouterr().err


def test_check_command_json():
    out = run("check", "--count", "30", "--seed", "7", "--json")
    report = json.loads(out.stdout)
    assert report["seed"] == 7 and report["count"] == 30
    names = [p["name"].split()[0] for p in report["properties"]]
    assert names[:2] == ["P1", "P2"]
    assert out.returncode == (0 if report["ok"] else 1)
