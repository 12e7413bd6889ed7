import json
import os
import subprocess
import sys

import pytest

from lcass import cli
from lcass.cli import golden_pairs, main, run_text

from conftest import CORPUS

BASIC = "ring S = zp(32003)[x,y];\nideal I = x^2, x*y;\ncompute assprimes(quotient(S, I));\n"

SLOW = """ring S = zp(32003)[a,b,c,d,e,f];
ideal I = a^3 + b*c*d - e^2*f, b^3 - a*c*f + d^3, c^3 + a*b*e - f^3, d^2*e - a*b*c + c*f^2;
compute assprimes(quotient(S, I));
compute dim(S);
"""


def write(tmp_path, text, name="s.lch"):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return str(p)


@pytest.mark.parametrize("lch, gold", golden_pairs(CORPUS), ids=lambda p: os.path.basename(p))
def test_golden_reports(lch, gold):
    with open(lch, encoding="utf-8") as fh:
        out, code = run_text(fh.read())
    with open(gold, encoding="utf-8") as fh:
        assert out == fh.read()
    name = os.path.basename(lch)
    if name.startswith(("i", "g", "s")):
        assert code == 0


def test_basic_report_shape():
    out, code = run_text(BASIC)
    doc = json.loads(out)
    assert code == 0
    (r,) = doc["reports"]
    assert r["status"] == "ok"
    assert [p["gens"] for p in r["result"]["ass"]] == [["x"], ["x", "y"]]
    assert set(r["inputs"]) == {"S", "I"}
    assert doc["seed"] == 42 and "session_sha256" in doc


@pytest.mark.parametrize("text, code", [
    (BASIC.replace(";\nideal", "\nideal"), 2),
    ("ring S = zp(12)[x];", 4),
    ("ring S = QQ[x,y];\nideal I = x + y^2, x*y - 1;\ncompute assprimes(quotient(S, I));", 4),
    (BASIC + "ideal J = x;\ncompute depthk(J, S, 5);\ncompute asslch(J, S, S, k = -1, l = 3);\n", 3),
])
def test_exit_codes(tmp_path, capsys, text, code):
    assert main(["run", write(tmp_path, text)]) == code
    doc = json.loads(capsys.readouterr().out)
    assert doc["reports"] or "parse_error" in doc


def test_failing_command_does_not_stop_the_rest():
    text = BASIC + "ideal J = x;\ncompute asslch(J, S, S, k = -1, l = 3);\ncompute dim(S);\n"
    doc = json.loads(run_text(text)[0])
    assert [r["status"] for r in doc["reports"]] == ["ok", "error", "ok"]
    assert doc["reports"][1]["error"]["code"] == "exceeds-depth"


def test_parse_error_location(tmp_path, capsys):
    path = write(tmp_path, "ring S = zp(32003)[x,y];\nideal I = x,\n  y z;\n")
    assert main(["run", path]) == 2
    pe = json.loads(capsys.readouterr().out)["parse_error"]
    assert (pe["code"], pe["line"], pe["column"]) == ("syntax-error", 3, 5)


def test_seed_precedence(tmp_path, capsys, monkeypatch):
    path = write(tmp_path, BASIC)
    monkeypatch.setenv("LCASS_SEED", "7")
    main(["run", path])
    assert json.loads(capsys.readouterr().out)["seed"] == 7
    main(["run", path, "--seed", "9"])
    assert json.loads(capsys.readouterr().out)["seed"] == 9


def test_command_options_beat_flags(tmp_path, capsys):
    text = ("ring S = zp(32003)[x,y];\nideal I = y;\nideal A = x^2;\nmodule B = quotient(S, A);\n"
            "graded G = rees(I, B);\ncompute stabilize ass(G) range 0..5 window 2;\n"
            "compute stabilize ass(G);\n")
    main(["run", write(tmp_path, text), "--range", "0..7", "--window", "4"])
    doc = json.loads(capsys.readouterr().out)
    first, second = (r["result"] for r in doc["reports"])
    assert [n for n, _ in first["values"]] == list(range(6)) and first["window"] == 2
    assert [n for n, _ in second["values"]] == list(range(8)) and second["window"] == 4
    assert doc["settings"] == {"range": [0, 7], "t_range": [1, 3], "window": 4}


def test_output_file_and_text_format(tmp_path, capsys):
    out = tmp_path / "r.txt"
    assert main(["run", write(tmp_path, BASIC), "--format", "text", "--out", str(out)]) == 0
    assert capsys.readouterr().out == ""
    text = out.read_text()
    assert "> compute assprimes(quotient(S, I));  [ok]" in text
    assert "{(x), (x, y)}" in text


def test_print_is_canonical(tmp_path, capsys):
    assert main(["print", write(tmp_path, "ring S = zp(32003)[x,y];\nideal I = y*x+x*y;")]) == 0
    assert capsys.readouterr().out == "ring S = zp(32003)[x, y];\nideal I = 2*x*y;\n"


def test_reports_are_deterministic():
    text = BASIC + "ideal J = x;\ncompute depthk(J, S, -1);\ncheck witness asslch(J, S, S, -1, 1) seeds 42, 4242;\n"
    assert run_text(text)[0] == run_text(text)[0]
    assert run_text(text, seed=5)[0] != run_text(text)[0]


@pytest.mark.skipif(not hasattr(__import__("signal"), "SIGALRM"), reason="needs SIGALRM")
def test_timeout_skips_remaining_commands():
    out, code = run_text(SLOW, timeout=1)
    doc = json.loads(out)
    assert code == 3
    assert [r["status"] for r in doc["reports"]] == ["error", "skipped"]
    assert doc["reports"][0]["error"]["code"] == "timeout"


def test_module_entry_point(tmp_path):
    path = write(tmp_path, BASIC)
    a = subprocess.run([sys.executable, "-m", "lcass", "run", path], capture_output=True, text=True)
    assert a.returncode == 0
    assert a.stdout == run_text(BASIC)[0]


def test_golden_runner_detects_mismatch(tmp_path):
    write(tmp_path, BASIC, "a.lch")
    sink = open(os.devnull, "w")
    assert cli.run_golden(str(tmp_path), stream=sink) == 1
    assert cli.run_golden(str(tmp_path), update=True, stream=sink) == 0
    assert cli.run_golden(str(tmp_path), stream=sink) == 0
    (tmp_path / "a.golden.json").write_text("{}\n")
    assert cli.run_golden(str(tmp_path), stream=sink) == 1
    sink.close()
