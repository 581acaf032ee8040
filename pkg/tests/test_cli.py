import contextlib
import io
import json
import os
import subprocess
import sys

import jsonschema
import pytest

from bgrlab.cli import main

CORPUS = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "corpus")
SCHEMA_PATH = os.path.join(os.path.dirname(sys.modules["bgrlab"].__file__), "schema",
                           "output.schema.json")
with open(os.path.join(CORPUS, "commands.json"), encoding="utf-8") as fh:
    COMMANDS = json.load(fh)
with open(SCHEMA_PATH, encoding="utf-8") as fh:
    SCHEMA = json.load(fh)


def run(argv, cwd=CORPUS):
    out, err = io.StringIO(), io.StringIO()
    old = os.getcwd()
    os.chdir(cwd)
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            code = main(list(argv))
    finally:
        os.chdir(old)
    return code, out.getvalue(), err.getvalue()


def test_schema_is_valid():
    jsonschema.Draft202012Validator.check_schema(SCHEMA)


@pytest.mark.parametrize("cmd", COMMANDS, ids=[c["name"] for c in COMMANDS])
def test_golden(cmd):
    code, text, _ = run(cmd["argv"] + ["--json", "--no-timing"])
    assert code == cmd["exit"]
    doc = json.loads(text)
    jsonschema.validate(doc, SCHEMA)
    assert doc["exitCode"] == code
    with open(os.path.join(CORPUS, "golden", cmd["name"] + ".json"), encoding="utf-8") as fh:
        assert doc == json.load(fh)


def test_text_output():
    code, text, _ = run(["detect", "--input", "inputs/sporadic_n3.cbg", "--rainbow", "P4"])
    assert code == 0 and "rainbow" in text.lower()
    code, text, _ = run(["formula", "--pattern", "K13", "--target", "K1,5", "--k", "5"])
    assert code == 0 and "6" in text


def test_construct_writes_file(tmp_path):
    path = tmp_path / "g.cbg"
    code, _, _ = run(["construct", "--kind", "rowblocks", "--n", "4", "--k", "2", "--sizes", "2,2",
                      "-o", str(path)])
    assert code == 0
    code, _, _ = run(["classify", "--theorem", "T13", "--input", str(path)])
    assert code == 0


def test_stdin_input(monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("2 2 3\n1 2\n3 1\n"))
    code, text, _ = run(["detect", "--input", "-", "--rainbow", "P4", "--json"])
    assert code == 0 and json.loads(text)["status"] == "found"


def test_usage_errors():
    assert run(["formula", "--pattern", "Q9", "--target", "P4", "--k", "3"])[0] == 2
    assert run(["detect", "--input", "nope.cbg", "--rainbow", "P4"])[0] == 2
    assert run(["frobnicate"])[0] == 2


def test_console_entry():
    res = subprocess.run([sys.executable, "-m", "bgrlab", "stats", "--target", "P2+P4", "--json"],
                         capture_output=True, text=True, cwd=CORPUS)
    assert res.returncode == 0
    jsonschema.validate(json.loads(res.stdout), SCHEMA)
