import json
import os
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from geo4 import cli, fixtures


def run(*args, env=None):
    """In-process call: (exit code, stdout, stderr)."""
    import contextlib
    import io
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = cli.main(list(args))
    return code, out.getvalue(), err.getvalue()


def test_convert():
    code, out, _ = run("convert", "--e", "16", "--sigma", "-12")
    assert code == 0 and "b2plus=1" in out and "b2minus=13" in out
    code, out, _ = run("convert", "--chih", "1", "--c1sq", "0", "--json")
    data = json.loads(out)
    assert code == 0 and data["e"] == 12
    jsonschema.validate(data, fixtures.schema("convert"))
    code, _, err = run("convert", "--e", "3", "--sigma", "0")
    assert code == 2 and "ParityMismatch" in err
    assert run("convert", "--e", "3")[0] == 4


def test_classify():
    code, out, _ = run("classify", "--b2plus", "3", "--b2minus", "5")
    assert code == 0 and out.strip() == "Rab(3,5)"


def test_plan(tmp_path):
    f = tmp_path / "r.recipe"
    code, out, _ = run("plan", "2", "5", "--emit-recipe", str(f))
    assert code == 0 and "realized" in out and "Rab(2,5)" in out
    assert run("parse", str(f))[0] == 0
    code, out, _ = run("plan", "7", "7", "--json")
    data = json.loads(out)
    assert code == 3 and data["status"] == "open"
    jsonschema.validate(data, fixtures.schema("plan"))
    code, out, _ = run("plan", "4", "9", "--json")
    jsonschema.validate(json.loads(out), fixtures.schema("plan"))
    assert run("plan", "1", "10")[0] == 4
    assert run("plan", "6", "5")[0] == 0


def test_scan(tmp_path):
    csv, svg, js = tmp_path / "a.csv", tmp_path / "a.svg", tmp_path / "a.json"
    code, out, _ = run("scan", "1:15", "--csv", str(csv), "--svg", str(svg), "--json", str(js))
    assert code == 0 and "markers=31" in out
    data = json.loads(js.read_text())
    jsonschema.validate(data, fixtures.schema("scan"))
    first = (csv.read_bytes(), svg.read_bytes())
    run("scan", "1:15", "--csv", str(csv), "--svg", str(svg))
    assert (csv.read_bytes(), svg.read_bytes()) == first
    assert run("scan", "1:x")[0] == 4
    assert run("scan", "5:1")[0] == 4
    code, out, _ = run("scan", "100:101,1:2", "--csv", "-")
    assert code == 0 and out == "m,n,status,recipe-id\n"


@pytest.mark.parametrize("suite", ["relations", "words", "groups", "recipes"])
def test_verify(suite):
    code, out, _ = run("verify", suite, "--json")
    data = json.loads(out)
    assert code == 0 and data["passed"]
    jsonschema.validate(data, fixtures.schema("verify"))


def test_verify_failure_exit(tmp_path, monkeypatch):
    import shutil
    copy = tmp_path / "fx"
    shutil.copytree(fixtures.fixture_dir(), copy, ignore=shutil.ignore_patterns("__pycache__", "*.py"))
    idx = json.loads((copy / "groups" / "index.json").read_text())
    idx[0]["order"] = 3
    (copy / "groups" / "index.json").write_text(json.dumps(idx))
    code, out, _ = run("--fixtures", str(copy), "verify", "groups")
    assert code == 1 and "FAIL group half_surgery" in out
    monkeypatch.setenv("GEO4_FIXTURES", str(copy))
    assert run("verify", "groups")[0] == 1


def test_parse_print(tmp_path):
    f = tmp_path / "x.recipe"
    f.write_text("Z2(g=2, child=Block(XgLF, g=2))")
    code, out, _ = run("print", str(f))
    assert code == 0 and out.startswith("Z2(")
    f.write_text("Z2(g=2, child=Block(XgLF, g=2)")
    code, _, err = run("parse", str(f))
    assert code == 4 and "line 1, column 31" in err
    w = tmp_path / "w.txt"
    w.write_text("t[c1] refl(t[y])^2")
    assert run("parse", "--word", str(w))[0] == 0


def test_config_file(tmp_path):
    conf = tmp_path / "geo4.conf"
    conf.write_text("# settings\nworkers = 2\nlog_level = ERROR\n")
    assert run("--config", str(conf), "scan", "1:5")[0] == 0
    conf.write_text("colour = red\n")
    assert run("--config", str(conf), "scan", "1:5")[0] == 4


def test_module_entry_point():
    src = str(Path(cli.__file__).resolve().parents[1])
    env = dict(os.environ, PYTHONPATH=src)
    out = subprocess.run([sys.executable, "-m", "geo4.cli", "plan", "7", "7"], capture_output=True, text=True,
                         env=env)
    assert out.returncode == 3
