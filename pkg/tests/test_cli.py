import json
import subprocess
import sys

import pytest

from conftest import CTX
from sciscal.cli import main
from sciscal.iet import iet_rotation


@pytest.fixture
def ctx_file(tmp_path, monkeypatch):
    path = tmp_path / "ctx.json"
    path.write_text(json.dumps(CTX.to_json()))
    monkeypatch.setenv("SCISCAL_CTX", str(path))
    return path


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None), out


def write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(data if isinstance(data, str) else json.dumps(data))
    return str(path)


def test_regulator_single_rotation(ctx_file, tmp_path, capsys):
    L = CTX.parse("1+u")
    flag = write(tmp_path, "flag.json", [iet_rotation(L, CTX["u"]).to_json()])
    code, data, _ = run(capsys, "regulator", flag)
    assert code == 0
    assert data["degree"] == 1 and len(data["terms"]) == 2
    code, wrapped, _ = run(capsys, "regulator", write(tmp_path, "f2.json", {"flag": [{"L": "1+u", "pieces": [{"x": "0", "offset": "u"}, {"x": "1", "offset": "-1"}]}]}))
    assert wrapped == data


def test_regulator_universal(ctx_file, tmp_path, capsys):
    flag = write(tmp_path, "flag.json", [iet_rotation(CTX.parse("1+u"), CTX["u"]).to_json()])
    code, data, _ = run(capsys, "regulator", flag, "--measure", "universal")
    assert code == 0 and data["module"] == "PT"


def test_regulator_errors(ctx_file, tmp_path, capsys):
    assert main(["regulator", write(tmp_path, "empty.json", [])]) == 4
    assert main(["regulator", write(tmp_path, "bad.json", "[")]) == 2
    assert main(["regulator", str(tmp_path / "missing.json")]) == 2


def test_precision_exit(tmp_path, capsys):
    coarse = write(tmp_path, "coarse.json", {"basis": [{"name": "u", "guard": ["1/2", "3/2"]}]})
    rho = {"L": "1+u", "pieces": [{"x": "0", "offset": "1"}, {"x": "u", "offset": "-u"}]}
    assert main(["--ctx", coarse, "regulator", write(tmp_path, "f.json", [rho, rho])]) == 3


@pytest.mark.parametrize("lengths", ["1,u", "1,u,v"])
def test_verify_equal(ctx_file, capsys, lengths):
    code, data, _ = run(capsys, "verify", "--lengths", lengths)
    assert code == 0 and data["verdict"] == "EQUAL" and data["cycle"] is True


def test_generator_emit_chain(ctx_file, capsys):
    code, data, _ = run(capsys, "generator", "--lengths", "1,u", "--emit-chain", "--verify")
    assert code == 0 and data["chain"]["degree"] == 1


def test_generator_nonpositive(ctx_file, capsys):
    assert main(["generator", "--lengths", "1,-u"]) == 4


def test_snake(ctx_file, capsys):
    code, data, _ = run(capsys, "snake", "--values", "1,u")
    assert code == 0 and data["agree"] is True
    code, data, _ = run(capsys, "snake", "--values", "u,u")
    assert data["pipeline"]["terms"] == [] and data["closed_form"]["terms"] == []
    assert main(["snake", "--values", ""]) == 4
    assert main(["snake", "--values", "1,zz"]) == 2


def test_rect(ctx_file, tmp_path, capsys):
    r = iet_rotation(CTX.one(), CTX.parse("1/2"))
    code, data, _ = run(capsys, "rect", write(tmp_path, "iets.json", [r.to_json(), r.to_json()]))
    assert code == 0 and data["dims"] == 2 and len(data["boxes"]) == 4


def test_missing_context(monkeypatch, capsys):
    monkeypatch.delenv("SCISCAL_CTX", raising=False)
    assert main(["snake", "--values", "1"]) == 2


def test_deterministic_output(ctx_file, capsys):
    _, _, first = run(capsys, "verify", "--lengths", "1,u,v", "--emit-chain")
    _, _, second = run(capsys, "verify", "--lengths", "1,u,v", "--emit-chain")
    assert first == second


def test_module_entry_point(ctx_file):
    proc = subprocess.run(
        [sys.executable, "-m", "sciscal.cli", "snake", "--values", "1,u"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["agree"] is True
