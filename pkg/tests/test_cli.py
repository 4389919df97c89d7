import json
import subprocess
import sys

import pytest

from sphertwist.cli import main
from sphertwist.dualnum import direct_sum, make_B
from sphertwist.zigzag import CANONICAL_GRAPHS


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, g in CANONICAL_GRAPHS.items():
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(g.to_json()))
        out[name] = str(p)
    p = tmp_path / "module.json"
    p.write_text(json.dumps(direct_sum(make_B(2, 0), make_B(0, -1)).to_json()))
    out["module"] = str(p)
    p = tmp_path / "broken.json"
    p.write_text("{not json")
    out["broken"] = str(p)
    out["dir"] = tmp_path
    return out


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_decompose(files, capsys):
    code, out, _ = run(capsys, "decompose", files["module"])
    assert code == 0 and out.strip() == "(2,0)x1, (0,-1)x1; compact: false"
    code, out, _ = run(capsys, "decompose", files["module"], "--format", "json")
    assert json.loads(out) == {"compact": False, "summands": [[2, 0, 1], [0, -1, 1]]}


def test_decompose_over_rationals(files, capsys):
    code, out, _ = run(capsys, "decompose", files["module"], "--field", "Q")
    assert code == 0 and "(2,0)x1" in out


def test_schema_errors_exit_2(files, capsys):
    code, _, err = run(capsys, "decompose", files["broken"])
    assert code == 2 and err.startswith("error:")
    code, _, _ = run(capsys, "decompose", files["dir"] / "missing.json")
    assert code == 2
    code, _, _ = run(capsys, "twist", files["module"], 1, 1)
    assert code == 2
    code, _, _ = run(capsys, "decompose", files["module"], "--field", "GF:4")
    assert code == 2


def test_twist(files, capsys):
    code, out, _ = run(capsys, "twist", files["edge"], 1, 1)
    assert code == 0 and "shift report: [-1]" in out
    code, out, _ = run(capsys, "twist", files["edge"], 1, 1, "P2")
    assert code == 0 and "shift report: none" in out and "i(-, P2) = 1" in out and "i(-, P1) = 1" in out
    code, out, _ = run(capsys, "twist", files["edge"], 1, 2, "P1")
    assert code == 0 and "shift report: [-2]" in out
    # undoing the twist returns P2, which is not a shift of T1(P2)
    code, out, _ = run(capsys, "twist", files["edge"], 1, -1, "T1(P2)", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["shift"] is None and data["target"] == "T1(P2)"
    assert data["object"]["summands"] == [[2, 0]]


def test_twist_errors(files, capsys):
    assert run(capsys, "twist", files["edge"], 1, 0)[0] == 2
    assert run(capsys, "twist", files["edge"], 7, 1)[0] == 2
    assert run(capsys, "twist", files["edge"], 1, 1, "Q3")[0] == 2


def test_classify(files, capsys):
    assert run(capsys, "classify", files["edge"], 1, 2)[1].strip() == "Braid(B3), l=0"
    assert run(capsys, "classify", files["disjoint-pair"], 1, 2)[1].strip() == "Commuting(ZxZ), l=0"
    code, out, _ = run(capsys, "classify", files["double-edge"], 1, 2, "--max-word-len", 2)
    assert code == 0 and out.strip() == "Free(F2), certificate: OK@len2"
    code, _, _ = run(capsys, "classify", files["edge"], 1, 1)
    assert code == 4


def test_pingpong(files, capsys):
    code, out, _ = run(capsys, "pingpong", files["double-edge"], 1, 2, "--max-word-len", 2)
    assert code == 0 and out.strip() == "16 words up to length 2: certified"
    target = files["dir"] / "cert.json"
    code, out, _ = run(capsys, "pingpong", files["double-edge"], 1, 2, "--max-word-len", 2, "--out", target)
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["verdict"] == "certified"
    assert run(capsys, "pingpong", files["edge"], 1, 2)[0] == 5
    assert run(capsys, "pingpong", files["double-edge"], 1, 2, "--max-word-len", 0)[0] == 2


def test_fuzz(files, capsys):
    code, out, _ = run(capsys, "fuzz-inequality", "--max-vertices", 2, "--max-edges", 2, "--exponents", 1, -1)
    assert code == 0 and out.strip().endswith("checks, 0 violations")
    assert run(capsys, "fuzz-inequality", "--exponents", 0)[0] == 2


def test_outputs_are_deterministic(files, capsys):
    args = ("pingpong", files["double-edge"], 1, 2, "--max-word-len", 2, "--format", "json")
    first = run(capsys, *args)[1]
    assert run(capsys, *args)[1] == first
    args = ("fuzz-inequality", "--max-vertices", 2, "--max-edges", 2, "--format", "json")
    first = run(capsys, *args)[1]
    assert run(capsys, *args, "--seed", 5)[1].replace('"seed": 5', '"seed": 0') == first


def test_module_entry_point(files):
    res = subprocess.run([sys.executable, "-m", "sphertwist", "decompose", files["module"]], capture_output=True, text=True)
    assert res.returncode == 0 and "compact: false" in res.stdout
