import json
from pathlib import Path

import pytest

from ludics.cli import main

A = Path(__file__).resolve().parent.parent / "corpus" / "accepted"
FIG1, ALPHA0, CONN = str(A / "fig1.ludics"), str(A / "alpha0.ludics"), str(A / "connectives.ludics")
WB, SHUF = str(A / "workbenches.ludics"), str(A / "shuffle.ludics")


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_normalize(capsys):
    assert run(capsys, "normalize", ALPHA0, "--design", "GoodCut")[:2] == (0, "daimon\n")
    assert run(capsys, "normalize", ALPHA0, "--design", "OmegaCut")[:2] == (0, "omega\n")


def test_normalize_out_of_fuel(capsys, tmp_path):
    f = tmp_path / "loop.ludics"
    f.write_text("sig { c/2 }\n"
                 "design G = {c(u, v) => u|c<u, {c(p, q) => v|c<v, v>}>}\n"
                 "design D = @G|c<@G, @G>\n")
    assert run(capsys, "normalize", f, "--design", "D", "--fuel", "50")[0] == 2


def test_orthogonal(capsys):
    assert run(capsys, "orthogonal", FIG1, "--design", "P", "--anti", "G")[:2] == (0, "orthogonal: true\n")
    code, out, _ = run(capsys, "orthogonal", ALPHA0, "--design", "Probe", "--anti", "Sum0At")
    assert code == 1 and "interaction: x0|c<y1>" in out


def test_interact_text_and_json(capsys, tmp_path):
    code, out, _ = run(capsys, "interact", FIG1, "--left", "P", "--right", "G")
    assert code == 0 and out == "x0|a<y1,y2> b^y1(x1) x1|c<> b^y2(x2) x2|c<>\n"
    dest = tmp_path / "t.json"
    assert run(capsys, "interact", FIG1, "--left", "P", "--right", "G", "--json", dest)[0] == 0
    assert json.loads(dest.read_bytes())["status"] == "converged"
    code, out, _ = run(capsys, "interact", ALPHA0, "--left", "Probe", "--right", "Sum0At", "--json", "-")
    assert code == 1 and json.loads(out)["status"] == "omega"


def test_harmony(capsys):
    assert run(capsys, "harmony", CONN, "--conn", "With")[0] == 0
    code, out, _ = run(capsys, "harmony", CONN, "--conn", "Gamma")
    assert code == 1 and "inversion: false, recovery: false" in out
    code, out, _ = run(capsys, "harmony", CONN, "--conn", "Delta", "--json-out")
    assert code == 1 and json.loads(out)["missing_from_intro"] == ["c(x2, x1)"]


@pytest.mark.parametrize("mode", ["connective", "paths"])
@pytest.mark.parametrize("conn, expected", [("With", 0), ("Alpha0", 1)])
def test_decompose(capsys, mode, conn, expected):
    src = CONN if conn == "With" else ALPHA0
    code = run(capsys, "decompose", src, "--conn", conn, "--mode", mode,
               "--workbench", f"{WB}:N1", "--workbench", f"{WB}:N2")[0]
    assert code == expected


def test_paths(capsys):
    code, out, _ = run(capsys, "paths", FIG1, "--design", "P", "--max-len", "2")
    assert code == 0 and out.splitlines() == ["x0|a<y1,y2>", "x0|a<y1,y2> b^y1(x1)", "x0|a<y1,y2> b^y2(x2)"]


def test_shuffle(capsys):
    code, out, _ = run(capsys, "shuffle", SHUF, "--seq", "Left", "--seq", "Right")
    assert code == 0 and len(out.splitlines()) == 2
    assert run(capsys, "shuffle", SHUF, "--seq", "Left", "--seq", "Win")[:2] == (1, "undefined\n")


def test_regularity(capsys):
    assert run(capsys, "regularity", WB, "--workbench", "N1")[0] == 0
    assert run(capsys, "regularity", WB, "--workbench", "N1", "--dual", "N1dual")[0] == 0


@pytest.mark.parametrize("argv", [
    ["normalize", "/nonexistent.ludics", "--design", "D"],
    ["normalize", FIG1, "--design", "Missing"],
    ["harmony", CONN, "--conn", "Nope"],
    ["shuffle", SHUF, "--seq", "Left"],
    ["frobnicate"],
    [],
])
def test_bad_input(capsys, argv):
    assert run(capsys, *argv)[0] == 3


def test_syntax_error_reported(capsys, tmp_path):
    f = tmp_path / "bad.ludics"
    f.write_text("design D = daimon|a<>\n")
    code, _, err = run(capsys, "normalize", f, "--design", "D")
    assert code == 3 and err.startswith("error:")
