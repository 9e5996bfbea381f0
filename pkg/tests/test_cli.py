import json
import subprocess
import sys

import pytest

from flatpin import catalog
from flatpin.cli import exact_sqrt, main
from flatpin.dyadic import RootTwoDyadic
from flatpin.groupfile import format_group, parse_group
from fractions import Fraction


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


def test_structures_m1_pin_plus(capsys):
    code, rep = run_json(capsys, "structures", "M1", "--convention", "pin+")
    assert code == 0 and rep["count"] == 0
    assert rep["witness"]["kind"] == "squares"


def test_structures_m5p_spin(capsys, files):
    path = files("m5p.txt", format_group(catalog.builtin("M5p").group))
    code, rep = run_json(capsys, "structures", path, "--convention", "spin")
    assert code == 0 and rep["count"] == 8 and rep["witness"] is None
    assert set(rep) >= {"convention", "count", "rank", "delta_constraints", "witness"}


def test_structures_torus(capsys, files):
    path = files("t.txt", "dim 3\n")
    for conv in ("pin+", "pin-", "spin"):
        code, rep = run_json(capsys, "structures", path, "--convention", conv)
        assert rep["count"] == 8


def test_enumerate(capsys):
    code, rep = run_json(capsys, "structures", "G_0_2(3)", "--convention", "pin-", "--enumerate")
    assert len(rep["structures"]) == 8
    code, out, err = run(capsys, "structures", "dG1p", "--convention", "spin",
                         "--enumerate", "--limit", "10")
    assert code == 1 and "exceed" in err


def test_invariants(capsys):
    code, rep = run_json(capsys, "invariants", "G_0_1(3)")
    assert rep["h1"] == {"free_rank": 2, "torsion": [2], "text": "Z^2 + Z_2"}
    assert rep["geodesic_sq"] == "1/4" and rep["geodesic"] == "1/2"
    assert rep["betti"] == [1, 2, 1, 0]
    code, rep = run_json(capsys, "invariants", "Gp_0_1(3)")
    assert rep["geodesic"] == "sqrt(2)/2"
    code, rep = run_json(capsys, "invariants", "M5")
    assert rep["orientable"] is True
    code, rep = run_json(capsys, "invariants", "T4")
    assert rep["betti"] == [1, 4, 6, 4, 1]
    code, rep = run_json(capsys, "invariants", "G_1_0(3)")
    assert rep["sunada"] == "not diagonal type"


def test_isospectral(capsys):
    assert run_json(capsys, "isospectral", "M3", "M3p")[1]["isospectral"] is True
    assert run_json(capsys, "isospectral", "M1", "M2")[1]["isospectral"] is False
    assert run_json(capsys, "isospectral", "T3", "T3")[1]["isospectral"] is True


def test_exit_codes(capsys, files):
    assert run(capsys, "structures", files("a.txt", "dim 2\ngen\nB diag 1 7\nb 0 0\n"))[0] == 2
    assert run(capsys, "structures", files("b.txt", "dim 2\ngen\nB diag 1 -1\nb 0 0\n"))[0] == 3
    assert run(capsys, "structures", "M1", "--convention", "spin")[0] == 4
    assert run(capsys, "isospectral", "G_1_0(3)", "G_0_1(3)")[0] == 5
    assert run(capsys, "catalog", "show", "Nope")[0] == 6
    assert run(capsys, "invariants", "no/such/file.txt")[0] == 6


def test_reproduce(capsys):
    code, out, _ = run(capsys, "reproduce")
    assert code == 0
    assert "all 12 manifolds match the structure-count table" in out
    code, rep = run_json(capsys, "reproduce")
    assert code == 0 and rep["mismatches"] == 0


def test_catalog_commands(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0 and "M2p" in out and "dG1p" in out
    code, out, _ = run(capsys, "catalog", "show", "M2p")
    assert "B diag 1 1 1 -1" in out
    code, out, _ = run(capsys, "catalog", "export", "M2p")
    assert parse_group(out) == catalog.builtin("M2p").group


def test_double_twice_then_spin(capsys, files):
    path = files("m1.txt", format_group(catalog.builtin("M1").group))
    _, once, _ = run(capsys, "double", path)
    p1 = files("d.txt", once)
    _, twice, _ = run(capsys, "double", p1)
    p2 = files("dd.txt", twice)
    code, rep = run_json(capsys, "structures", p2, "--convention", "spin")
    assert code == 0 and rep["count"] >= 1


def test_search(capsys):
    code, rep = run_json(capsys, "search", "--dim", "2", "--holonomy", "1")
    assert code == 0 and rep["count"] == 0
    code, rep = run_json(capsys, "search", "--dim", "4", "--holonomy", "2", "--budget", "0")
    assert rep["count"] == 0


def test_deterministic_output(capsys):
    for argv in (["structures", "M4p", "--convention", "pin-", "--enumerate"],
                 ["invariants", "M1tilde"], ["structures", "M2p", "--convention", "pin+"]):
        a = run(capsys, *argv, "--json")[1]
        b = run(capsys, *argv, "--json")[1]
        assert a == b
        assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_exact_sqrt():
    assert exact_sqrt(Fraction(1, 4)) == Fraction(1, 2)
    assert exact_sqrt(Fraction(1, 2)) == RootTwoDyadic(0, 1, 1)
    assert exact_sqrt(Fraction(3)) is None


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "flatpin", "structures", "M5", "--convention",
                          "spin", "--json"], capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["count"] == 16
