import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from contact_surgery import cli

DATA = Path(__file__).resolve().parent.parent / "data"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def test_invariants_empty():
    code, out, _ = run("invariants", DATA / "empty.json")
    assert code == 0
    assert out.strip() == "d3 = 0; H1 = 0; spin structures: 1; Gamma = 0"


def test_invariants_l31():
    code, out, _ = run("invariants", DATA / "l31_plus.json")
    assert code == 0 and out.startswith("d3 = 1/6; H1 = Z/3; spin structures: 1; Gamma = (2)")


def test_invariants_xi1_json():
    code, out, _ = run("invariants", DATA / "xi1.json", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["d3"] == "1" and doc["H1"] == {"invariant_factors": [], "free_rank": 0}


def test_d3_undefined_exit_1():
    code, _, err = run("d3", DATA / "torus-bundle-like.json")
    assert code == 1 and "d3 undefined: Euler class non-torsion" in err


@pytest.mark.parametrize("argv", [
    ("d3", "no-such-file.json"),
    ("lens-tight", "4", "2"),
    ("frobnicate",),
    ("lutz-verify",),
])
def test_usage_errors_exit_2(argv):
    code, _, _ = run(*argv)
    assert code == 2


def test_malformed_diagram(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"components": [{"tb": -1, "rot": 1, "coeff": -1}], "linking": [[0]]}')
    code, _, err = run("homology", bad)
    assert code == 2 and "error" in err


def test_homology_spin_gamma():
    assert run("homology", DATA / "l21.json")[1].strip() == "H1 = Z/2; order = 2"
    code, out, _ = run("spin", DATA / "l21.json")
    assert out.splitlines()[0] == "spin structures: 2"
    code, out, _ = run("gamma", DATA / "l21.json", "--json")
    assert [g["value"] for g in json.loads(out)["gamma"]] == [[0], [1]]


def test_rational():
    code, out, _ = run("rational", DATA / "l31_plus.json", DATA / "knot_l31.json")
    assert code == 0 and out.strip() == "D = 3; tb_Q = -2/3; rot_Q = 1/3; sl_Q = -1/3"


def test_lutz_verify_file_and_random():
    code, out, _ = run("lutz-verify", DATA / "l31_plus.json", DATA / "knot_l31.json")
    assert code == 0 and out.strip().endswith("PASS")
    code, out, _ = run("lutz-verify", "--random", "40", "--seed", "3")
    assert code == 0 and "failures: 0" in out


def test_lutz_verify_degenerate_base(tmp_path):
    k = tmp_path / "k.json"
    k.write_text('{"t": -1, "r": 0, "alpha": [0]}')
    base = tmp_path / "d.json"
    base.write_text('{"components": [{"tb": -1, "rot": 0, "coeff": 1}], "linking": [[0]]}')
    code, _, err = run("lutz-verify", base, k)
    assert code == 1 and "singular" in err


def test_kirby_script():
    code, out, _ = run("kirby", DATA / "l21.json", DATA / "moves.json")
    assert code == 0
    assert out.splitlines()[-1] == "invariant factors constant along the sequence: [2]"


def test_kirby_bad_sublink():
    code, _, err = run("kirby", DATA / "l31_plus.json", DATA / "moves.json", "--sublink")
    assert code == 2 and "characteristic" in err


def test_kirby_random_deterministic():
    a = run("kirby", "--random", "10", "--seed", "5", "--json")
    b = run("kirby", "--random", "10", "--seed", "5", "--json")
    assert a == b and a[0] == 0 and json.loads(a[1])["constant"]


def test_lens_commands():
    code, out, _ = run("lens-tight", "3", "1")
    assert out.splitlines()[1:] == ["rot [-1]: d3 = 1/6; Gamma = (1)", "rot [1]: d3 = 1/6; Gamma = (2)"]
    assert run("lens-obstruct", "5", "2", "1", "0")[1].strip().endswith("| obstructed")
    code, out, _ = run("lens-check", "5", "1", "3", "1")
    assert code == 0 and "fail: condition 3, 5" in out
    code, out, _ = run("lens-search", "7")
    assert out.strip().startswith("L(3,")


def test_gamma_collision_and_experiment():
    code, out, _ = run("gamma-collision", "2")
    assert out.startswith("none-exists")
    code, out, _ = run("gamma-collision", "3", "--json")
    doc = json.loads(out)["witness"]
    assert doc["first"]["d3"] == doc["second"]["d3"] == "1/6"
    code, out, _ = run("d3-gamma-experiment", "2", "1")
    assert ", 0 counterexamples" in out.splitlines()[0]


def test_json_output_is_deterministic():
    a = run("d3-gamma-experiment", "3", "1", "--json")
    b = run("d3-gamma-experiment", "3", "1", "--json")
    assert a == b


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "contact_surgery", "d3", str(DATA / "l21.json")],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "d3 = 1/4"
