import json
import subprocess
import sys

import pytest

from lrcodes import gf2
from lrcodes.cli import fmt_fraction, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_construct_writes_matrix_and_report(tmp_path, capsys):
    path = tmp_path / "h.pchk"
    code, out, _ = run(capsys, "construct", "hypergraph:beta=2", "--out", str(path))
    assert code == 0
    rep = json.loads(out)
    assert (rep["n"], rep["k"], rep["rate"], rep["spec"]) == (14, 8, "4/7", "hypergraph:beta=2")
    assert gf2.read_pchk(path).shape == (6, 14)


def test_construct_to_stdout(capsys):
    code, out, err = run(capsys, "construct", "spc:n=3")
    assert code == 0
    assert gf2.parse_pchk(out).to_strings() == ["111"]
    assert json.loads(err)["k"] == 2


@pytest.mark.parametrize("argv,expected", [
    (("construct", "bogus:x=1"), 2),
    (("construct", "regular:k=4,r=4"), 3),
    (("construct", "r2chain:t=6,k=8"), 3),
    (("verify", "no_such_file_or_spec"), 2),
])
def test_error_exit_codes(capsys, argv, expected):
    code, _, err = run(capsys, *argv)
    assert code == expected
    assert err.startswith("error:")


def test_infeasible_message(capsys):
    _, _, err = run(capsys, "construct", "r2chain:t=6,k=8")
    assert "k ≥ 16 required" in err


def test_verify_file_and_spec(tmp_path, capsys):
    path = tmp_path / "c.pchk"
    run(capsys, "construct", "fixture:eq3_14_8", "--out", str(path))
    code, out, _ = run(capsys, "verify", str(path), "--r", "4", "--t", "3", "--mode", "seq")
    assert code == 0 and json.loads(out)["checked_patterns"] == 364
    code, out, _ = run(capsys, "verify", str(path), "--r", "4", "--t", "4")
    assert code == 1 and json.loads(out)["failure_count"] == 34
    code, _, err = run(capsys, "verify", str(path))
    assert code == 2 and "--r" in err


def test_verify_defaults_to_claim(capsys):
    code, out, _ = run(capsys, "verify", "pg:s=2")
    rep = json.loads(out)
    assert code == 0 and rep["mode"] == "parallel" and (rep["r"], rep["t"]) == (4, 5)
    code, out, _ = run(capsys, "verify", "mols:r=3,t=2", "--spot-check", "50")
    assert code == 0 and json.loads(out)["t"] == 3


def test_verify_sampled(capsys):
    argv = ("verify", "product:(spc:n=3)x(spc:n=3)", "--t", "4", "--samples", "2000", "--seed", "9")
    code, out, _ = run(capsys, *argv)
    a = json.loads(out)
    assert code == 1 and a["sampled"] and a["seed"] == 9
    _, out, _ = run(capsys, *argv)
    assert json.loads(out)["failures"] == a["failures"]


def test_inspect_distance(capsys):
    code, out, _ = run(capsys, "inspect", "fixture:item3_10_5", "--distance")
    rep = json.loads(out)
    assert code == 0 and rep["d"] == 4 and rep["r_claimed"] == 3


def test_bounds_outputs(capsys):
    _, out, _ = run(capsys, "bounds", "--k", "8", "--r", "4", "--t", "3")
    assert "n_song_t3: 13" in out and "n_new_t3: 14" in out
    _, out, _ = run(capsys, "bounds", "--r", "2", "--t", "7", "--rate")
    assert "rate_cap_availability_4dp: 0.3183" in out
    _, out, _ = run(capsys, "bounds", "--r", "6", "--t", "3", "--parallel", "--format", "json")
    assert json.loads(out)["n_min_parallel"] == 35
    code, _, _ = run(capsys, "bounds", "--r", "2", "--rate")
    assert code == 2


def test_compare_table1(capsys):
    _, out, _ = run(capsys, "compare", "table1")
    lines = out.strip().splitlines()
    assert lines[1].endswith("0.4063,0.3694,0.3410,0.3183")
    assert lines[2].endswith("0.4000,0.3810,0.3478,0.3333")


def test_compare_csv_files(tmp_path, capsys):
    out = tmp_path / "t3.csv"
    assert run(capsys, "compare", "t3bounds", "--r-max", "10", "--out", str(out))[0] == 0
    rows = out.read_text().splitlines()
    assert rows[0] == "r,k,song,new,delta"
    assert all(int(r.split(",")[4]) >= 0 for r in rows[1:])
    _, gaps, _ = run(capsys, "compare", "fig2_gap", "--beta-max", "20")
    assert {int(line.split(",")[3]) for line in gaps.splitlines()[1:]} <= {0, 1, 2}
    _, prod, _ = run(capsys, "compare", "product_suboptimality")
    assert "16464,432,0.026239067" in prod


def test_backend_flag(capsys):
    code, out, _ = run(capsys, "--backend", "python", "verify", "fixture:item3_10_5")
    assert code == 0 and json.loads(out)["backend"] == "python"


def test_fmt_fraction():
    from fractions import Fraction

    assert fmt_fraction(Fraction(2048, 6435)) == "0.3183"
    assert fmt_fraction(Fraction(2, 5)) == "0.4000"
    assert fmt_fraction(Fraction(-1, 3), 2) == "-0.33"
    assert fmt_fraction(Fraction(7, 2), 0) == "4"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lrcodes", "bounds", "--k", "5", "--r", "3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "n_new_t3: 10" in proc.stdout
