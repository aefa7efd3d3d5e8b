import csv
import io
import json
import subprocess
import sys

import pytest

from qpstairs.cli import main, parse_range


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_range():
    assert parse_range("3") == range(3, 4)
    assert parse_range("0..5") == range(0, 6)


def test_acc_and_inverse(capsys):
    code, out, _ = run(capsys, "acc", "--b", "1/3")
    assert code == 0 and out.startswith("3 + 2*sqrt(2) ≈ 5.828427124746190097603377448")
    code, out, _ = run(capsys, "accinv", "--pq", "6")
    assert out.splitlines() == ["U: 5/11 ≈ 0.454545454545454545454545454545", "L: 1/5 ≈ 0.2"]
    code, _, err = run(capsys, "acc", "--b", "2")
    assert code == 2 and "error" in err


def test_class(capsys):
    code, out, _ = run(capsys, "class", "--pq", "6", "--format", "json")
    assert code == 0 and json.loads(out)["d"] == 3
    code, _, err = run(capsys, "class", "--pq", "3")
    assert code == 1 and "3/1" in err


def test_bad_arguments(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["class", "--pq", "x"])
    assert exc.value.code == 2
    code, _, _ = run(capsys, "symmetry", "--T", "R S")
    assert code == 2
    code, _, _ = run(capsys, "verify", "perfect")
    assert code == 2


def test_symmetry_and_family(capsys):
    code, out, _ = run(capsys, "symmetry", "--T", "S", "--pq", "6", "--refl", "2")
    assert "S#(3,2,6,1,3,+1) = (15,4,35,6,3,-1)" in out
    code, out, _ = run(capsys, "family", "--n", "1", "--dir", "l", "--steps", "1",
                       "--format", "csv")
    table = list(csv.reader(io.StringIO(out)))
    assert table[0][:4] == ["family", "n", "dir", "kappa"]
    assert table[3][4:] == ["14", "9", "29", "4", "13", "1"]
    code, out, _ = run(capsys, "family", "--n", "1", "--dir", "l", "--format", "json")
    assert json.loads(out)[0]["z_inf"] == "7/2+5/6*sqrt(21)"


def test_verify_commands(capsys):
    code, out, _ = run(capsys, "verify", "perfect", "--pq", "6")
    assert code == 0 and out.rstrip().endswith("verdict Exceptional")
    code, out, _ = run(capsys, "verify", "perfect", "--class",
                       '{"d": 3, "m": 2, "p": 6, "q": 1, "t": 3, "eps": 1}', "--budget", "1")
    assert code == 1 and "BudgetExceeded" in out
    code, out, _ = run(capsys, "verify", "blocking", "--n", "0..2")
    assert code == 0 and all(line.startswith("CENTER-BLOCKING ok") for line in out.splitlines())
    code, out, _ = run(capsys, "verify", "live", "--n", "0..1")
    assert out.splitlines()[0].startswith("id#(S^U)_u,0: Unknown")
    assert "id#(S^U)_l,1: Live" in out


def test_plot_outputs(capsys, tmp_path):
    code, out, _ = run(capsys, "plot", "--pq", "6", "--b", "2/3", "--zmin", "5", "--zmax", "8",
                       "--out", str(tmp_path))
    assert code == 0
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == ["envelope.csv", "envelope.json", "envelope.svg"]
    assert (tmp_path / "envelope.csv").read_text().count("\n") == 4
    first = (tmp_path / "envelope.svg").read_bytes()
    run(capsys, "plot", "--pq", "6", "--b", "2/3", "--zmin", "5", "--zmax", "8",
        "--out", str(tmp_path), "--format", "svg")
    assert (tmp_path / "envelope.svg").read_bytes() == first
    code, _, _ = run(capsys, "plot", "--pq", "6", "--out", str(tmp_path))
    assert code == 2


def test_plot_profile_and_acc(capsys, tmp_path):
    code, out, _ = run(capsys, "plot", "--n", "1", "--steps", "4", "--out", str(tmp_path),
                       "--format", "csv", "--png")
    assert code == 0 and (tmp_path / "profile_U_l1.png").exists()
    code, out, _ = run(capsys, "plot", "--kind", "acc", "--out", str(tmp_path))
    assert (tmp_path / "acc.csv").read_text().splitlines()[0] == \
        "b,acc_exact,acc_decimal,volume_decimal"


def test_tables(capsys, tmp_path):
    code, out, _ = run(capsys, "tables", "--name", "y", "--i", "0..3")
    assert out.splitlines() == ["k,y", "0,0", "1,1", "2,6", "3,35"]
    target = tmp_path / "p.csv"
    run(capsys, "tables", "--name", "principal", "--i", "0..1", "--out", str(target))
    assert target.read_text().splitlines()[1] == "0,3,2,6,1,3,1"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qpstairs", "acc", "--b", "0", "--digits", "5"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.strip() == "7/2 + 3/2*sqrt(5) ≈ 6.8541"


def test_verify_all_small(capsys):
    code, out, _ = run(capsys, "verify", "all", "--i", "0..1", "--n", "0..2", "--steps", "4")
    lines = out.splitlines()
    assert code == 0
    assert [ln.split()[0] for ln in lines].count("PASS") == 12
    assert any(ln.startswith("NOTE 4") and "3/1, 17/3" in ln for ln in lines)
