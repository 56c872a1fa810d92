import csv
import subprocess
import sys

import numpy as np
import pytest

from digitalsums import cli, figures
from digitalsums.config import RunConfig
from digitalsums.specfun import LN2
from digitalsums.residues import OMEGA


def run(argv, capsys):
    code = cli.main(argv)
    return code, capsys.readouterr().out


def rows(text):
    return [line.split(",") for line in text.strip().splitlines()]


def test_dump_examples(capsys):
    code, out = run(["dump", "s", "--m", "1", "--from", "1", "--to", "4"], capsys)
    assert code == 0 and rows(out) == [["n", "value"], ["1", "0"], ["2", "2"], ["3", "2"], ["4", "8"]]
    assert rows(run(["dump", "cw", "--from", "8", "--to", "8"], capsys)[1])[1] == ["8", "24"]
    assert rows(run(["dump", "v", "--from", "44", "--to", "44"], capsys)[1])[1] == ["44", "3"]


def test_dump_rationals(capsys):
    _, out = run(["dump", "tw", "--m", "1", "--from", "4", "--to", "4"], capsys)
    assert rows(out)[1] == ["4", "7/4"]


@pytest.mark.parametrize("argv", [
    ["dump", "v2", "--from", "0", "--to", "3"],
    ["dump", "s", "--m", "9"],
    ["dump", "mdc", "--k", "1"],
    ["dump", "v", "--from", "5", "--to", "2"],
    ["dump", "nope"],
    ["coeffs", "ts", "--m", "7"],
])
def test_usage_errors_exit_2(argv):
    with pytest.raises(SystemExit) as info:
        cli.main(argv)
    assert info.value.code == 2


def test_dump_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for p in (a, b):
        assert cli.main(["dump", "ts", "--m", "2", "--from", "1", "--to", "300", "--out", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert b"\r" not in a.read_bytes()


def test_coeffs_mdc_k2(tmp_path):
    out = tmp_path / "c.csv"
    assert cli.main(["coeffs", "mdc", "--k", "2", "-J", "20", "--out", str(out)]) == 0
    table, means = out.read_text().split("\n\n")
    rec = list(csv.DictReader(table.splitlines()))
    a0 = [r for r in rec if r["function"] == "n^1 lg^0" and r["j"] != "0"]
    beta = 1j * OMEGA * np.arange(1, 21)
    want = 1 / (LN2 * beta * (beta + 1))
    got = np.array([complex(float(r["re"]), float(r["im"])) for r in a0])
    assert np.max(np.abs(got - want)) <= 1e-13
    m = dict(line.split(",") for line in means.strip().splitlines()[1:])
    assert float(m["c_k"]) == 1


def test_coeffs_means(capsys):
    _, out = run(["coeffs", "tw", "--m", "1", "-J", "10"], capsys)
    m = dict(line.split(",") for line in out.split("\n\n")[1].strip().splitlines()[1:])
    assert abs(float(m["F_W1"]) - 0.704687) <= 1e-5
    _, out = run(["coeffs", "ts", "--m", "1", "-J", "10"], capsys)
    m = dict(line.split(",") for line in out.split("\n\n")[1].strip().splitlines()[1:])
    assert abs(float(m["f_1_0_0"]) - float(m["f_1_0_0 formula"])) <= 1e-12


def test_verify_exit_codes(capsys):
    code, out = run(["verify", "symbolic"], capsys)
    assert code == 0 and "PASS" in out and "FAIL" not in out
    code, out = run(["verify", "constants"], capsys)
    # the printed two-term approximation of f_{M,M-1,0} is off by M/4
    assert code == 1 and "FAIL" in out


def test_verify_env_override(monkeypatch):
    monkeypatch.setenv("DIGITALSUMS_N_INT", "1000")
    monkeypatch.setenv("DIGITALSUMS_TOL_DGF", "1e-3")
    cfg = RunConfig.from_env()
    assert cfg.N_int == 1000 and cfg.tol("dgf", 1e-6) == 1e-3
    assert RunConfig.from_env(J=77).J == 77


def test_verify_s1_bounds_small(capsys, monkeypatch):
    monkeypatch.setenv("DIGITALSUMS_N_INT", "5000")
    code, out = run(["verify", "brown"], capsys)
    assert code == 0 and "n<=5000" in out


def test_figures_grid_closed_under_doubling():
    ns = figures.dyadic_grid(1, 14, 128)
    s = set(ns.tolist())
    assert all(n // 2 in s for n in ns if n >= 256)
    assert ns[0] == 2 and ns[-1] == 2**14


def test_figures_command(tmp_path, capsys):
    code = cli.main(["figures", "--out", str(tmp_path), "--lg-max", "10", "--per-period", "64"])
    assert code == 0
    names = sorted(p.name for p in tmp_path.iterdir())
    assert len(names) == 10 and "fig3e_tw1.csv" in names
    with open(tmp_path / "fig1_M1.csv") as fh:
        rec = list(csv.DictReader(fh))
    y = np.array([float(r["y"]) for r in rec])
    assert y.min() >= -2 and y.max() <= 0
    pow2 = [r for r in rec if int(r["n"]) & (int(r["n"]) - 1) == 0]
    assert all(float(r["lg_n"]).is_integer() for r in pow2)


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "digitalsums.cli", "dump", "v", "--from", "7", "--to", "7"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.splitlines()[1] == "7,3"
