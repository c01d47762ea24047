import csv
import json
import math
import shutil
import subprocess
import sys

import numpy as np
import pytest

from photonwalk import cli
from photonwalk.formats import read_results, read_series, write_parameters, write_unitary
from photonwalk.mesh import BeamSplitterParam


def run(*argv):
    return cli.main([str(a) for a in argv])


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def test_parse_length():
    assert cli.parse_length("15um", "um") == 15.0
    assert cli.parse_length("5cm", "cm") == 5.0
    assert cli.parse_length("10mm", "cm") == 1.0
    assert cli.parse_length("1.5cm", "um") == 15000.0
    assert cli.parse_length("0.1mm", "mm") == 0.1
    for bad in ("15", "0", "5 m", "um", "1.2.3mm"):
        with pytest.raises(Exception):
            cli.parse_length(bad, "cm")


def test_qw_trivial_line(tmp_path):
    pos = tmp_path / "line3.csv"
    pos.write_text("label,x,y\n1,0,0\n2,15,0\n3,30,0\n")
    out = tmp_path / "out"
    assert run("qw", "--positions", pos, "--inject", 1, "--z", "0cm",
               "--resolution", "quick", "--out", out) == 0
    assert np.array_equal(read_results(out / "results.csv"), [1.0, 0.0, 0.0])
    for name in ("hamiltonian.csv", "positions.csv", "facula.csv", "facula.png", "manifest.json"):
        assert (out / name).exists()
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["subcommand"] == "qw"
    assert manifest["parameters"]["z_cm"] == 0.0
    assert "results.csv" in manifest["outputs"]


def test_qw_lattice_normalized(tmp_path):
    out = tmp_path / "out"
    assert run("qw", "--lattice", "5,5,15um,15um", "--inject", 13, "--z", "1cm",
               "--resolution", "40x30", "--out", out) == 0
    probs = read_results(out / "results.csv")
    assert probs.shape == (25,)
    assert abs(probs.sum() - 1.0) < 1e-10
    grid = read_csv(out / "facula.csv")
    assert len(grid) == 30 and len(grid[0]) == 40


def test_usage_errors(tmp_path):
    with pytest.raises(SystemExit) as exc:
        run("qw", "--inject", 1, "--z", "1cm", "--out", tmp_path)
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        run("qw", "--lattice", "3,1,15,15", "--inject", 1, "--z", "1cm", "--out", tmp_path)
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        run("qw", "--lattice", "3,1,15um,15um", "--inject", 1, "--z", "1", "--out", tmp_path)
    assert exc.value.code == 2


def test_format_and_domain_exit_codes(tmp_path):
    dup = tmp_path / "dup.csv"
    dup.write_text("label,x,y\n1,0,0\n1,15,0\n")
    assert run("qw", "--positions", dup, "--inject", 1, "--z", "1cm",
               "--out", tmp_path / "a") == 3
    assert run("qw", "--lattice", "3,1,15um,15um", "--inject", 9, "--z", "1cm",
               "--out", tmp_path / "b") == 4
    assert run("multi", "--lattice", "3,1,15um,15um", "--state", "|200>",
               "--stats", "fermionic", "--z", "1mm", "--out", tmp_path / "c") == 4


def test_qsw_amplitude_zero_matches_qw_byte_for_byte(tmp_path):
    qw_out, qsw_out = tmp_path / "qw", tmp_path / "qsw"
    common = ["--lattice", "5,5,15um,15um", "--inject", 13, "--z", "5mm"]
    assert run("qw", *common, "--resolution", "quick", "--out", qw_out) == 0
    assert run("qsw", *common, "--amplitude", 0, "--z-interval", "0.1mm",
               "--realizations", 4, "--seed", 1, "--out", qsw_out) == 0
    assert (qw_out / "results.csv").read_bytes() == (qsw_out / "results.csv").read_bytes()


def test_qsw_seed_reproducible(tmp_path):
    args = ["qsw", "--lattice", "5,5,15um,15um", "--inject", 13, "--z", "5mm",
            "--amplitude", 1, "--z-interval", "0.1mm", "--realizations", 4,
            "--seed", 7, "--watch", 1, "--watch", 13, "--z-range", "2mm..5mm"]
    assert run(*args, "--out", tmp_path / "a") == 0
    assert run(*args, "--out", tmp_path / "b") == 0
    for name in ("results.csv", "series.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
    series = read_series(tmp_path / "a" / "series.csv")
    assert len(series.z) == 100
    assert series.z[0] == 0.2 and abs(series.z[-1] - 0.5) < 1e-15
    assert list(series.values) == [1, 13]
    probs = read_results(tmp_path / "a" / "results.csv")
    assert abs(probs.sum() - 1.0) < 1e-10


def test_rerun_reproduces_outputs(tmp_path):
    out = tmp_path / "run"
    assert run("qsw", "--lattice", "4,1,15um,15um", "--inject", 2, "--z", "3mm",
               "--amplitude", 0.8, "--z-interval", "0.1mm", "--realizations", 3,
               "--seed", 9, "--out", out) == 0
    snapshot = {p.name: p.read_bytes() for p in out.iterdir()}
    saved = tmp_path / "manifest.json"
    shutil.copy(out / "manifest.json", saved)
    shutil.rmtree(out)
    assert run("rerun", saved) == 0
    for name, blob in snapshot.items():
        assert (out / name).read_bytes() == blob


def test_multi_full_output_set(tmp_path):
    out = tmp_path / "out"
    assert run("multi", "--lattice", "3,1,15um,15um", "--state", "|110>",
               "--stats", "bosonic", "--z", "2mm",
               "--watch-state", "|011>", "--out", out) == 0
    names = {p.name for p in out.iterdir()}
    assert {"distribution.csv", "correlation.csv", "marginal.csv", "series.csv",
            "positions.csv", "manifest.json"} <= names
    rows = read_csv(out / "distribution.csv")
    assert rows[0] == ["state", "probability"]
    total = sum(float(r[1]) for r in rows[1:])
    assert abs(total - 1.0) < 1e-10
    gamma = np.array([[float(c) for c in row] for row in read_csv(out / "correlation.csv")])
    assert gamma.shape == (3, 3)
    assert np.allclose(gamma, gamma.T)
    marginal = read_results(out / "marginal.csv")
    assert abs(marginal.sum() - 1.0) < 1e-10


def test_multi_three_photons_needs_fixed_for_correlation(tmp_path):
    base = ["multi", "--lattice", "4,1,15um,15um", "--state", "|1110>",
            "--stats", "bosonic", "--z", "1mm"]
    out = tmp_path / "all"
    assert run(*base, "--out", out) == 0
    assert not (out / "correlation.csv").exists()
    assert run(*base, "--perspective", "correlation", "--out", tmp_path / "x") == 4
    out2 = tmp_path / "fixed"
    assert run(*base, "--fixed", "|0100>", "--out", out2) == 0
    assert (out2 / "correlation.csv").exists()


def test_boson_hom_via_params_file(tmp_path):
    params = tmp_path / "hom.csv"
    write_parameters(
        [BeamSplitterParam(order=1, m=1, n=2, theta=math.pi / 4, phi=0.0)], params
    )
    out = tmp_path / "out"
    assert run("boson", "--modes", 2, "--params", params, "--state", "|11>",
               "--out", out) == 0
    rows = read_csv(out / "distribution.csv")
    table = {r[0]: float(r[1]) for r in rows[1:]}
    assert abs(table["|20>"] - 0.5) < 1e-12
    assert abs(table["|11>"]) < 1e-12
    assert abs(table["|02>"] - 0.5) < 1e-12
    assert (out / "unitary.csv").exists() and (out / "parameters.csv").exists()


def test_boson_unitary_sources(tmp_path, capsys):
    good = tmp_path / "good.csv"
    write_unitary(np.eye(3), good)
    out = tmp_path / "out"
    assert run("boson", "--modes", 3, "--unitary", good, "--state", "|111>",
               "--out", out) == 0
    rows = read_csv(out / "distribution.csv")
    table = {r[0]: float(r[1]) for r in rows[1:]}
    assert table["|111>"] == 1.0
    assert not (out / "parameters.csv").exists()

    bad = tmp_path / "bad.csv"
    write_unitary(np.eye(3) + 0.5, bad)
    assert run("boson", "--modes", 3, "--unitary", bad, "--state", "|111>",
               "--out", tmp_path / "x") == 4
    err = capsys.readouterr().err
    assert "not unitary" in err and "1.750" in err  # names the max deviation


def test_boson_random_seed_reproducible(tmp_path):
    args = ["boson", "--style", "clements", "--modes", 4, "--random-seed", 11,
            "--state", "|0011>"]
    assert run(*args, "--out", tmp_path / "a") == 0
    assert run(*args, "--out", tmp_path / "b") == 0
    for name in ("distribution.csv", "unitary.csv", "parameters.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_bench_permanent_writes_report(tmp_path):
    out = tmp_path / "out"
    assert run("bench-permanent", "--n-range", "2..4", "--trials", 2, "--out", out) == 0
    rows = read_csv(out / "bench.csv")
    assert rows[0] == ["algorithm", "n", "median_ns", "relative_error_vs_dispatcher"]
    algorithms = {r[0] for r in rows[1:]}
    assert {"naive", "ryser", "ryser-gray", "glynn", "glynn-gray"} <= algorithms
    assert all(float(r[3]) <= 1e-9 for r in rows[1:])


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "photonwalk.cli", "--version"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "photonwalk" in proc.stdout
