import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from bosonepr import cli
from bosonepr import sweep as sw


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("text,value", [
    ("5pi/6", 5 * np.pi / 6),
    ("8.69pi/6", 8.69 * np.pi / 6),
    ("pi/8", np.pi / 8),
    ("-pi/4", -np.pi / 4),
    ("3*pi/8", 3 * np.pi / 8),
    ("pi", np.pi),
    ("0.25", 0.25),
    ("-1e-3", -1e-3),
])
def test_parse_angle(text, value):
    assert cli.parse_angle(text) == pytest.approx(value, rel=1e-15)


@pytest.mark.parametrize("text", ["abc", "pi/", "2pi/x", "inf", ""])
def test_parse_angle_rejects(text):
    with pytest.raises(Exception):
        cli.parse_angle(text)


def test_parse_range_and_complex():
    assert cli.parse_range("0:1:3") == (0.0, 0.5, 1.0)
    assert cli.parse_range("2.5") == (2.5,)
    assert cli.parse_range("pi/2:pi:2", angle=True) == pytest.approx((np.pi / 2, np.pi))
    assert cli.parse_complex("1+2i") == 1 + 2j
    with pytest.raises(Exception):
        cli.parse_range("0:1:1")
    with pytest.raises(Exception):
        cli.parse_range("1:0:5")


def test_correlate_examples(capsys):
    code, out, _ = run(capsys, "correlate", "--state", "phi", "--x", "2", "--alpha", "pi/3")
    assert code == 0 and float(out) == 0.0
    code, out, _ = run(capsys, "correlate", "--state", "xi", "--x", "1")
    assert float(out) == pytest.approx(18 / 19, abs=1e-14)
    x = 1e6
    y = (2 * x + 1) ** 2
    code, out, _ = run(capsys, "correlate", "--state", "xi", "--x", "1e6", "--theta", "0", "--theta-tilde", "0")
    assert abs(float(out) - 2 * y / (2 * y + 1)) < 2e-13


def test_correlate_both_and_formats(capsys):
    args = ["correlate", "--state", "chi", "--alpha-coef", "1+2i", "--beta-coef=-0.5i", "--mass", "1.3",
            "--k", "1,2,3", "--p=-1,0.5,2", "--theta", "5pi/6", "--theta-tilde", "8.69pi/6",
            "--method", "both", "--gauge", "spherical"]
    code, out, _ = run(capsys, *args)
    assert code == 0
    fields = dict(line.split("=") for line in out.strip().splitlines())
    assert abs(float(fields["residual"])) < 1e-10
    code, out, _ = run(capsys, *args, "--format", "json")
    row = json.loads(out)[0]
    assert row["method"] == "both" and abs(row["residual"]) < 1e-10
    code, out, _ = run(capsys, *args, "--format", "csv")
    assert out.splitlines()[0] == "state,method,value,oracle,residual"


def test_correlate_explicit_gauge_and_spin(capsys):
    code, out, _ = run(capsys, "correlate", "--x", "1", "--alpha", "pi/2", "--theta", "0.3",
                       "--gauge", "explicit", "--gauge-vector", "0,1,0", "--method", "both")
    assert code == 0
    code, out, _ = run(capsys, "correlate", "--state", "psi", "--x", "1", "--spin-a", "0,0,1", "--spin-b", "0,0,-1")
    assert float(out) == pytest.approx(2 / 11)


@pytest.mark.parametrize("argv,fragment", [
    (["correlate", "--x", "1", "--alpha", "0"], "coincident momenta unsupported (paper assumes k≠p)"),
    (["correlate", "--k", "0,0,1", "--p", "0,0,1"], "coincident momenta unsupported (paper assumes k≠p)"),
    (["correlate"], "give --x"),
    (["correlate", "--x", "1", "--gauge", "explicit"], "gauge-vector"),
    (["correlate", "--x", "1", "--k", "1,0,0", "--p", "0,1,0"], "not both"),
    (["correlate", "--x", "1", "--measure", "spin"], "spin"),
    (["sweep"], "preset"),
    (["sweep", "--x", "0:1:2", "--alpha", "0:1:2"], "alpha"),
    (["sweep", "--state", "psi", "--x", "0:1:2", "--alpha", "1:2:2"], "x = 0"),
    (["chsh"], "--x"),
    (["chsh", "--x", "0:1:2", "--state", "chi"], "centre-of-mass"),
    (["verify", "--trials", "0"], "trials"),
])
def test_invalid_input_exit_code(capsys, argv, fragment):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert fragment in err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["correlate", "--theta", "abc", "--x", "1"])
    assert exc.value.code == 2


def test_io_error_exit_code(capsys, tmp_path):
    code, _, err = run(capsys, "sweep", "--preset", "fig2", "--out", str(tmp_path / "missing" / "f.csv"))
    assert code == 3 and "error" in err


def test_sweep_small_grid(capsys, tmp_path):
    out = tmp_path / "g.csv"
    code, _, _ = run(capsys, "sweep", "--x", "0.5:2:2", "--alpha", "pi/3:pi:2", "--out", str(out), "--method", "both")
    assert code == 0
    raw = out.read_bytes()
    assert b"\r" not in raw
    rows = list(csv.DictReader(io.StringIO(raw.decode("utf-8"))))
    assert len(rows) == 4
    assert [float(r["x"]) for r in rows] == [0.5, 0.5, 2.0, 2.0]
    assert all(abs(float(r["residual"])) <= 1e-10 for r in rows)


def test_sweep_json_mirrors_csv(capsys):
    _, out_csv, _ = run(capsys, "sweep", "--x", "0:1:3", "--alpha", "1:2:2")
    _, out_json, _ = run(capsys, "sweep", "--x", "0:1:3", "--alpha", "1:2:2", "--format", "json")
    rows = list(csv.DictReader(io.StringIO(out_csv)))
    objs = json.loads(out_json)
    assert len(rows) == len(objs) == 6
    for r, o in zip(rows, objs):
        assert float(r["correlation"]) == o["correlation"]
        assert all(not isinstance(v, (dict, list)) for v in o.values())


def test_sweep_config_validation():
    with pytest.raises(ValueError):
        sw.SweepConfig(x_values=(1.0, 0.5), alpha_values=(1.0,))
    with pytest.raises(ValueError):
        sw.SweepConfig(x_values=(-1.0,), alpha_values=(1.0,))
    with pytest.raises(ValueError):
        sw.SweepConfig(x_values=(1.0,), alpha_values=(4.0,))
    with pytest.raises(ValueError):
        sw.SweepConfig(x_values=(1.0,), alpha_values=(1.0,), fmt="xml")
    with pytest.raises(ValueError):
        sw.grid(0, 1, 1)


def test_chsh_canonical_summary(capsys, tmp_path):
    out = tmp_path / "c.csv"
    code, stdout, _ = run(capsys, "chsh", "--x", "0:0.6:7", "--out", str(out))
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    assert float(rows[0]["left_side"]) == pytest.approx(4 * np.sqrt(2) / 3, abs=1e-12)
    assert rows[0]["violated"] == "false" and rows[-1]["violated"] == "true"
    parts = dict(tok.split("=") for tok in stdout.split())
    assert abs(float(parts["x0_bisection"]) - float(parts["x0_closed"])) < 1e-9
    assert float(parts["x0_closed"]) == pytest.approx(0.0493, abs=1e-4)


def test_chsh_optimize_and_explicit(capsys):
    code, out, err = run(capsys, "chsh", "--x", "0.2:0.4:2", "--angles", "optimize", "--format", "json")
    assert code == 0
    for row in json.loads(out):
        y = (2 * row["x"] + 1) ** 2
        assert row["left_side"] == pytest.approx(2 * y / (2 * y + 1) * 2 * np.sqrt(2), abs=1e-6)
    code, out, _ = run(capsys, "chsh", "--x", "0", "--angles", "0,pi/8,6pi/8,3pi/8")
    assert float(out.splitlines()[1].split(",")[1]) == pytest.approx(4 * np.sqrt(2) / 3, abs=1e-12)


def test_verify_command(capsys, tmp_path):
    out = tmp_path / "v.txt"
    code, _, _ = run(capsys, "verify", "--trials", "3", "--seed", "7", "--out", str(out))
    text = out.read_text()
    assert code == 0
    assert text.count("PASS") == len(text.splitlines()) - 1
    assert text.splitlines()[-1].startswith("26/26")


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "bosonepr.cli", "correlate", "--state", "psi", "--x", "1"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert float(res.stdout) == pytest.approx(2 / 11)
