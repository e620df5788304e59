import csv
import io
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from gegencoef import cli, figures
from gegencoef.coeffs import model_coeff
from gegencoef.models import ModelFunction


def run(args, capsys):
    code = cli.main(args)
    out, err = capsys.readouterr()
    return code, out, err


def parse(text):
    rows = list(csv.reader(io.StringIO(text)))
    return rows[0], [[float(v) for v in r] for r in rows[1:]]


def test_coeffs_example(capsys):
    code, out, _ = run(["coeffs", "--model", "pole", "--z0", "2", "--lambda", "0.5", "--nmax", "5"], capsys)
    assert code == 0
    header, rows = parse(out)
    assert header == ["n", "value"]
    assert len(rows) == 6
    assert rows[0][1] == pytest.approx(-0.5 * math.log(3), rel=1e-14)


def test_coeffs_round_trip_is_exact(capsys):
    _, out, _ = run(["coeffs", "--model", "pole", "--z0", "2", "--lambda", "3.5", "--nmax", "30"], capsys)
    _, rows = parse(out)
    f = ModelFunction.pole(2.0)
    for n, v in rows:
        assert v == model_coeff(f, int(n), 3.5)


def test_complex_columns(capsys):
    code, out, _ = run(["coeffs", "--model", "pole", "--z0", "0,1.5", "--family", "legendre",
                        "--nmax", "4"], capsys)
    assert code == 0
    header, rows = parse(out)
    assert header == ["n", "value_re", "value_im"]
    f = ModelFunction.pole(1.5j)
    for n, re, im in rows:
        assert complex(re, im) == model_coeff(f, int(n), 0.5)


def test_methods_agree(capsys):
    base = ["coeffs", "--model", "pole", "--z0", "2", "--lambda", "1.5", "--nmax", "10"]
    tables = []
    for extra in ([], ["--method", "quadrature"], ["--method", "contour", "--rho", "3"]):
        code, out, _ = run(base + extra, capsys)
        assert code == 0
        tables.append(np.array(parse(out)[1])[:, 1])
    assert np.allclose(tables[0], tables[1], rtol=1e-12, atol=1e-15)
    assert np.allclose(tables[0], tables[2], rtol=1e-9)


def test_chebyshev_u_family(capsys):
    code, out, _ = run(["coeffs", "--model", "pole", "--z0", "2", "--family", "chebyshev-u",
                        "--nmax", "2"], capsys)
    assert code == 0
    assert parse(out)[1][0][1] == pytest.approx(-2 * (2 - math.sqrt(3)), rel=1e-13)


def test_log_endpoint_zeroth_coefficient_is_nan(capsys):
    code, out, _ = run(["coeffs", "--model", "log-endpoint", "--family", "legendre", "--nmax", "2"], capsys)
    assert code == 0
    assert out.splitlines()[1] == "0,nan"


def test_ratio_example(capsys):
    code, out, _ = run(["ratio", "--model", "log-endpoint", "--nmax", "3"], capsys)
    assert code == 0
    header, rows = parse(out)
    assert header[:3] == ["n", "gamma", "prediction"]
    assert rows[0][1] == pytest.approx(0.75, rel=1e-14)
    assert rows[1][1] == pytest.approx(5 / 6, rel=1e-14)


def test_bound_and_rho_scan(capsys):
    code, out, _ = run(["bound", "--model", "pole", "--z0", "2", "--rho", "1.5", "2.5", "3.5",
                        "--lambda", "1", "--nmax", "20"], capsys)
    assert code == 0
    header, rows = parse(out)
    assert header[-3:] == ["best_rho", "bound", "log10_bound"]
    for r in rows:
        assert r[-1] == min(r[1:4])
    assert rows[-1][-3] == 3.5


def test_truncation_and_qbound(capsys):
    code, out, _ = run(["truncation", "--M", "2", "--rho", "2", "--lambda", "1", "--kind",
                        "lambda_one", "--Nmin", "0", "--Nmax", "5"], capsys)
    assert code == 0
    assert parse(out)[0] == ["N", "bound", "log10_bound"]
    code, out, _ = run(["qbound", "--delta", "1", "--nmax", "5"], capsys)
    assert code == 0
    header, rows = parse(out)
    assert header[:4] == ["n", "ours", "rokhlin", "q"]
    assert all(r[3] <= r[1] <= r[2] for r in rows)


def test_figure5_columns(capsys):
    code, out, _ = run(["figure", "--id", "5", "--gamma", "0.25"], capsys)
    assert code == 0
    header, rows = parse(out)
    assert header == ["N", "log10_bound", "log10_measured_error"]
    assert [r[0] for r in rows] == list(range(8, 81))
    errs = np.array([r[2] for r in rows])
    assert np.all(np.isnan(errs) | (errs >= -12))
    assert np.isnan(errs[-1])


def test_determinism(capsys, tmp_path):
    args = ["figure", "--id", "4", "--nmax", "30"]
    _, a, _ = run(args, capsys)
    _, b, _ = run(args, capsys)
    assert a == b
    out = tmp_path / "fig4.csv"
    assert cli.main(["--out", str(out)] + args) == 0
    assert out.read_bytes() == a.encode()


@pytest.mark.parametrize("args", [
    ["coeffs", "--model", "pole", "--z0", "0.5", "--lambda", "1", "--nmax", "3"],
    ["coeffs", "--model", "pole", "--z0", "2", "--nmax", "3"],
    ["coeffs", "--model", "pole", "--z0", "2,x", "--lambda", "1", "--nmax", "3"],
    ["truncation", "--M", "1", "--rho", "1.1", "--lambda", "4", "--kind", "simple", "--Nmax", "5"],
    ["bound", "--M", "1", "--nmax", "3"],
    ["figure", "--id", "7"],
    ["nonsense"],
])
def test_precondition_errors_exit_1(args, capsys):
    code, out, err = run(args, capsys)
    assert code == 1
    assert out == ""
    assert len(err.strip().splitlines()) == 1
    assert err.startswith("gegencoef: error:")


def test_io_error_exit_2(tmp_path, capsys):
    target = tmp_path / "missing" / "out.csv"
    code, _, err = run(["--out", str(target), "qbound", "--delta", "1", "--nmax", "3"], capsys)
    assert code == 2
    assert "I/O error" in err


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gegencoef", "qbound", "--delta", "0.1", "--nmax", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.startswith("n,ours,rokhlin,q")
    proc = subprocess.run([sys.executable, "-m", "gegencoef", "qbound", "--delta", "-1", "--nmax", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 1


@pytest.mark.parametrize("fid", [1, 2, 3, 4, 5, 6])
def test_figure_presets_finish_quickly(fid, capsys):
    start = time.perf_counter()
    code, out, _ = run(["figure", "--id", str(fid)], capsys)
    assert code == 0
    assert time.perf_counter() - start < 60
    header, rows = parse(out)
    assert len(header) == len(rows[0])
    assert len(header) == len(set(header))
    if fid != 5:
        assert np.all(np.isfinite(np.array(rows)))


def test_figure_tables_match_library():
    header, rows = figures.figure3(nmax=5)
    assert header[0] == "n" and len(rows) == 5
    assert cli.render_csv(header, rows).count("\n") == 6
