import io
from pathlib import Path

import numpy as np
import pytest

from conftest import E2_X
from wcep import cli
from wcep.cli import main
from wcep.errors import ConvergenceError
from wcep.matio import read_csv, read_matrix, write_matrix

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"
A, W, X = str(DATA / "e2_a.mtx"), str(DATA / "e2_w.mtx"), str(DATA / "e2_x.mtx")
GAS = ["--gas-p", str(DATA / "e2_gas_p.mtx"), "--gas-q", str(DATA / "e2_gas_q.mtx"), "--gas-r1", "1"]
WCEP_METHODS = ["def", "eq13", "eq28", "eq29", "svd", "fullrank", "qr", "gas"]


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def golden_cases():
    cases = []
    for m in WCEP_METHODS:
        extra = GAS if m == "gas" else []
        cases.append((f"wcep_{m}.txt", ["wcep", "-A", A, "-W", W, "--method", m, *extra]))
    cases.append(("verify.txt", ["verify", "-A", A, "-W", W, "--x", X, "--properties"]))
    cases.append(("complexity_100_200_4.txt", ["complexity", "--m", "100", "--n", "200", "--l", "4"]))
    return cases


@pytest.mark.parametrize("name,argv", golden_cases(), ids=[c[0] for c in golden_cases()])
def test_golden_transcripts(name, argv):
    code, out, err = run(*argv)
    assert code == 0, err
    assert out == (GOLDEN / name).read_text()


@pytest.mark.parametrize("method", WCEP_METHODS)
def test_wcep_fixture_value(tmp_path, method):
    target = tmp_path / "x.mtx"
    extra = GAS if method == "gas" else []
    code, out, _ = run("wcep", "-A", A, "-W", W, "--method", method, *extra, "-o", str(target))
    assert code == 0 and out == ""
    assert np.array_equal(read_matrix(str(target)), E2_X)


def test_csv_input_and_output(tmp_path):
    a, w = tmp_path / "a.csv", tmp_path / "w.csv"
    write_matrix(str(a), read_matrix(A), "csv")
    write_matrix(str(w), read_matrix(W), "csv")
    code, out, _ = run("wcep", "-A", str(a), "-W", str(w), "--out-format", "csv")
    assert code == 0
    assert np.array_equal(read_csv(io.StringIO(out)), E2_X)


def test_qr_variant_and_exponent():
    code, out, _ = run("wcep", "-A", A, "-W", W, "--method", "qr", "--qr-variant", "q")
    assert code == 0 and out == (GOLDEN / "wcep_qr.txt").read_text()
    code, out, _ = run("wcep", "-A", A, "-W", W, "--method", "eq28", "--l", "3")
    assert code == 0 and out == (GOLDEN / "wcep_eq28.txt").read_text()


def test_simple_inverses(tmp_path):
    j2 = tmp_path / "j2.mtx"
    write_matrix(str(j2), np.array([[0, 1], [0, 0]]))
    idem = tmp_path / "idem.mtx"
    write_matrix(str(idem), np.array([[1, 1], [0, 0]]))
    for cmd, src, expected in [
        ("pinv", idem, [[0.5, 0], [0.5, 0]]),
        ("drazin", idem, [[1, 1], [0, 0]]),
        ("core-ep", idem, [[1, 0], [0, 0]]),
        ("drazin", j2, [[0, 0], [0, 0]]),
    ]:
        code, out, _ = run(cmd, "-A", str(src), "--out-format", "csv")
        assert code == 0
        assert np.allclose(read_csv(io.StringIO(out)), expected)
    code, _, err = run("core-ep", "-A", str(j2), "--l", "1")
    assert code == 1 and "error" in err


def test_verify_failure_exit_code(tmp_path):
    bad = tmp_path / "zero.mtx"
    write_matrix(str(bad), np.zeros((3, 2)))
    code, out, _ = run("verify", "-A", A, "-W", W, "--x", str(bad))
    assert code == 1
    assert out.endswith("verdict: FAIL\n")


def test_verify_shape_mismatch(tmp_path):
    code, _, err = run("verify", "-A", A, "-W", W, "--x", W)
    assert code == 1 and "must be 3x2" in err


def test_complexity_variants():
    code, out, _ = run("complexity", "--m", "200", "--n", "100", "--l", "4", "--pinv-model", "svd_based")
    assert code == 0
    assert "recommended: eq29 (m >= n)" in out
    assert "O(1.3) > O(2.8)" in out
    code, out, _ = run("complexity", "--m", "100", "--n", "200", "--l", "4", "--table", "csv")
    assert code == 0
    assert "eq28,total,,11000000" in out and "eq13,total,,12000000" in out
    code, _, err = run("complexity", "--m", "0", "--n", "2", "--l", "1")
    assert code == 1


def test_gen(tmp_path):
    a, w = tmp_path / "a.mtx", tmp_path / "w.mtx"
    code, out, _ = run("gen", "--m", "6", "--n", "8", "--index", "2", "--seed", "3",
                       "--out-a", str(a), "--out-w", str(w))
    assert code == 0
    assert out == "m = 6, n = 8, ind(AW) = 2, ind(WA) = 2, k = 2\n"
    code, out, _ = run("verify", "-A", str(a), "-W", str(w), "--x", str(a))
    assert code == 1
    code, out, _ = run("gen", "--m", "3", "--n", "4", "--index", "1", "--seed", "3")
    assert code == 0 and out.count("%%MatrixMarket") == 2
    code, _, err = run("gen", "--m", "2", "--n", "2", "--index", "5", "--seed", "0")
    assert code == 1


def test_bench(tmp_path, monkeypatch):
    cfg = tmp_path / "b.cfg"
    cfg.write_text("sizes = 10x14\ntarget_index = 2\nrepetitions = 1\nl_offsets = 0, 5\n")
    monkeypatch.setenv("WCEP_SEED", "21")
    code, out, _ = run("bench", "--config", str(cfg))
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "# seed=21 target_index=2 k=2 repetitions=1"
    assert len(lines) == 6
    code, out, _ = run("bench", "--config", str(cfg), "--table", "markdown")
    assert code == 0 and "l=k+5=7" in out


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["wcep", "-A", A],
        ["wcep", "-A", A, "-W", W, "--bogus"],
        ["wcep", "-A", A, "-W", W, "--method", "nope"],
        ["wcep", "-A", A, "-W", W, "--method", "gas"],
        ["wcep", "-A", A, "-W", W, "--l", "0"],
        ["wcep", "-A", A, "-W", A],
        ["wcep", "-A", "missing.mtx", "-W", W],
        ["wcep", "-A", A, "-W", W, "--rtol", "2"],
        ["bench", "--config", "missing.cfg"],
    ],
)
def test_validation_errors_exit_1(argv):
    code, out, err = run(*argv)
    assert code == 1
    assert out == ""
    assert err.startswith("error:")


def test_malformed_files(tmp_path):
    bad_mtx = tmp_path / "bad.mtx"
    bad_mtx.write_text("%%MatrixMarket matrix array real general\n2 2\n1\n")
    bad_csv = tmp_path / "bad.csv"
    bad_csv.write_text("1,2\n3\n")
    for path in (bad_mtx, bad_csv):
        code, _, err = run("pinv", "-A", str(path))
        assert code == 1 and err.startswith("error:")


def test_numerical_failure_exit_2(monkeypatch):
    def broken(*args, **kwargs):
        raise ConvergenceError("svd did not converge")

    monkeypatch.setattr(cli, "pinv", broken)
    code, _, err = run("pinv", "-A", A)
    assert code == 2 and "numerical failure" in err
