import csv
import json
import math
import subprocess
import sys

import pytest

from zetamoments.cli import EXIT_INVALID, EXIT_OK, RunConfig, main, run, validate
from zetamoments.errors import ParameterError
from zetamoments.majorant import LAMBDA0

from conftest import ZEROS_PATH

SMALL = {
    "scan": ["--t-start", "1000", "--t-end", "1005", "--spacing", "0.01"],
    "majorant-verify": ["--T", "1e4", "--t-end", "10010", "--spacing", "0.01", "--x", "100"],
    "measure": ["--T", "1e6", "--t-end", "1000005", "--spacing", "0.01", "--v-grid", "1,3,5"],
    "moments": ["--T", "1e6", "--t-end", "1000005", "--spacing", "0.01", "--k", "0.5,1"],
    "lemma1-check": ["--zeros", str(ZEROS_PATH), "--x", "100"],
    "lemma3-check": ["--x", "13", "--k", "1,2", "--trials", "2", "--T", "1e4", "--seed", "7"],
    "lambda0": ["--x", "10,1000"],
}


def _run(args, out):
    return main([*args, "--out", str(out)])


def _error(capsys):
    return json.loads(capsys.readouterr().err.strip().splitlines()[-1])


@pytest.mark.parametrize("sub", list(SMALL))
def test_each_subcommand_runs(tmp_path, sub, capsys):
    assert _run([sub, *SMALL[sub]], tmp_path) == EXIT_OK
    status = json.loads(capsys.readouterr().out)
    assert status["status"] == "ok"
    manifest = json.loads((tmp_path / status["files"][-1]).read_text())
    assert manifest["subcommand"] == sub
    assert set(manifest["versions"]) >= {"numpy", "scipy", "python", "zetamoments"}
    for name in status["files"][:-1]:
        assert (tmp_path / name).exists()
        assert name in manifest["outputs"]


@pytest.mark.parametrize(
    "args,match",
    [
        (["scan", "--t-start", "1000", "--spacing", "0"], "spacing"),
        (["scan", "--t-start", "1000", "--t-end", "999"], "empty grid"),
        (["scan", "--t-start", "10"], "t-start"),
        (["majorant-verify", "--T", "1e4", "--t-end", "9000"], "empty grid"),
        (["majorant-verify", "--T", "1e4", "--t-end", "30000"], "2T"),
        (["majorant-verify", "--T", "1e4", "--lambda", "0.3"], "lambda0"),
        (["measure", "--T", "1e6", "--t-end", "1000010", "--spacing", "0.5"], "coarser"),
        (["moments", "--T", "1e6", "--t-end", "1000010", "--k", "0"], "k values"),
        (["lemma1-check"], "zeros"),
        (["lemma3-check", "--x", "1000", "--k", "3"], "exceeds"),
        (["lemma3-check", "--k", "1.5"], "integers"),
        (["lambda0", "--x", "1"], "x values"),
        (["scan", "--t-start", "1000", "--threads", "0"], "threads"),
    ],
)
def test_validation_errors_write_nothing(tmp_path, capsys, args, match):
    out = tmp_path / "out"
    assert _run(args, out) == EXIT_INVALID
    record = _error(capsys)
    assert record["kind"] == "validation" and match in record["message"]
    assert not out.exists()


def test_usage_error_is_json(tmp_path, capsys):
    with pytest.raises(SystemExit) as info:
        main(["scan", "--spacing", "abc"])
    assert info.value.code == EXIT_INVALID
    assert _error(capsys)["kind"] == "validation"


def test_computation_error_exit_code(tmp_path, capsys):
    # valid configuration, but the zero table ends below the requested height
    code = _run(["lemma1-check", "--zeros", str(ZEROS_PATH), "--t-start", "74900"], tmp_path)
    assert code == 3
    assert _error(capsys)["kind"] == "computation"


def test_lambda_keyword_and_defaults():
    cfg = validate(RunConfig("majorant-verify", T=1e4))
    assert cfg.lam == (LAMBDA0,) and cfg.x == (1e3,) and cfg.t_end == 1e4
    with pytest.raises(ParameterError):
        validate(RunConfig("scan"))


def test_floats_round_trip(tmp_path):
    assert run(RunConfig("lambda0", x=(10.0,), out=str(tmp_path))) == EXIT_OK
    with open(tmp_path / "lambda0.csv") as fh:
        row = next(csv.DictReader(fh))
    assert float(row["value"]) == LAMBDA0
    assert len(row["value"].replace("0.", "", 1)) == 17


def test_scan_csv_content(tmp_path):
    _run(["scan", "--t-start", "1000", "--t-end", "1000.05", "--spacing", "0.01"], tmp_path)
    from zetamoments.zeta_eval import log_abs_zeta

    with open(tmp_path / "scan.csv") as fh:
        rows = list(csv.DictReader(fh))
    assert [r for r in rows[0]] == ["t", "log_abs_zeta", "clipped"]
    assert len(rows) == 6
    for r in rows:
        assert float(r["log_abs_zeta"]) == pytest.approx(log_abs_zeta(float(r["t"])), abs=1e-12)


def test_mean_value_rows_match_library(tmp_path):
    from zetamoments.cli import draw_coeffs
    from zetamoments.meanvalue import diagonal_sum, power_expand
    from zetamoments.primes import sieve

    _run(["lemma3-check", *SMALL["lemma3-check"]], tmp_path)
    with open(tmp_path / "lemma3.csv") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 4
    c = draw_coeffs(sieve(13), 13.0, 7, 1)
    want = diagonal_sum(power_expand(c, 2))
    row = next(r for r in rows if r["trial"] == "1" and r["k"] == "2")
    assert float(row["diagonal_sum"]) == want


def test_console_script(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "zetamoments.cli", "lambda0", "--out", str(tmp_path)], capture_output=True, text=True
    )
    assert proc.returncode == 0, proc.stderr
    summary = json.loads((tmp_path / "lambda0_manifest.json").read_text())
    assert summary["results"]["max_coefficient"] <= 0
    assert not math.isnan(summary["wall_time_s"])
