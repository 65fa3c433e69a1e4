import csv
import io
import json
import subprocess
import sys

import pytest

import perm132.cfengine as cfengine
from perm132.cli import MODES, RunConfig, UsageError, format_rows, main, run_table, run_verify


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def csv_rows(text):
    reader = csv.reader(io.StringIO(text))
    assert next(reader) == ["n", "r", "count"]
    return [tuple(int(v) for v in row) for row in reader]


def test_table_brute_example(capsys):
    code, out, _ = run(capsys, "table", "--k", "3", "--n", "3", "--mode", "brute")
    assert code == 0
    assert csv_rows(out) == [(3, 0, 4), (3, 1, 1)]


def test_table_cf_example(capsys):
    code, out, _ = run(capsys, "table", "--k", "2", "--n", "2", "--mode", "cf")
    assert csv_rows(out) == [(2, 0, 1), (2, 1, 1)]


def test_table_large_k_gives_catalan_column(capsys):
    code, out, _ = run(capsys, "table", "--k", "9", "--n", "4", "--upto", "--mode", "cf")
    assert csv_rows(out) == [(n, 0, c) for n, c in enumerate([1, 1, 2, 5, 14])]


def test_modes_agree():
    for k in (2, 3, 4):
        brute, cf, closed = (run_table(RunConfig("table", k, n=8, upto=True, mode=m)) for m in MODES)
        assert brute == cf
        top = k * (k + 3) // 2
        assert closed == [row for row in cf if row[1] <= top]


def test_closed_out_of_range_is_usage_error(capsys):
    code, _, err = run(capsys, "table", "--k", "3", "--n", "5", "--mode", "closed", "--r", "10")
    assert code == 2
    assert "k(k+3)/2 = 9" in err


def test_brute_bound_is_usage_error(capsys):
    code, _, err = run(capsys, "table", "--k", "3", "--n", "15", "--mode", "brute")
    assert code == 2
    assert "14" in err


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["table", "--k", "3"])
    assert exc.value.code == 2


def test_json_schema_and_round_trip(capsys):
    code, out, _ = run(capsys, "series", "--k", "1", "--order", "40", "--format", "json")
    doc = json.loads(out)
    assert doc["k"] == 1
    assert set(doc["rows"][0]) == {"n", "r", "count"}
    assert all(isinstance(row["count"], str) for row in doc["rows"])
    assert json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n" == out
    # coefficients this deep no longer fit in 64 bits
    assert max(int(row["count"]) for row in doc["rows"]) > 2**63


def test_y_cap_does_not_change_low_rows():
    full = run_table(RunConfig("table", 3, n=12, upto=True, mode="cf"))
    capped = run_table(RunConfig("table", 3, n=12, upto=True, mode="cf", y_cap=5))
    assert capped == [row for row in full if row[1] <= 5]


def test_series_slice_lists_zeros(capsys):
    code, out, _ = run(capsys, "series", "--k", "3", "--order", "6", "--r", "1")
    assert csv_rows(out) == [(n, 1, c) for n, c in enumerate([0, 0, 0, 1, 4, 12, 32])]


def test_closed_command(capsys):
    code, out, _ = run(capsys, "closed", "--k", "3", "--r", "0", "--order", "5")
    assert csv_rows(out) == [(n, 0, c) for n, c in enumerate([1, 1, 2, 4, 8, 16])]
    code, out, _ = run(capsys, "closed", "--k", "3", "--r", "1", "--order", "5", "--rational")
    assert out.splitlines() == ["(0, 0, 0, 1)", "(1, -4, 4)"]


def test_phi_modes_agree(capsys):
    outs = []
    for mode in ("brute", "cf", "closed"):
        code, out, _ = run(capsys, "phi", "--k", "4", "--n", "8", "--upto", "--mode", mode, "--r", "0")
        assert code == 0
        outs.append(csv_rows(out))
    assert outs[0] == outs[1] == outs[2]
    assert outs[0][0] == (3, 0, 1)


def test_out_file(tmp_path, capsys):
    target = tmp_path / "t.csv"
    code, out, _ = run(capsys, "table", "--k", "3", "--n", "4", "--out", str(target))
    assert out == ""
    assert csv_rows(target.read_text()) == run_table(RunConfig("table", 3, n=4, mode="brute"))


def test_format_rows_csv_header_for_empty():
    assert format_rows(3, [], "csv") == "n,r,count\n"
    assert format_rows(3, [], "json") == '{"k":3,"rows":[]}\n'


def test_config_validation():
    with pytest.raises(UsageError):
        RunConfig("table", 0)
    with pytest.raises(UsageError):
        RunConfig("nope", 3)
    with pytest.raises(UsageError):
        RunConfig("phi", 3, n=11, mode="brute")


@pytest.mark.parametrize("k", [1, 2, 3])
def test_verify_passes(capsys, k):
    code, out, _ = run(capsys, "verify", "--k", str(k), "--n-max", "8", "--order", "20")
    assert code == 0
    assert out.splitlines()[-1] == "all checks passed"
    assert all(line.startswith("PASS") for line in out.splitlines()[1:-1])


def test_verify_reports_mismatch_with_provenance(capsys, monkeypatch):
    monkeypatch.setattr(cfengine, "level_exponent", lambda i, k: cfengine.binom(i, k - 1))
    code, out, _ = run(capsys, "verify", "--k", "3", "--n-max", "6", "--order", "12")
    assert code == 1
    fail = [line for line in out.splitlines() if line.startswith("FAIL brute=cf")]
    assert fail and "first mismatch at (n, r)" in fail[0] and "brute =" in fail[0] and "cf_F =" in fail[0]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "perm132", "table", "--k", "3", "--n", "3", "--mode", "brute"],
        capture_output=True, text=True, check=True,
    )
    assert proc.stdout == "n,r,count\n3,0,4\n3,1,1\n"


def test_run_verify_report_object():
    rep = run_verify(4, n_max=7, order=14)
    assert rep.passed
    names = [c.name for c in rep.checks]
    assert "brute=cf" in names and "cf=ladder" in names and "phi0 closed=omega" in names
