import json
import subprocess
import sys

import pytest

from gdcodes import catalog, formats
from gdcodes.bounds import COMP21
from gdcodes.cli import (EXIT_OK, EXIT_OPEN, EXIT_UNRESOLVED, EXIT_USAGE, EXIT_VERIFY, main)


def run(capsys, *args):
    code = main([str(a) for a in args])
    return code, capsys.readouterr().out


def records(out):
    return [json.loads(line) for line in out.splitlines() if line.strip()]


def test_build_writes_and_reports(capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, out = run(capsys, "build", 3, 39, 4, 2, 1)
    assert code == EXIT_OK
    assert "Optimal 364 = U(39,4,[2,1])" in out
    written = formats.read_code(tmp_path / "q3-n39-d4-2.1.ccc")
    assert len(written) == 364


def test_build_porcelain(capsys, tmp_path):
    out_file = tmp_path / "c.ccc"
    code, out = run(capsys, "--porcelain", "build", 4, 44, 3, 1, 1, 1, "--out", out_file)
    (rec,) = records(out)
    assert code == EXIT_OK
    assert rec["kind"] == "build" and rec["status"] == "Optimal" and rec["size"] == 1892
    assert rec["path"] == str(out_file)


def test_build_open(capsys):
    code, out = run(capsys, "build", 4, 13, 4, 1, 1, 1)
    assert code == EXIT_OPEN and out.startswith("Open")


def test_build_out_of_scope(capsys):
    code, _ = run(capsys, "build", 3, 10, 4, 2, 1)
    assert code == EXIT_UNRESOLVED


def test_bound(capsys):
    code, out = run(capsys, "--porcelain", "bound", 4, 6, 4, 1, 1, 1)
    (rec,) = records(out)
    assert code == EXIT_OK and rec["value"] == 11 and rec["bound_kind"] == "Exact"
    code, _ = run(capsys, "bound", 4, 13, 4, 1, 1, 1)
    assert code == EXIT_OPEN


def test_verify_table_file(capsys, tmp_path):
    path = tmp_path / "t.ccc"
    formats.write_code(path, catalog.code(35, 4, COMP21))
    code, out = run(capsys, "verify", path)
    assert code == EXIT_OK and "PASS" in out and "291" in out


def test_verify_failure(capsys, tmp_path):
    path = tmp_path / "bad.ccc"
    path.write_text("CCC 1\n4 5 4 1 1 1\n0:1 1:2 2:3\n0:1 1:2 3:3\n")
    code, out = run(capsys, "--porcelain", "verify", path)
    (rec,) = records(out)
    assert code == EXIT_VERIFY and rec["passed"] is False and rec["failures"]


def test_verify_malformed(capsys, tmp_path):
    path = tmp_path / "bad.ccc"
    path.write_text("CCC 1\n4 5 4 1 1 1\n0:1 1:x 2:3\n")
    code, out = run(capsys, "verify", path)
    assert code == EXIT_VERIFY and "line 3" in out


def test_verify_design_and_bases(capsys):
    root = catalog.catalog_root()
    code, out = run(capsys, "verify", root / "design" / "kirkman-frame-6^4")
    assert code == EXIT_OK
    code, out = run(capsys, "verify", root / "bases" / "q4-d4-n65")
    assert code == EXIT_OK and "2080" in out
    code, out = run(capsys, "verify", root / "prestructure" / "gdd34-5^3-6^1")
    assert code == EXIT_OK and "partial" in out


def test_oracle(capsys):
    code, out = run(capsys, "oracle", 5, 4, 1, 1, 1, "--exact")
    assert code == EXIT_OK and out.strip() == "6"


def test_oracle_refuses_exact_for_large_n(capsys):
    assert main(["oracle", "9", "4", "1", "1", "1"]) == EXIT_USAGE


def test_sweep_porcelain(capsys):
    code, out = run(capsys, "--porcelain", "sweep", 4, 4, 1, 1, 1, "--from", 11, "--to", 15, "--step", 2)
    recs = records(out)
    rows = [r for r in recs if r["kind"] == "sweep-row"]
    assert [r["n"] for r in rows] == [11, 13, 15]
    assert recs[-1] == {"kind": "sweep-summary", "counts": {"Open": 2, "Optimal": 1}}
    assert code == EXIT_OK


def test_hillclimb_prestructure(capsys, tmp_path):
    pre = catalog.catalog_root() / "prestructure" / "gdd34-5^3-6^1"
    out_file = tmp_path / "d.gdd"
    code, out = run(capsys, "--porcelain", "hillclimb", "--type", "5^3 6^1", "--k", 3, 4,
                    "--prestructure", pre, "--seed", 0, "--out", out_file)
    (rec,) = records(out)
    assert code == EXIT_OK and rec["census"] == {"3": 43, "4": 6}
    assert formats.read_design(out_file).block_census() == {3: 43, 4: 6}


def test_hillclimb_type_mismatch(capsys):
    pre = catalog.catalog_root() / "prestructure" / "gdd34-5^3-6^1"
    assert main(["hillclimb", "--type", "6^5", "--k", "3", "4", "--prestructure", str(pre)]) == EXIT_USAGE


def test_catalog_commands(capsys, tmp_path):
    code, out = run(capsys, "catalog", "verify")
    assert code == EXIT_OK and "FAIL" not in out
    code, out = run(capsys, "--porcelain", "catalog", "list")
    assert len(records(out)) == len(catalog.entries())
    code, out = run(capsys, "catalog", "seed-library", tmp_path)
    assert code == EXIT_OK and (tmp_path / "td-5-17").exists()
    assert main(["catalog", "seed-library"]) == EXIT_USAGE


def test_usage_errors():
    with pytest.raises(SystemExit) as err:
        main(["build", "3", "39"])
    assert err.value.code == EXIT_USAGE
    assert main(["build", "3", "39", "4", "1", "1", "1"]) == EXIT_USAGE


def test_missing_file(capsys, tmp_path):
    assert main(["verify", str(tmp_path / "nope")]) == 1


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "gdcodes.cli", "oracle", "5", "4", "1", "1", "1"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "6"
