import io
import json
import subprocess
import sys

import pytest

from rkpairs.cli import main


def run(*args, tmp=None):
    out = io.StringIO()
    extra = ["--no-cache"] if tmp is None else ["--cache", str(tmp / "f.ndjson")]
    code = main(list(args) + extra, out=out)
    return code, out.getvalue()


def test_sieve_example_holds():
    code, text = run("check", "sieve", "--q", "13", "--n", "22", "--r1", "3", "--r2", "2", "--k1", "2", "--k2", "1",
                     "--m1", "10", "--m2", "11", "--l1", "6", "--l2", "14", "--f1", "1,1", "--f2", "12,0,1",
                     "--g1", "1,1", "--g2", "12,0,1", "--format", "json")
    assert code == 0
    row = json.loads(text)
    assert row["verdict"] == "Holds" and row["stage"] == "sieve"


def test_bound_ab_example():
    code, text = run("bound", "ab", "--n", "53", "--alpha", "5.7", "--beta", "3.6", "--format", "json")
    assert code == 0
    d = json.loads(text)
    assert 10 <= 10 ** d["log10_threshold"] <= 14


def test_brute_counts_example():
    code, text = run("brute", "counts", "--p", "3", "--k", "1", "--n", "4", "--what", "k-normal", "--format", "tsv")
    assert code == 0
    counts = [int(line.split("\t")[1]) for line in text.splitlines()]
    assert counts == [32, 32, 12, 4, 1]
    assert sum(counts) == 81


def test_table_scan_tsv_layout():
    code, text = run("bound", "uv", "--scan-table2", "--format", "tsv")
    assert code == 0
    first = text.splitlines()[0].split("\t")
    assert first[0] == ">=53" and first[1] == "5.7,3.6" and float(first[2]) == pytest.approx(13.12, rel=1e-3)


def test_other_commands(tmp_path):
    code, text = run("field", "--p", "13", "--n", "22", "--format", "json", tmp=tmp_path)
    assert code == 0 and json.loads(text)["status"] == "complete"
    assert (tmp_path / "f.ndjson").exists()
    code, text = run("check", "corollary", "--q", "13", "--n", "38")
    assert code == 0 and "Holds" in text
    code, text = run("check", "scan", "--q-list", "13", "--n-range", "36-37", "--format", "json")
    assert code == 0 and len(text.splitlines()) >= 2
    code, text = run("chars", "verify", "--p", "2", "--n", "4", "--format", "json")
    assert code == 0 and json.loads(text)["ok"]
    code, text = run("brute", "witness", "--p", "3", "--n", "4", "--F", "num:1,1", "--r1", "2", "--k1", "1")
    assert code == 0
    code, text = run("lemma13", "--q-cap", "1e10", "--format", "json")
    assert code == 0 and json.loads(text)["delta"] > 0


def test_exit_codes():
    assert run("check", "corollary", "--q", "12", "--n", "5")[0] == 2
    assert run("brute", "witness", "--p", "3", "--n", "4", "--r1", "7")[0] == 2
    assert run("brute", "counts", "--p", "2", "--n", "24", "--cap", "1000")[0] == 3
    assert run("chars", "verify", "--p", "2", "--n", "20")[0] == 3


def test_unknown_flag_rejected():
    with pytest.raises(SystemExit) as e:
        main(["field", "--p", "13", "--n", "2", "--bogus"])
    assert e.value.code == 2
    with pytest.raises(SystemExit):
        main(["check", "sieve", "--q", "13"])


def test_repeated_output_identical():
    args = ("check", "scan", "--q-list", "13", "--n-range", "20-24", "--format", "json")
    assert run(*args)[1] == run(*args)[1]
    assert run(*args, "--threads", "3")[1] == run(*args)[1]


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "rkpairs", "bound", "uv", "--n", "31", "--alpha", "8.3", "--no-cache"],
                       capture_output=True, text=True)
    assert p.returncode == 0 and "threshold" in p.stdout
