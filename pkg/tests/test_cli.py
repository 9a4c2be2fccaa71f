import json
import subprocess
import sys

import jsonschema
import pytest

from fixedspace.cli import EXIT_INVALID, EXIT_MISMATCH, EXIT_OK, TABLE1, run
from fixedspace.curvelab import REPORT_SCHEMA
from fixedspace.distributions import TABLE_SCHEMA, DistributionTable


def ok(argv):
    status, text = run(argv.split())
    assert status == EXIT_OK, text
    return text


def test_documented_examples():
    assert ok("alpha --g 2 --r 0 --symbolic") == "(l^6 - l^5 - l^4 + l + 1)/(l^6 - l^4 - l^2 + 1)"
    assert ok("alpha --g 1 --r 1 --ell 3") == "1/3"
    d = json.loads(ok("oracle --group sp --g 1 --ell 3 --format json"))
    assert {e["descriptor"]: e["value"] for e in d["entries"]} == {0: "5/8", 1: "1/3", 2: "1/24"}


def test_table1_verify():
    text = ok("table1 --verify")
    # rows g = 1, 2, 3 contribute 3 + 5 + 7 entries
    assert len(text.splitlines()) == len(TABLE1) == 15
    assert "MISMATCH" not in text


@pytest.mark.parametrize(
    "argv",
    [
        "alpha --g 2 --ell 3 --format json",
        "alpha --g 2 --symbolic --format json",
        "gsp1 --ell 5 --xi 2 --format json",
        "unitary --n 3 --m 2 --format json",
        "trigonal --symbolic --format json",
        "oracle --group gu --n 2 --m 2 --format json",
        "oracle --group sp --g 1 --ell 3 --e 2 --format json",
    ],
)
def test_table_json_schema(argv):
    d = json.loads(ok(argv))
    jsonschema.validate(d, TABLE_SCHEMA)
    assert DistributionTable.from_dict(d).to_dict() == d


def test_curves_json_schema():
    d = json.loads(ok("curves --q 13 --ell 3 --tolerance 1 --format json"))
    jsonschema.validate(d, REPORT_SCHEMA)
    assert d["within_c_over_sqrt_q"] is True


def test_output_independent_of_jobs():
    assert ok("oracle --group sp --g 1 --ell 7 --jobs 1") == ok("oracle --group sp --g 1 --ell 7 --jobs 3")
    assert ok("curves --q 31 --ell 3 --jobs 1 --format json") == ok("curves --q 31 --ell 3 --jobs 2 --format json")


def test_oracle_against_formula():
    assert run("oracle --group gsp --g 1 --ell 5 --xi 3 --against formula".split())[0] == EXIT_OK
    # GL_2 has no formula table: validation error, not a mismatch
    assert run("oracle --group gl --n 2 --ell 3 --against formula".split())[0] == EXIT_INVALID


def test_verification_mismatch_exit(monkeypatch):
    import fixedspace.cli as cli

    monkeypatch.setitem(cli.TABLE1, (1, 1), "(2)/(l)")
    status, text = run(["table1", "--verify"])
    assert status == EXIT_MISMATCH
    assert "MISMATCH" in text
    status, _ = run("curves --q 13 --ell 3 --tolerance 1/100 --verify".split())
    assert status == EXIT_MISMATCH


@pytest.mark.parametrize(
    "argv",
    [
        "nosuch",
        "alpha --g 2 --ell 3 --symbolic",
        "alpha --r 0 --ell 3",
        "alpha --g 1 --r 5 --ell 3",
        "gsp1 --ell 3 --xi 3",
        "curves --q 1031 --ell 3",
        "oracle --group sp --g 2 --ell 5",
        "limit --symbolic --r 0",
        "alpha --g 1 --ell 3 --jobs 0",
    ],
)
def test_validation_errors(argv):
    status, text = run(argv.split())
    assert status == EXIT_INVALID
    assert text.startswith("error:")


def test_formats_and_output(tmp_path):
    csv_text = ok("gsp1 --ell 5 --xi 2 --format csv")
    assert csv_text.splitlines()[0] == "group,rank,ell_or_m,modulus,xi,provenance,descriptor,value"
    assert "(~0.625)" in ok("alpha --g 1 --r 0 --ell 3 --approx")
    target = tmp_path / "out.json"
    assert ok(f"alpha --g 1 --ell 3 --format json --output {target}") == ""
    assert json.loads(target.read_text())["entries"][0]["value"] == "5/8"


def test_other_subcommands():
    assert ok("phi --g 1 --ell 3") == "5/8"
    assert "degree\t-2" in ok("fw-gap --g 3 --symbolic")
    assert "tail_bound" in ok("limit --ell 3 --r 0 --tolerance 1/1000")
    assert "p_rank_le_r_at_least\t5/8" in ok("bounds --g 1 --s 1 --r 0 --ell 3")
    assert "factorizes\tTrue" in ok("crt-check --primes 3 5")
    assert "failures_direct_sum\t0" in ok("eigenspace --g 1 --ell 5 --samples 20")


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "fixedspace", "alpha", "--g", "1", "--r", "2", "--ell", "3"],
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "1/24"
