import io
import json

import pytest

from wellbalanced.balance import SignedCombination
from wellbalanced.certificates import Certificate
from wellbalanced.cli import parse_subset_spec, run
from wellbalanced.errors import SpecParseError
from wellbalanced.rootsys import build_root_system
from wellbalanced.verify import verify


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_parse_subset_spec():
    g2 = build_root_system("G2")
    assert parse_subset_spec("full", g2).indices == tuple(range(6))
    c5 = build_root_system("C5")
    assert len(parse_subset_spec("complement:0", c5)) == 24
    assert parse_subset_spec("indices:2,0", c5).indices == (0, 2)
    assert parse_subset_spec("indices:", c5).indices == ()
    a2 = build_root_system("A2")
    for bad in ("indices:0,1,99", "indices:a", "bogus", "complement:1,1", "indices:-1"):
        with pytest.raises(SpecParseError):
            parse_subset_spec(bad, a2)


def test_roots():
    code, out, _ = call("roots", "A", "2")
    assert code == 0 and len(out.splitlines()) == 3
    code, out, _ = call("roots", "G", "2", "--json")
    assert json.loads(out)["positive_roots"][0] == [-4, 2, 2]


def test_check_full_a3():
    code, out, _ = call("check", "A", "3", "--subset", "full")
    assert code == 0
    assert "balanced: false" in out and "obstruction" in out
    code, out, _ = call("check", "A", "3", "--subset", "full", "--json")
    doc = json.loads(out)
    assert doc["balanced"] is False
    cert = Certificate.from_json(doc["obstruction"])
    assert cert.verified is True and verify(cert).verified is True


def test_check_balanced_json_round_trip():
    code, out, _ = call("check", "G", "2", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["balanced"] and doc["well_balanced"]
    combo = SignedCombination.from_json(doc["witness"])
    assert combo.is_witness(build_root_system("G2"))


def test_witness_d4():
    code, out, _ = call("witness", "thm41", "D", "4", "--json")
    assert code == 0
    doc = json.loads(out)
    rs = build_root_system("D4")
    comp = {rs[i] for i in doc["complement"]}
    assert comp == {(2, 2, 0, 0), (2, -2, 0, 0), (0, 0, 2, 2), (0, 0, 2, -2)}
    cert = Certificate.from_json(doc["certificate"])
    assert cert.verified is True and verify(cert).verified is True


def test_witness_text():
    code, out, _ = call("witness", "thm32", "E", "7")
    assert code == 0 and "cocardinality: 3 (table 3)" in out and "verified: true" in out


def test_extremal():
    code, out, _ = call("extremal", "C", "3", "--json")
    assert code == 0
    reports = json.loads(out)
    assert [r["value"] for r in reports] == [0, 2]
    for r in reports:
        for key in ("lower_certificate", "upper_certificate"):
            assert verify(Certificate.from_json(r[key])).verified is True
    code, out, _ = call("extremal", "E", "7", "--quantity", "min")
    assert code == 0 and "method=certified" in out


def test_verify_tables_csv():
    code, out, _ = call("verify-tables", "--max-rank", "4", "--csv")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "label,quantity,table_value,computed_value,method,pass"
    assert all(line.endswith(",true") for line in lines[1:])


def test_verify_tables_json():
    code, out, _ = call("verify-tables", "--max-rank", "3", "--json")
    assert code == 0 and json.loads(out)["all_pass"] is True


def test_c5_verb():
    code, out, _ = call("remark-c5", "--json")
    assert code == 0 and json.loads(out)["passed"] is True


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        ["roots", "D", "3"],
        ["roots", "X", "3"],
        ["check", "A", "2", "--subset", "indices:0,1,99"],
        ["roots", "A", "2", "--nope"],
        ["verify-tables", "--json", "--csv"],
        [],
    ],
)
def test_usage_errors(argv):
    code, _, err = call(*argv)
    assert code == 2 and err


def test_budget_exit():
    code, _, err = call("extremal", "E", "7", "--mode", "exhaustive")
    assert code == 3 and "budget" in err
    code, _, _ = call("check", "A", "8", "--budget-size", "10")
    assert code == 3


def test_help():
    assert call("--help")[0] == 0
