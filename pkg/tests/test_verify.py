import dataclasses
import json

import pytest

from wellbalanced.balance import lattice_membership_obstruction
from wellbalanced.bounds import (
    coordinate_parity_bound,
    e7_cocardinality_bound,
    gram,
    pair_count_parity_bound,
    wellbalanced_upper_bound,
)
from wellbalanced.certificates import Certificate
from wellbalanced.extremal import max_wellbalanced_cocardinality, min_balanced_cocardinality
from wellbalanced.rootsys import build_root_system
from wellbalanced.verify import verify
from wellbalanced.witnesses import thm32_witness, thm41_witness


def tamper(cert, **changes):
    payload = json.loads(json.dumps(cert.payload))
    value = changes.pop("value", cert.value)
    for k, v in changes.items():
        payload[k] = v
    return dataclasses.replace(cert, payload=payload, value=value)


def round_trip(cert):
    return Certificate.from_json(json.loads(json.dumps(cert.to_json())))


def test_producer_leaves_verified_unset():
    cert = thm32_witness("A3").as_certificate()
    assert cert.verified is None
    assert cert.to_json()["verified"] is None
    assert verify(cert).verified is True


def test_witness_tampering():
    cert = thm41_witness("D4").as_certificate()
    terms = cert.payload["terms"]
    flipped = [[i, -s] if k == 0 else [i, s] for k, (i, s) in enumerate(terms)]
    assert verify(tamper(cert, terms=flipped)).verified is False
    assert verify(tamper(cert, value=3)).verified is False
    assert verify(tamper(cert, complement=cert.payload["complement"][:-1])).verified is False
    assert verify(round_trip(cert)).verified is True


def test_witness_so_claim_checked():
    rs = build_root_system("A2")
    cert = Certificate("Witness", rs.label, 3, {"terms": [], "complement": [0, 1, 2], "complement_so": True})
    assert verify(cert).verified is False


def test_lattice_tampering():
    rs = build_root_system("A3")
    cert = lattice_membership_obstruction(rs, range(6))
    assert verify(cert).verified is True
    assert verify(tamper(cert, modulus=cert.payload["modulus"] * 2)).verified is False
    # a balanced triple cannot carry an obstruction
    triple = [rs.index(v) for v in ((2, -2, 0, 0), (0, 2, -2, 0), (2, 0, -2, 0))]
    assert verify(tamper(cert, subset=triple)).verified is False


def test_parity_tampering():
    rs = build_root_system("B4")
    _, cert = coordinate_parity_bound(rs)
    assert verify(tamper(cert, value=cert.value + 1)).verified is False
    _, cert = pair_count_parity_bound(build_root_system("D6"))
    assert verify(tamper(cert, value=3)).verified is False
    assert verify(tamper(cert, pairs=14)).verified is False


def test_e7_tampering():
    rs = build_root_system("E7")
    _, cert = e7_cocardinality_bound(rs)
    steps = cert.payload["step_c"]
    assert verify(tamper(cert, step_c=steps[:-1])).verified is False
    g = gram(rs)
    a1, a2, _ = steps[0]
    wrong = next(b for b in range(len(rs)) if (g[b, a1] - g[b, a2]) % 2 == 0)
    bad = [list(t) for t in steps]
    bad[0][2] = wrong
    assert verify(tamper(cert, step_c=bad)).verified is False
    assert verify(round_trip(cert)).verified is True


def test_so_bound_tampering():
    rs = build_root_system("C6")
    _, cert = wellbalanced_upper_bound(rs)
    assert verify(cert).verified is True
    assert verify(tamper(cert, value=4)).verified is False
    assert verify(tamper(cert, max_so=7)).verified is False
    _, e6 = wellbalanced_upper_bound(build_root_system("E6"))
    assert verify(tamper(e6, attaining=e6.payload["attaining"][:-1])).verified is False


def test_exhaustive_tampering():
    rs = build_root_system("B3")
    report = min_balanced_cocardinality(rs, mode="exhaustive")
    cert = report.lower_certificate
    assert verify(cert).verified is True
    assert verify(tamper(cert, tested=cert.payload["tested"][1:])).verified is False
    assert verify(tamper(cert, value=3)).verified is False
    report = max_wellbalanced_cocardinality(rs, mode="exhaustive")
    cert = report.upper_certificate
    assert verify(cert).verified is True
    assert verify(tamper(cert, sizes=cert.payload["sizes"][:-1])).verified is False


def test_exhaustive_solver_refutation_rechecked():
    rs = build_root_system("A3")
    # full A3 is unbalanced; claim it via the solver instead of the lattice
    cert = Certificate("ExhaustiveSearch", rs.label, 1, {"quantity": "min_balanced_cocard", "sizes": [0], "tested": [[[], {"solver": None}]]})
    assert verify(cert).verified is True
    a2 = build_root_system("A2")
    lie = Certificate("ExhaustiveSearch", a2.label, 1, {"quantity": "min_balanced_cocard", "sizes": [0], "tested": [[[], {"solver": None}]]})
    assert verify(lie).verified is False


def test_trivial_and_malformed():
    rs = build_root_system("E8")
    assert verify(Certificate("TrivialBound", rs.label, 0)).verified is True
    assert verify(Certificate("TrivialBound", rs.label, 1)).verified is False
    assert verify(Certificate("Witness", rs.label, 0, {})).verified is False
    with pytest.raises(ValueError):
        Certificate("Bogus", rs.label, 0)
