"""A1-A9 at q=2 over both o_2 variants.  Each test prints one PASS/FAIL line."""

import json

import pytest

from cusplab.cli.suites import CLAIMS, Session

BY_ID = {c.claim_id: c for c in CLAIMS}


@pytest.fixture(scope="module")
def session():
    return Session(2, ["zp2", "dual"])


def _witness(w):
    text = json.dumps(w, sort_keys=True, default=str)
    return text if len(text) <= 160 else text[:157] + "..."


@pytest.mark.parametrize("claim_id", sorted(BY_ID))
def test_acceptance(claim_id, session, capsys):
    claim = BY_ID[claim_id]
    ok, witness = claim.check(session)
    with capsys.disabled():
        tag = "PASS" if ok else "FAIL"
        print(f"\n{claim_id} {tag} [{claim.suite}] {_witness(witness)}")
    assert ok is True, witness


def test_main_claim_witness_is_named(session):
    ok, w = BY_ID["A5"].check(session)
    assert ok
    for ring in ("zp2", "dual"):
        first = w[ring]["first"]
        assert first["cuspidal"] and not first["strongly_cuspidal"] and first["label"]
