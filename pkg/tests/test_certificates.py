"""Tests for syndetic obstruction certificates."""

from dataclasses import replace

import pytest

from symindep.errors import InvalidArgumentError
from symindep.certificates import (
    ObstructionCertificate,
    SyndeticInput,
    build_obstruction,
    verify_certificate,
)
from symindep.independence import CylinderTuple, is_independence_set
from symindep.integer_sets import SubsetWindow
from symindep.subshift import fibonacci, full_shift, sft, thue_morse


FULL_RANGE = SubsetWindow(tuple(range(30)), 30)
EVENS = SubsetWindow(tuple(range(0, 70, 2)), 70)


def test_syndetic_input_reads_gap_bound():
    syn = SyndeticInput.from_window(EVENS)
    assert syn.gap_bound == 2
    with pytest.raises(InvalidArgumentError):
        SyndeticInput.from_window(SubsetWindow((5, 6), 10))  # first element too late


def test_thue_morse_certificate():
    cert = build_obstruction(thue_morse(), FULL_RANGE, depth=12)
    assert cert.status == "refuted"
    assert cert.ell == 1 and cert.m == 6
    assert cert.refutation_depth <= 3
    assert cert.core == (0, 1, 2)
    assert cert.core_letters == "000"
    assert verify_certificate(cert, thue_morse(), FULL_RANGE).ok


def test_thue_morse_core_refutes_through_engine():
    cert = build_obstruction(thue_morse(), FULL_RANGE, depth=12)
    t = CylinderTuple.of(thue_morse(), "0", "1")
    assert not is_independence_set(t, cert.core).independent


def test_fibonacci_evens_certificate():
    cert = build_obstruction(fibonacci(), EVENS, depth=20)
    assert cert.status == "refuted"
    assert cert.ell == 2 and cert.m == 10
    assert verify_certificate(cert, fibonacci(), EVENS).ok
    assert all(len(words) <= cert.ell for words in cert.forbidden_sets)


def test_certificate_tampering_detected():
    cert = build_obstruction(thue_morse(), FULL_RANGE, depth=12)
    flipped = ("1" if cert.x[0] == "0" else "0") + cert.x[1:]
    bad_x = verify_certificate(replace(cert, x=flipped), thue_morse(), FULL_RANGE)
    assert not bad_x.ok and bad_x.failed_stage == "avoidance"
    bad_core = verify_certificate(
        replace(cert, core=(0, 1), core_letters="00"), thue_morse(), FULL_RANGE
    )
    assert not bad_core.ok and bad_core.failed_stage == "refutation"


def test_certificate_serialization_round_trip():
    cert = build_obstruction(fibonacci(), EVENS, depth=16)
    assert ObstructionCertificate.from_text(cert.to_text()) == cert


def test_certificates_deterministic():
    a = build_obstruction(thue_morse(), FULL_RANGE, depth=12)
    b = build_obstruction(thue_morse(), FULL_RANGE, depth=12)
    assert a.to_text() == b.to_text()


def test_non_minimal_subshift_rejected():
    with pytest.raises(InvalidArgumentError):
        build_obstruction(full_shift(2), FULL_RANGE, depth=6)


def test_period_two_sft_pipeline():
    per2 = sft(2, ["00", "11"])
    cert = build_obstruction(per2, FULL_RANGE, depth=10, minimality_scale=(2, 8))
    assert cert.status == "refuted"
    assert cert.refutation_depth == 2
    assert verify_certificate(cert, per2, FULL_RANGE).ok


def test_depth_needs_enough_elements():
    with pytest.raises(InvalidArgumentError):
        build_obstruction(thue_morse(), SubsetWindow(tuple(range(10)), 10), depth=8)


def test_incomplete_certificate_rejected_by_verifier():
    cert = build_obstruction(thue_morse(), FULL_RANGE, depth=12)
    partial = replace(cert, status="inconclusive", core=None, core_letters=None)
    result = verify_certificate(partial, thue_morse(), FULL_RANGE)
    assert not result.ok and result.failed_stage == "incomplete"
