import copy
import json

import pytest

from brauerconic.certificate import certify_cot, dumps, verify


@pytest.fixture(scope="module")
def main_cert():
    return certify_cot(timestamp="2000-01-01T00:00:00Z")


@pytest.fixture(scope="module")
def remark_cert():
    return certify_cot("remark", height_bound=2, timestamp="2000-01-01T00:00:00Z")


def _step(cert, name):
    return next(s for s in cert["verdicts"] if s["step"] == name)


def test_main_path_is_rational(main_cert):
    assert main_cert["conclusion"] == "Rational"
    assert main_cert["failing_step"] is None
    assert all(s["passed"] for s in main_cert["verdicts"])
    assert main_cert["constant_class"] == "sym(2, -2)"
    assert main_cert["surviving_class"] == "sym(-u^2 + u + 2, -2*u^2 + 5*u - 2)"
    (rule,) = _step(main_cert, "constant_decision")["decision"]["steps"]
    assert rule["rule"] == "b=-a"
    assert len(main_cert["residue_table"]) == 8
    assert main_cert["model_chart"]["image_identity"] == "0"


def test_verify_accepts_emitted_certificate(main_cert, remark_cert):
    assert verify(json.loads(dumps(main_cert))) == []
    assert verify(json.loads(dumps(remark_cert))) == []


def test_output_is_deterministic():
    a = dumps(certify_cot(timestamp="fixed"))
    b = dumps(certify_cot(timestamp="fixed"))
    assert a == b
    c = json.loads(dumps(certify_cot()))
    c["timestamp"] = "fixed"
    assert dumps(c) == a


def test_remark_path(remark_cert):
    assert remark_cert["conclusion"] == "Rational"
    evals = _step(remark_cert, "remark_point")["evaluations"]
    assert [e["value"] for e in evals] == ["sym(144, 80)", "sym(2, 3)"]
    first = evals[0]["decision"]["steps"][0]
    assert first["rule"] == "square-entry" and first["witness"] == ["12"]
    second = evals[1]["decision"]["steps"][0]
    assert second["rule"] == "isotropic-point" and second["witness"] == ["1", "i", "1"]


def test_tampered_target_is_not_equal():
    cert = certify_cot(target="sym(u, 2*v)", timestamp="t")
    assert cert["conclusion"] == "NotEqualOverPlane"
    assert cert["failing_step"] == "difference_unramified"
    assert cert["witness_divisor"] == "u"
    assert cert["witness_class"] == {"constant": "2", "odd_poly": "1"}
    assert verify(cert) == []


def _tampered(cert, edit):
    c = copy.deepcopy(json.loads(dumps(cert)))
    edit(c)
    return verify(c)


def test_verify_catches_bad_square_witness(remark_cert):
    def edit(c):
        _step(c, "remark_point")["evaluations"][0]["decision"]["steps"][0]["witness"] = ["11"]

    assert _tampered(remark_cert, edit)


def test_verify_catches_bad_isotropic_witness(remark_cert):
    def edit(c):
        _step(c, "remark_point")["evaluations"][1]["decision"]["steps"][0]["witness"] = ["1", "1", "1"]

    assert _tampered(remark_cert, edit)


def test_verify_catches_edited_residue_row(main_cert):
    def flip(c):
        c["residue_table"][0]["class"]["odd_poly"] = "1"
        c["residue_table"][0]["trivial"] = True

    def drop(c):
        del c["residue_table"][0]

    assert _tampered(main_cert, flip)
    assert _tampered(main_cert, drop)


def test_verify_catches_edited_claims(main_cert):
    def constant(c):
        c["constant_class"] = "sym(2, 3)"

    def conclusion(c):
        c["conclusion"] = "Rational"
        c["verdicts"][-1]["passed"] = False

    def chart(c):
        c["model_chart"]["forward"][3] = "(1)*s^2 + (-1)*t^2*u"

    def alpha(c):
        c["alpha"] = "sym(u, v)"

    for edit in (constant, conclusion, chart, alpha):
        assert _tampered(main_cert, edit), edit.__name__


def test_failed_decision_is_unknown():
    cert = certify_cot("remark", height_bound=0, timestamp="t")
    assert cert["conclusion"] == "Unknown"
    assert cert["failing_step"] == "remark_point"
    assert verify(cert) == []
