import pytest

import iwalog


def test_psi_of_T():
    out = iwalog.evaluate("psi", {"coeffs": {"1": "1"}}, l=3, prec_l=4, trunc_T=12)
    assert out["coeffs"] == {"1": "3", "2": "3", "3": "1"}


def test_log_T_mod_3():
    out = iwalog.evaluate("log-T", l=3, prec_l=1, trunc_T=5)
    assert out["coeffs"] == {"-1": "2", "-2": "2"}


def test_teichmueller_from_text():
    assert iwalog.evaluate("teichmueller", '{"l": 3, "prec": 3, "value": "2"}')["value"] == "26"


def test_group_ring_round_trip():
    x = {"group": [3, 3], "prec_l": 3, "trunc_T": 8, "coeffs": {"(1,2)": {"coeffs": {"1": "4"}}}}
    y = iwalog.evaluate("negate", iwalog.evaluate("negate", x))
    assert iwalog.evaluate("sub", x, y)["coeffs"] == {}


def test_domain_error():
    with pytest.raises(iwalog.IwalogError) as info:
        iwalog.evaluate("psi", {"coeffs": {"1": "1"}}, l=4)
    assert info.value.code == "InvalidPrime"
    assert info.value.exit_code == 2


def test_precision_error():
    with pytest.raises(iwalog.IwalogError) as info:
        iwalog.evaluate("binomial", '"2"', l=3, prec_l=1, k=9)
    assert info.value.code == "PrecisionLoss"
    assert info.value.exit_code == 3


def test_verify_and_selftest():
    report = iwalog.verify("propB", group=[3, 3], samples=5)
    assert report["ok"], report
    assert iwalog.selftest()["ok"]
    assert "lemma4" in iwalog.suites()
    assert "integral-log" in iwalog.operations()
