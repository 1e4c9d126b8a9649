"""Smoke tests for the compiled module: shapes, endpoints, and a couple of
cross-checks against closed forms. The heavy verification lives in the C++
suites; this guards the binding surface."""

import math

import pytest

import becthresh as bt


def test_rm_code_shapes():
    c = bt.rm_code(3, 1)
    assert c.N == 8
    assert c.k == 4
    assert bt.rm_dimension(10, 5) == 638
    assert bt.min_distance(c) == 4
    rows = c.rows()
    assert rows[0] == "11111111"
    assert rows[1] == "01010101"


def test_code_round_trip(tmp_path):
    c = bt.rm_code(3, 2)
    path = str(tmp_path / "rm32.gm")
    bt.save_code(c, path)
    back = bt.load_code(path)
    assert back.rows() == c.rows()


def test_from_rows_validates():
    with pytest.raises(ValueError):
        bt.LinearCode.from_rows(["1010", "1010"])  # dependent rows
    c = bt.LinearCode.from_rows(["1100", "0011"])
    assert c.k == 2


def test_covered_subcode():
    c = bt.rm_code(3, 1)
    s = bt.covered_subcode(c, [1, 3, 5, 7])  # the four points with x1 = 1
    assert s["dim"] == 1
    assert s["support"] == [1, 3, 5, 7]
    assert bt.bit_recoverable(c, [1, 3, 5, 7], 0)
    assert not bt.bit_recoverable(c, [1, 3, 5, 7], 1)


def test_weights():
    c = bt.rm_code(3, 2)
    assert bt.dr_bruteforce(c, 1)["value"] == 2
    assert bt.dr_bruteforce(c, 3)["value"] == 4
    assert bt.rm_dr_lower_bound(3, 2, "3") == 4
    assert bt.wei_point(4, 2, 1) == (4, 8)
    assert bt.gaussian_binomial(7, 3) == 11811


def test_exact_curves():
    rep = bt.rm_code(3, 0)
    assert bt.exact_fr(rep, 1, 0.5) == pytest.approx(1 / 256, abs=1e-15)
    assert bt.exact_integral_gap(rep, 1) == "1/9"
    table = bt.exact_weight_table(rep, 1)
    assert table["N"] == 8
    assert table["A"][1][8] == "1"


def test_mc_is_deterministic_and_calibrated():
    c = bt.rm_code(4, 2)
    a = bt.mc_fr(c, 0.5, r=1, trials=20000, seed=7)
    b = bt.mc_fr(c, 0.5, r=1, trials=20000, seed=7, threads=4)
    assert a["successes"] == b["successes"]
    exact = bt.exact_fr(c, 1, 0.5)
    assert abs(a["estimate"] - exact) <= 4 * a["stderr"] + 1e-9


def test_pstar_full_space():
    c = bt.rm_code(2, 2)  # bit error = p, so pstar = 1/2
    est = bt.estimate_pstar(c, i=0, trials_per_probe=20000, p_tol=0.004, seed=3)
    assert est["p_hat"] == pytest.approx(0.5, abs=0.02)


def test_verify_reports():
    c = bt.rm_code(3, 1)
    rep = bt.verify_tz_identity(c, 1)
    assert rep["verdict"] == "pass"
    rep = bt.verify_area_bound(c, 1)
    assert rep["verdict"] == "pass"
    assert any(im["name"] == "integral_gap" for im in rep["intermediates"])
    pre = bt.verify_rmcapacity_preconditions(10, 5, "0.3")
    assert pre["verdict"] == "not_applicable"
    rb = bt.verify_rmbounds(1200, 600, t_samples=[554, 600])
    assert rb["verdict"] == "pass"


def test_budget_errors():
    big = bt.rm_code(6, 3)
    with pytest.raises(RuntimeError):
        bt.exact_weight_table(big, 1)  # 2^64 patterns
    with pytest.raises(ValueError):
        bt.rm_code(3, 5)
