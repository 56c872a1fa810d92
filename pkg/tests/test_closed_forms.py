import math

import numpy as np
import pytest

from digitalsums import closed_forms as cfm
from digitalsums import digits
from digitalsums.errors import AccuracyError, CapabilityError, DomainError
from digitalsums.fourier import ClosedFormExpr, FourierSeries1, fit_tail_bound, split_lg
from digitalsums.residues import OMEGA
from digitalsums.specfun import EULER_GAMMA, LN2, zeta_many


def test_split_lg_is_exact_under_doubling():
    for n in (3, 5, 12345, 2**40 + 7):
        e, f = split_lg(n)
        e2, f2 = split_lg(2 * n)
        assert e2 == e + 1 and f2 == f
        assert 0 <= f < 1


def test_fourier_period_one_bit_identical():
    F = cfm.ts_closed_form(1).term(1, 0)
    u = np.array([0.1, 0.37, 0.9])
    # u + 1 - floor(u + 1) rounds differently from u, so only near equality here
    assert np.max(np.abs(F(u) - F(u + 1))) <= 1e-12
    # fractions taken from split_lg are identical for n and 2n, so values are too
    ns = np.array([3, 77, 1001, 65535])
    a = cfm.ts_closed_form(1).periodic_values(ns)
    b = cfm.ts_closed_form(1).periodic_values(2 * ns)
    for key in a:
        assert np.array_equal(a[key], b[key])


def test_fourier_series_real_values():
    F = cfm.twm_closed_form(2).term(1, 0)
    x = F.at_fraction(np.linspace(0, 1, 7, endpoint=False))
    assert np.isrealobj(x)


def test_fit_tail_bound_refuses_slow_decay():
    j = np.arange(1, 401)
    with pytest.raises(AccuracyError):
        fit_tail_bound(1.0 / j**0.5)
    A, bound = fit_tail_bound(np.log(j + 1) ** 2 / j**2)
    assert A < 1 and bound > 0
    assert fit_tail_bound(np.zeros(10)) == (-math.inf, 0.0)


def test_mdc_leading_and_means():
    for k in (2, 3, 4, 5):
        cf = cfm.mdc_closed_form(k)
        assert cf.term(1, k - 1).mean == pytest.approx(1 / math.factorial(k - 1), abs=1e-12)
        assert not np.any(np.abs(cf.term(1, k - 1).coeffs) > 1e-12)
    assert cfm.mdc_closed_form(3).term(1, 1).mean == pytest.approx(0.5573049591, abs=1e-10)


def test_a_formula_holds_for_k_at_least_3():
    for k in (3, 4, 5, 6):
        assert cfm.mdc_closed_form(k, 0).term(1, k - 2).mean == pytest.approx(cfm.a_mean_exact(k), abs=1e-10)
    # k = 2 is the base case: the mean is 1/2 - 1/ln 2
    assert cfm.mdc_closed_form(2, 0).term(1, 0).mean == pytest.approx(cfm.A0_MEAN, abs=1e-12)


def test_mdc_constants_parity():
    got = [cfm.mdc_closed_form(k, 0).info["c_k"] for k in range(2, 7)]
    assert got == [1, 0, 1, 0, 1]


def test_mdc_k2_vs_exact():
    ns = cfm.log_sample(2, 2**20, 200)
    c = cfm.compare_exact(cfm.mdc_closed_form(2), lambda n: digits.mdc_f(n, 2), ns, lambda n: n)
    assert c.max_deviation <= 1e-3


def test_mdc_deviation_shrinks_with_j():
    ns = cfm.log_sample(2, 2**20, 200)
    dev = [cfm.compare_exact(cfm.mdc_closed_form(3, J), lambda n: digits.mdc_f(n, 3), ns, cfm.scale_mdc(3)).max_deviation
           for J in (250, 1000)]
    assert dev[1] <= 0.75 * dev[0]


def test_ts_constants():
    assert cfm.ts_closed_form(1).constant == pytest.approx(1, abs=1e-12)
    assert cfm.ts_closed_form(2).constant == pytest.approx(-2, abs=1e-12)
    for M in (1, 2, 3):
        assert cfm.ts_closed_form(M, 0).term(1, M).mean == pytest.approx(0.5, abs=1e-12)


def test_f_mean_exact_formula():
    # (2 gamma_0 - 3 - ln 2)/(4 ln 2) at M = 1
    assert cfm.f_mean_exact(1) == pytest.approx((2 * EULER_GAMMA - 3 - LN2) / (4 * LN2), abs=1e-15)
    assert cfm.f_mean_exact(1) == pytest.approx(-0.915648, abs=1e-6)
    assert cfm.ts_closed_form(1, 0).term(1, 0).mean == pytest.approx(cfm.f_mean_exact(1), abs=1e-12)


def test_exact_period_average_of_ts1_matches_mean():
    # average of (TS_1(n) - n lg n / 2)/n - 1/n over one period, uniform in lg n
    lo = 2**18
    ns = np.unique(np.round(lo * 2.0 ** (np.arange(4096) / 4096)).astype(np.int64))
    L = np.log2(ns.astype(float))
    y = np.array([float(digits.ts_m(int(n), 1)) for n in ns]) / ns - L / 2 - 1 / ns
    avg = np.trapezoid(np.r_[y, y[0]], np.r_[L, L[0] + 1])
    assert avg == pytest.approx(cfm.f_mean_exact(1), abs=1e-5)


def test_tw1_constants():
    cf = cfm.tw1_closed_form()
    assert cf.term(1, 0).mean == pytest.approx(0.704687, abs=1e-5)
    assert cf.term(1, 0).mean == pytest.approx(cfm.TW1_CONSTANTS["F_W1"], abs=1e-12)
    assert cf.term(0, 0).mean == pytest.approx(cfm.TW1_CONSTANTS["F_W0"], abs=1e-12)
    assert cf.term(0, 1).mean == pytest.approx(-0.25, abs=1e-12)
    assert abs(cf.info["n_lg_coefficient"]) <= 1e-12
    p = cfm.tw1_parts()
    assert p.H1.mean == pytest.approx(-0.253139, abs=1e-5)
    for key in ("H1", "H2", "H31", "H32"):
        assert getattr(p, key).mean == pytest.approx(cfm.TW1_CONSTANTS[key], abs=1e-12)


def test_tw1_residue_route_vs_zeta_value_route():
    J = 300
    cf = cfm.tw1_closed_form(J)
    fw1, fw0 = cfm.tw1_reference_series(J)
    assert np.max(np.abs(cf.term(1, 0).coeffs - fw1.coeffs)) <= 1e-13
    assert np.max(np.abs(cf.term(0, 0).coeffs - fw0.coeffs)) <= 1e-13
    beta = 1j * OMEGA * np.arange(1, J + 1)
    direct = zeta_many(beta) / (2 * LN2 * beta * (beta + 1))
    assert np.max(np.abs(cf.term(0, 0).coeffs - direct)) <= 1e-13


def test_twm_one_matches_tw1():
    a = cfm.twm_closed_form(1, 50)
    b = cfm.tw1_closed_form(50)
    for key in set(a.keys()) | set(b.keys()):
        assert np.max(np.abs(a.term(*key).padded(50) - b.term(*key).padded(50)), initial=0) <= 1e-6
        assert a.term(*key).mean == pytest.approx(b.term(*key).mean, abs=1e-6)


def test_twm_d_m_reported():
    cf = cfm.twm_closed_form(2)
    assert math.isfinite(cf.info["d_M"]) and cf.info["d_M_error"] <= 1e-9
    assert cf.info["d_M"] == pytest.approx(-0.125, abs=1e-9)
    assert cf.info["upper_imag"] <= 1e-10 and cf.info["lower_imag"] <= 1e-10


def test_s1_envelope():
    N = 10**6
    S = digits.s_m_array(N, 1)[2:].astype(float)
    n = np.arange(2, N + 1, dtype=float)
    y = (S - n * np.log2(n)) / n
    assert y.min() >= -2 and y.max() <= 1e-12


def test_caps_and_domain():
    with pytest.raises(CapabilityError):
        cfm.ts_closed_form(5)
    with pytest.raises(CapabilityError):
        cfm.twm_closed_form(4)
    with pytest.raises(CapabilityError):
        cfm.mdc_closed_form(7)
    with pytest.raises(DomainError):
        cfm.eval_closed_form(cfm.ts_closed_form(1), [1])


def test_closed_form_expr_algebra():
    cf = ClosedFormExpr(constant=2.0)
    cf.add_term(1, 0, FourierSeries1.constant(1.5))
    cf.add_term(1, 0, FourierSeries1.constant(0.5))
    assert cf.evaluate([8])[0] == pytest.approx(2.0 + 8 * 2.0)
    assert cf.keys() == [(1, 0)]
