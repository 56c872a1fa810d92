"""The twelve acceptance criteria, each at its stated tolerance.

Every criterion records one PASS/FAIL line in the terminal summary.
"""

import time

import numpy as np
import pytest

from digitalsums import cli
from digitalsums import closed_forms as cfm
from digitalsums import digits
from digitalsums.config import RunConfig
from digitalsums.dgf import build_bm, b1_form, p_m1, p_m1_at_1_recurrence
from digitalsums.residues import Pole, residue
from digitalsums import verify

CFG = RunConfig()
SAMPLE = cfm.log_sample(2, 2**20, 200)


def summarize(results):
    worst = max(results, key=lambda r: r.measured / r.tolerance if r.tolerance else (0 if r.passed else np.inf))
    return all(r.passed for r in results), f"{len(results)} checks; worst {worst.name}: {worst.measured:.3g} vs {worst.tolerance:g}"


def test_01_ts1_exactness(report):
    t0 = time.perf_counter()
    c2 = cfm.compare_exact(cfm.ts_closed_form(1, 2000), lambda n: digits.ts_m(n, 1), SAMPLE, cfm.scale_ts(1))
    c8 = cfm.compare_exact(cfm.ts_closed_form(1, 8000), lambda n: digits.ts_m(n, 1), SAMPLE, cfm.scale_ts(1))
    elapsed = time.perf_counter() - t0
    ratio = c8.max_deviation / c2.max_deviation
    ok = len(SAMPLE) == 200 and c2.max_deviation <= 1e-3 and ratio <= 0.75 and elapsed <= 120
    report(1, "TS_1 exactness", ok, f"dev {c2.max_deviation:.3g} <= 1e-3, J=8000 ratio {ratio:.3f} <= 0.75, {elapsed:.0f}s")
    assert ok


def test_02_ts2_exactness(report):
    c = cfm.compare_exact(cfm.ts_closed_form(2, 2000), lambda n: digits.ts_m(n, 2), SAMPLE, cfm.scale_ts(2))
    ok = c.max_deviation <= 5e-3
    report(2, "TS_2 exactness", ok, f"dev {c.max_deviation:.3g} <= 5e-3")
    assert ok


def test_03_mdc_exactness(report):
    devs = {k: cfm.compare_exact(cfm.mdc_closed_form(k, 2000), lambda n: digits.mdc_f(n, k), SAMPLE,
                                 cfm.scale_mdc(k)).max_deviation for k in (3, 4)}
    consts = [cfm.mdc_closed_form(k, 2000).info["c_k"] for k in (2, 3, 4)]
    ok = max(devs.values()) <= 5e-3 and consts == [1, 0, 1]
    report(3, "MDC exactness", ok, f"dev k=3 {devs[3]:.3g}, k=4 {devs[4]:.3g} <= 5e-3; c_2,c_3,c_4 = {consts}")
    assert ok


def test_04_tw1_exactness(report):
    cf = cfm.tw1_closed_form(2000)
    c = cfm.compare_exact(cf, lambda n: digits.tw_m(n, 1), SAMPLE, cfm.scale_tw)
    lg_coef = cf.term(0, 1).mean
    ok = c.max_deviation <= 1e-3 and abs(lg_coef + 0.25) <= 1e-9
    report(4, "TW_1 exactness", ok, f"dev {c.max_deviation:.3g} <= 1e-3; lg n coefficient {lg_coef:.15f}")
    assert ok


def _constants_checks():
    return verify.suite_constants(CFG)


def test_05_constants(report):
    results = _constants_checks()
    approx = [r for r in results if "0.915648" in r.name]
    rest = [r for r in results if r not in approx]
    ok_rest, detail = summarize(rest)
    ok_all = ok_rest and all(r.passed for r in approx)
    worst = max(r.measured for r in approx)
    report(5, "constants", ok_all,
           f"exact formulas {'pass' if ok_rest else 'FAIL'} ({detail}); "
           f"printed approximation M^2/4 - 0.915648 M misses by up to {worst:.3g} (= M/4)")
    assert ok_rest


@pytest.mark.xfail(strict=True, reason="the printed decimal approximation differs from its exact formula by M/4")
def test_05_constants_printed_approximation():
    approx = [r for r in _constants_checks() if "0.915648" in r.name]
    assert all(r.passed for r in approx)


def test_06_residue_ground_truths(report):
    ok, detail = summarize(verify.suite_residues(CFG))
    report(6, "residue ground truths", ok, detail)
    assert ok


def test_07_symbolic_identity(report):
    exact = build_bm(1) == b1_form()
    rec = [p_m1(M)(1) == p_m1_at_1_recurrence(M) for M in (2, 3)]
    ok = exact and all(rec)
    report(7, "symbolic identity", ok, f"B_1 exact: {exact}; P_M,1(1) recurrence M=2,3: {rec}")
    assert ok


def test_08_dgf_identities(report):
    ok, detail = summarize(verify.suite_dgf(CFG, s=3.0, N=10**5, tol=1e-6))
    report(8, "DGF identity suite at s=3", ok, detail)
    assert ok


def test_09_integer_properties(report):
    t0 = time.perf_counter()
    results = verify.suite_integer(RunConfig(N=10**5, N_int=10**6))
    elapsed = time.perf_counter() - t0
    ok, detail = summarize(results)
    ok = ok and elapsed <= 180
    report(9, "integer-property suite", ok, f"{detail}; {elapsed:.0f}s")
    assert ok


def test_10_twm_property_based(report):
    ok, detail = summarize(verify.suite_twm(RunConfig(J_twm=50), 2))
    report(10, "TW_2 property-based", ok, detail)
    assert ok


def test_11_zeta(report):
    ok, detail = summarize(verify.suite_zeta(CFG))
    report(11, "zeta suite", ok, detail)
    assert ok


def test_12_figures(report, tmp_path):
    assert cli.main(["figures", "--out", str(tmp_path)]) == 0
    emitted = sorted(p.name for p in tmp_path.glob("*.csv"))
    results = verify.suite_figures(CFG, tmp_path)
    ok, detail = summarize(results)
    ok = ok and len(emitted) == 10
    report(12, "figure reproduction", ok, f"{len(emitted)} datasets; {detail}")
    assert ok
