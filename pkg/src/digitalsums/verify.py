"""Verification suites: each returns a list of CheckResult rows."""

from __future__ import annotations

import math
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import closed_forms as cfm
from . import digits, figures
from .config import RunConfig
from .dgf import (
    RatFunc2s,
    b1_form,
    build_bm,
    dgf_am,
    dgf_mdc,
    dgf_rr,
    dirichlet_partial,
    v1_form,
    ir_values,
    p_m1,
    p_m1_at_1_recurrence,
)
from .residues import Kernel, Pole, residue
from .specfun import LN2, stieltjes_table, zeta, zeta_deriv, zeta_many


@dataclass
class CheckResult:
    name: str
    measured: float
    tolerance: float
    passed: bool
    detail: str = ""


def check(name: str, measured: float, tolerance: float, detail: str = "") -> CheckResult:
    measured = float(measured)
    return CheckResult(name, measured, tolerance, bool(measured <= tolerance), detail)


def rel(a: complex, b: complex) -> float:
    return abs(a - b) / max(abs(b), 1e-300)


# ------------------------------------------------------------ integers


def _exact_le_nlgn(S: int, n: int, shift: int = 0) -> bool:
    """S + shift*n <= n lg n  <=>  2^(S + shift*n) <= n^n."""
    return (S + shift * n) <= 0 or (1 << (S + shift * n)) <= n**n


def s1_bound_violations(N: int) -> int:
    S = digits.s_m_array(N, 1)
    n = np.arange(N + 1, dtype=float)
    nl = np.zeros(N + 1)
    nl[2:] = n[2:] * np.log2(n[2:])
    bad = 0
    for i in np.nonzero(np.abs(S[2:] - nl[2:]) < 1e-6 * nl[2:] + 1e-3)[0] + 2:
        bad += not _exact_le_nlgn(int(S[i]), int(i))
    far = np.abs(S[2:] - nl[2:]) >= 1e-6 * nl[2:] + 1e-3
    bad += int(np.count_nonzero(far & (S[2:] > nl[2:])))
    # lower bound: n lg n - 2n <= S  <=>  n^n <= 2^(S + 2n)
    lower = nl[2:] - 2 * n[2:]
    close = np.abs(S[2:] - lower) < 1e-6 * nl[2:] + 1e-3
    for i in np.nonzero(close)[0] + 2:
        i = int(i)
        bad += not (i**i <= (1 << (int(S[i]) + 2 * i)))
    bad += int(np.count_nonzero(~close & (S[2:] < lower)))
    return bad


def decomposition_violations(N: int) -> int:
    Cw = digits.cw_array(N)
    S = digits.s_m_array(N, 1)
    W = digits.w_m_array(N, 1)
    v2 = digits.v2_array(N)
    rhs = S[1:] + W[1:] - (np.int64(1) << v2[1:])
    return int(np.count_nonzero(Cw[1:] != rhs))


def v_identity_violations(N: int) -> int:
    v = digits.v_array(2 * N + 1)
    v2 = digits.v2_array(2 * N + 1)
    n = np.arange(1, N + 1)
    bad = np.count_nonzero(v[2 * n] != v[n])
    bad += np.count_nonzero(v[2 * n + 1] != v[n] + 1)
    bad += np.count_nonzero(v2[2 * n] != v2[n] + 1)
    bad += np.count_nonzero(v2[2 * n + 1] != 0)
    bad += np.count_nonzero(v[n] - v[n - 1] != 1 - v2[n])
    return int(bad)


def two_scale_violations(N: int, M_max: int = 4) -> int:
    n = np.arange(1, N + 1)
    v = digits.v_array(2 * N + 1)
    bad = 0
    S_prev = digits.s_m_array(2 * N + 1, 0)
    for M in range(1, M_max + 1):
        S = digits.s_m_array(2 * N + 1, M)
        bad += np.count_nonzero(S[2 * n + 1] != S[2 * n])
        if M == 1:
            bad += np.count_nonzero(S[2 * n] != 2 * S[n] + 2 * n)
        bad += np.count_nonzero(S[2 * n] != 2 * S[n] + M * S_prev[2 * n])
        S_prev = S
        W = digits.w_m_array(2 * N + 1, M)
        bad += np.count_nonzero(W[2 * n] != 2 * W[n])
        bad += np.count_nonzero(W[2 * n + 1] != 2 * W[n] + (v[n] + 1) ** M)
    return int(bad)


def suite_brown(cfg: RunConfig) -> list[CheckResult]:
    return [check(f"n lg n - 2n <= S_1 <= n lg n, n<={cfg.N_int}", s1_bound_violations(cfg.N_int), 0)]


def suite_decomposition(cfg: RunConfig) -> list[CheckResult]:
    return [check(f"C_w = S_1 + W_1 - 2^v2 n<={cfg.N_int}", decomposition_violations(cfg.N_int), 0)]


def suite_integer(cfg: RunConfig) -> list[CheckResult]:
    out = suite_brown(cfg) + suite_decomposition(cfg)
    out.append(check(f"v / v2 digit identities n<={cfg.N_int}", v_identity_violations(cfg.N_int), 0))
    out.append(check(f"S_M, W_M two-scale recurrences n<={cfg.N}", two_scale_violations(cfg.N), 0))
    return out


# ------------------------------------------------------------ zeta


def euler_gamma_limit(N: int = 10**4) -> float:
    """H_N - ln N - 1/(2N) + 1/(12N^2) - 1/(120N^4) + 1/(252N^6)."""
    H = math.fsum(1.0 / k for k in range(1, N + 1))
    return H - math.log(N) - 1 / (2 * N) + 1 / (12 * N**2) - 1 / (120 * N**4) + 1 / (252 * N**6)


def suite_zeta(cfg: RunConfig) -> list[CheckResult]:
    out = [
        check("|zeta(2) - pi^2/6|", abs(zeta(2) - math.pi**2 / 6), 1e-11),
        check("|zeta(0) + 1/2|", abs(zeta(0) + 0.5), 1e-10),
        check("|zeta(-1) + 1/12|", abs(zeta(-1) + 1 / 12), 1e-10),
    ]
    w = 2 * math.pi / LN2
    h = 1e-4
    for label, s in (("3", 3.0), ("alpha_1", 1 + 1j * w), ("beta_1", 1j * w)):
        fd = (zeta(s + h) - zeta(s - h)) / (2 * h)
        out.append(check(f"zeta' vs finite difference at {label}", abs(zeta_deriv(s, 1) - fd), 1e-6))
    out.append(check("gamma_0 vs limit oracle", abs(stieltjes_table()[0] - euler_gamma_limit()), 1e-9))
    return out


# ------------------------------------------------------------ residues / symbolic


def ts_kernel(M: int) -> Kernel:
    return Kernel.single("zeta", RatFunc2s.monomial(2, x_pow=M - 1, pm2=-M), label=f"K_{M}")


def mdc_kernel(k: int) -> Kernel:
    return Kernel.single("one", RatFunc2s.monomial(1, x_pow=k - 1, pm1=-(k - 1)), label=f"K_{k}")


def suite_residues(cfg: RunConfig) -> list[CheckResult]:
    out = []
    for M in range(1, 5):
        r = residue(ts_kernel(M), Pole(0, 0)).coeffs
        out.append(check(f"Res(K_{M}, 0) = {(-1) ** (M + 1):+d}", abs(r[0] - (-1) ** (M + 1)) + np.abs(r[1:]).sum(), 1e-10))
    for k in range(2, 6):
        r = residue(mdc_kernel(k), Pole(-1, 0)).coeffs  # coefficient of n^-1
        out.append(check(f"n Res(K_{k}, -1) = {(-1) ** k:+d}", abs(r[0] - (-1) ** k) + np.abs(r[1:]).sum(), 1e-10))
    return out


def suite_symbolic(cfg: RunConfig) -> list[CheckResult]:
    out = [CheckResult("build_bm(1) == closed M=1 form", 0.0, 0.0, build_bm(1) == b1_form())]
    for M in range(1, 4):
        got, want = p_m1(M)(1), p_m1_at_1_recurrence(M)
        out.append(CheckResult(f"P_{M},1(1) = {want}", float(abs(got - want)), 0.0, got == want, str(got)))
    return out


# ------------------------------------------------------------ DGF identities


def suite_dgf(cfg: RunConfig, s: float = 3.0, N: int | None = None, tol: float | None = None) -> list[CheckResult]:
    N = N or cfg.N
    x = 2.0**s
    tol = tol or cfg.tol("dgf", 1e-6)
    z = zeta(s)
    out = [
        check("sum v2 / j^s", rel(dirichlet_partial("v2", s, N), z / (x - 1)), tol),
        check("sum nabla v / j^s", rel(dirichlet_partial("nabla_v", s, N), (x - 2) / (x - 1) * z), tol),
    ]
    V = {M: dirichlet_partial("v^M", s, N, M=M) for M in range(0, 4)}
    Z = {M: dirichlet_partial("(v+v2)^M", s, N, M=M) for M in range(0, 4)}
    R = {r: dirichlet_partial("R_r", s, N, M=r) for r in range(1, 4)}
    I = ir_values(3, [s])[0]
    for M in range(1, 4):
        odd = dirichlet_partial("v^M_odd", s, N, M=M)
        out.append(check(f"odd-index v^{M} sum", rel(odd, (1 - 1 / x) * V[M]), tol))
    for M in range(1, 4):
        out.append(check(f"A_{M} closed form", rel(dirichlet_partial("nabla_S_M", s, N, M=M), dgf_am(M).evaluate(s)), tol))
    for k in range(2, 6):
        out.append(check(f"D_f{k} closed form", rel(dirichlet_partial("ddf_k", s, N, k=k), dgf_mdc(k).evaluate(s)), tol))
    out.append(check("V_1 via zeta and I_1", rel(V[1], v1_form().evaluate(s, I)), tol))
    for M in range(1, 4):
        B = build_bm(M).evaluate(s, I)
        out.append(check(f"B_{M} = ((x-1)V - Z)/(x-2)", rel(B, ((x - 1) * V[M] - Z[M]) / (x - 2)), tol))
        out.append(check(f"B_{M} vs sum nabla W_{M}", rel(B, dirichlet_partial("nabla_W_M", s, N, M=M)), tol))
        vm = (x - 1) / (x - 2) * z + sum(math.comb(M, r) * V[r] for r in range(1, M)) / (x - 2)
        vm -= x / (x - 2) * sum(math.comb(M, r) * R[r] for r in range(1, M + 1))
        out.append(check(f"V_{M} functional equation", rel(V[M], vm), tol))
        zm = V[M] + z / (x - 1) + sum(math.comb(M, r) * Z[r] for r in range(1, M)) / (x - 1)
        out.append(check(f"Z_{M} functional equation", rel(Z[M], zm), tol))
        out.append(check(f"R_{M} = D_{M} - I_{M}", rel(R[M], dgf_rr(M).evaluate(s, I)), tol))
    return out


# ------------------------------------------------------------ closed forms


def _sample(cfg: RunConfig, hi_lg: int = 20) -> np.ndarray:
    return cfm.log_sample(2, 2**hi_lg, cfg.sample)


def suite_ts(cfg: RunConfig, M: int = 1) -> list[CheckResult]:
    ns = _sample(cfg)
    tol = {1: 1e-3, 2: 5e-3}.get(M, 5e-3)
    cf = cfm.ts_closed_form(M, cfg.J)
    c = cfm.compare_exact(cf, lambda n: digits.ts_m(n, M), ns, cfm.scale_ts(M))
    out = [check(f"TS_{M} scaled deviation (J={cfg.J})", c.max_deviation, cfg.tol(f"ts{M}", tol), f"worst n={c.worst_n}")]
    if M == 1 and cfg.J_ratio:
        c4 = cfm.compare_exact(cfm.ts_closed_form(M, cfg.J_ratio), lambda n: digits.ts_m(n, M), ns, cfm.scale_ts(M))
        out.append(check(f"TS_1 deviation ratio J={cfg.J_ratio} / J={cfg.J}", c4.max_deviation / c.max_deviation, 0.75))
    return out


def suite_mdc(cfg: RunConfig, ks=(3, 4)) -> list[CheckResult]:
    ns = _sample(cfg)
    out = []
    for k in ks:
        cf = cfm.mdc_closed_form(k, cfg.J)
        c = cfm.compare_exact(cf, lambda n: digits.mdc_f(n, k), ns, cfm.scale_mdc(k))
        out.append(check(f"f^{k} scaled deviation (J={cfg.J})", c.max_deviation, cfg.tol("mdc", 5e-3), f"worst n={c.worst_n}"))
    for k, want in ((2, 1), (3, 0), (4, 1)):
        got = cfm.mdc_closed_form(k, cfg.J).info["c_k"]
        out.append(CheckResult(f"c_{k} = {want}", abs(got - want), 0.0, got == want))
    return out


def suite_tw(cfg: RunConfig, M: int = 1) -> list[CheckResult]:
    if M != 1:
        return suite_twm(cfg, M)
    ns = _sample(cfg)
    cf = cfm.tw1_closed_form(cfg.J)
    c = cfm.compare_exact(cf, lambda n: digits.tw_m(n, 1), ns, cfm.scale_tw)
    return [
        check(f"TW_1 scaled deviation (J={cfg.J})", c.max_deviation, cfg.tol("tw1", 1e-3), f"worst n={c.worst_n}"),
        check("TW_1 lg n coefficient + 1/4", abs(cf.term(0, 1).mean + 0.25), 1e-9),
    ]


def suite_twm(cfg: RunConfig, M: int = 2) -> list[CheckResult]:
    ns = _sample(cfg, 16)
    cf = cfm.twm_closed_form(M, cfg.J_twm, cap=cfg.M_max)
    c = cfm.compare_exact(cf, lambda n: digits.tw_m(n, M), ns, cfm.scale_tw)
    out = [
        check(f"TW_{M} scaled deviation (J={cfg.J_twm})", c.max_deviation, cfg.tol("twm", 5e-2), f"worst n={c.worst_n}"),
        CheckResult(f"TW_{M} tail bound exceeds deviation", c.max_deviation, c.max_bound, c.max_bound > c.max_deviation,
                    f"bound={c.max_bound:.3g}"),
    ]
    one = cfm.twm_closed_form(1, cfg.J_twm, cap=cfg.M_max)
    ref = cfm.tw1_closed_form(cfg.J)
    diff = abs(one.constant - ref.constant)
    for key in set(one.keys()) | set(ref.keys()):
        a, b = one.term(*key), ref.term(*key)
        diff = max(diff, abs(a.mean - b.mean), float(np.abs(a.padded(cfg.J_twm) - b.padded(cfg.J_twm)).max(initial=0.0)))
    out.append(check("B_M route vs zeta-only route at M=1, per coefficient", diff, 1e-6))
    return out


def suite_constants(cfg: RunConfig) -> list[CheckResult]:
    fw1 = cfm.tw1_closed_form(cfg.J).term(1, 0).mean
    out = [check("mean F_W1 vs 0.704687", abs(fw1 - 0.704687), 1e-5)]
    for M in range(1, 5):
        mean = cfm.ts_closed_form(M, 0).term(1, M - 1).mean  # J=0: the j=0 residue alone
        out.append(check(f"f_{M},{M - 1},0 vs exact formula", abs(mean - cfm.f_mean_exact(M)), 1e-8))
        out.append(check(f"f_{M},{M - 1},0 vs M^2/4 - 0.915648 M", abs(mean - cfm.f_mean_approx(M)), 1e-4,
                         f"value={mean:.9f}"))
    for k in (3, 4):
        mean = cfm.mdc_closed_form(k, 0).term(1, k - 2).mean
        out.append(check(f"a_{k},{k - 2},0 vs formula", abs(mean - cfm.a_mean_exact(k)), 1e-8))
    a0 = cfm.mdc_closed_form(2, 0).term(1, 0).mean
    out.append(check("mean A_0^2 vs 1/2 - 1/ln 2", abs(a0 - cfm.A0_MEAN), 1e-9))
    return out


# ------------------------------------------------------------ figures


def periodic_part_gap(M: int, lg_lo: int = 40, per_period: int = 64, J: int | None = None) -> float:
    """max |P(2n) - P(n)| with P(n) = (TW_M(n) - lower-order closed-form terms)/n."""
    cf = cfm.tw1_closed_form(J or cfm.J_DEFAULT) if M == 1 else cfm.twm_closed_form(M, J or cfm.J_TWM)
    lower = {k: F for k, F in cf.terms.items() if k[0] == 0}
    base = np.unique(np.round(2.0 ** (lg_lo + np.arange(per_period) / per_period)).astype(np.int64))

    def P(ns):
        exact = np.array([float(digits.tw_m(int(n), M)) for n in ns])
        return (exact - cfm.ClosedFormExpr(lower, cf.constant).evaluate(ns)) / ns.astype(float)

    return float(np.abs(P(2 * base) - P(base)).max())


def suite_figures(cfg: RunConfig, out_dir: Path | None = None) -> list[CheckResult]:
    tmp = None
    if out_dir is None:
        tmp = tempfile.TemporaryDirectory()
        out_dir = Path(tmp.name)
    data = figures.figure_datasets((1, 2, 3), 1, cfg.fig_lg_max, cfg.per_period)
    paths = [figures.write_csv(d, out_dir) for d in data]
    by = {d.name: d for d in data}
    out = [check("figure datasets written", 10 - sum(p.exists() for p in paths), 0)]
    y1 = by["fig1_M1"].y
    out.append(check("fig 1 (M=1) outside [-2, 0]", int(np.count_nonzero((y1 < -2) | (y1 > 0))), 0))
    means = {"fig3e_tw1": cfm.tw1_closed_form(cfg.J).term(1, 0).mean,
             "fig3f_tw2": cfm.twm_closed_form(2, cfg.J_twm, cap=cfg.M_max).term(1, 0).mean}
    for name, mean in means.items():
        d = by[name]
        top = d.n >= 2 ** (cfg.fig_lg_max - 1)
        L = np.log2(d.n[top].astype(float))
        avg = np.trapezoid(d.y[top], L) / (L[-1] - L[0])
        out.append(check(f"{name} period average vs computed mean", abs(avg - mean), 1e-3,
                         f"mean={mean:.6f}"))
        if name == "fig3e_tw1":
            band = d.n >= 2**8
            out.append(check("fig3e max |y - mean| for n >= 2^8", np.abs(d.y[band] - mean).max(), 0.1))
    for M in (1, 2):
        out.append(check(f"TW_{M} periodic part at n vs 2n", periodic_part_gap(M), 1e-9))
    ns = by["fig3e_tw1"].n
    pows = np.array([n for n in ns if n & (n - 1) == 0 and n >= 2**8])
    if len(pows):
        d = by["fig3e_tw1"]
        yv = d.y[np.isin(d.n, pows)]
        cf = cfm.tw1_closed_form(cfg.J)
        pred = cf.evaluate(pows) / pows
        out.append(check("fig3e at n = 2^p vs closed form at u = 0", np.abs(yv - pred).max(), 1e-3))
    if tmp is not None:
        tmp.cleanup()
    return out


SUITES = {
    "brown": suite_brown,
    "decomposition": suite_decomposition,
    "integer": suite_integer,
    "zeta": suite_zeta,
    "residues": suite_residues,
    "symbolic": suite_symbolic,
    "dgf": suite_dgf,
    "ts": suite_ts,
    "mdc": suite_mdc,
    "tw": suite_tw,
    "twm": suite_twm,
    "constants": suite_constants,
    "figures": suite_figures,
}

ALL_ORDER = ["integer", "zeta", "residues", "symbolic", "dgf", "constants", "ts", "ts2", "mdc", "tw", "twm", "figures"]


def run_suite(name: str, cfg: RunConfig, **kw) -> list[CheckResult]:
    if name == "all":
        out = []
        for n in ALL_ORDER:
            out += run_suite(n, cfg)
        return out
    if name == "ts2":
        return suite_ts(cfg, 2)
    return SUITES[name](cfg, **kw)
