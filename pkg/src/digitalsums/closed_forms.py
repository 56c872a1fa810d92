"""Exact Fourier-series formulas for the four averaged sequences.

Each formula is a sum of residues of  DGF(s) n^s / (s(s+1)...) :

- f^k_n       = n * residues of D_{f_k}(s) n^s/(s(s+1))  on Re s = 0 and at s = -1
- TS_M(n)     = residues of A_M(s) n^s/(s(s+1))          on Re s = 1 and at s = 0
- TW_1(n)     = three zeta-only kernels (see ``tw1_closed_form``)
- TW_M(n)     = residues of B_M(s) n^s/(s(s+1))          on Re s = 1 and Re s = 0
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import digits
from .dgf import RatFunc2s, build_bm, dgf_am
from .errors import CapabilityError, DomainError
from .fourier import ClosedFormExpr, FourierSeries1
from .residues import OMEGA, Kernel, Pole, residue, sum_over_line
from .specfun import EULER_GAMMA, LN2, LNPI, zeta_many

J_DEFAULT = 2000
J_TWM = 50
M_MAX = 3


def _add_line(cf: ClosedFormExpr, line, n_power: int, scale: float = 1.0) -> None:
    for r, F in line.fourier().items():
        if F.mean != 0.0 or F.J and np.any(F.coeffs):
            cf.add_term(n_power, r, F.scaled(scale))


# ------------------------------------------------------------ MDC


@lru_cache(maxsize=None)
def _mdc_increment(d: int, J: int):
    """Line and s=-1 contributions of x^d/(x-1)^d n^s/(s(s+1)) (times n)."""
    K = Kernel.single("one", RatFunc2s.monomial(1, x_pow=d, pm1=-d), label=f"mdc d={d}")
    line = sum_over_line(K, 0, J)
    at_m1 = residue(K, Pole(-1, 0))
    return line, complex(at_m1.coeffs[0])


@lru_cache(maxsize=None)
def mdc_closed_form(k: int, J: int = J_DEFAULT) -> ClosedFormExpr:
    """f^k_n = n lg^{k-1} n/(k-1)! + sum_m n lg^m n A^k_m(lg n) + c_k."""
    if not 2 <= k <= digits.K_CAP:
        raise CapabilityError(f"k={k} outside 2..{digits.K_CAP}")
    cf = ClosedFormExpr(label=f"mdc k={k}")
    constants = []
    c = 0.0
    for d in range(1, k):
        line, r_m1 = _mdc_increment(d, J)
        _add_line(cf, line, 1)
        c += r_m1.real  # residue ~ n^-1, times n
        constants.append(c)
    cf.constant = c
    cf.info = {"c_k": constants[-1], "c_history": constants}
    return cf


# ------------------------------------------------------------ TS_M


@lru_cache(maxsize=None)
def ts_closed_form(M: int, J: int = J_DEFAULT) -> ClosedFormExpr:
    """TS_M(n) = n lg^M n / 2 + sum_d n lg^d n F_{M,d}(lg n) + (-1)^(M+1) M!."""
    if not 1 <= M <= 4:
        raise CapabilityError("TS_M closed form is provided for 1 <= M <= 4")
    K = Kernel(dgf_am(M), label=f"ts M={M}")
    cf = ClosedFormExpr(label=f"ts M={M}")
    _add_line(cf, sum_over_line(K, 1, J), 1)
    at0 = residue(K, Pole(0, 0))
    cf.constant = at0.coeffs[0].real
    cf.info = {"residue_s0": at0.coeffs[0].real / math.factorial(M)}
    return cf


# ------------------------------------------------------------ TW_1


def _tw1_kernels():
    xm2_over_xm1 = RatFunc2s.monomial(1, pm1=-1, pm2=1)
    k1 = Kernel.single("zeta", xm2_over_xm1, shifts=(0, 1, 2), label="first")
    k2 = Kernel.single("zeta", xm2_over_xm1, shifts=(0, 1), label="second")
    k3 = Kernel.single("zeta", RatFunc2s.monomial(1, pm1=-1, pm2=-1), shifts=(0, 1), label="third")
    return k1, k2, k3


@dataclass
class TW1Parts:
    H1: FourierSeries1
    H2: FourierSeries1
    H31: FourierSeries1
    H32: FourierSeries1
    first_lg: float
    first_const: float
    second_lg: float
    third_n_lg: float
    third_lg: float


@lru_cache(maxsize=None)
def tw1_parts(J: int = J_DEFAULT) -> TW1Parts:
    """The three integrals evaluated by residues, split into their named pieces."""
    k1, k2, k3 = _tw1_kernels()
    first = sum_over_line(k1, 0, J).fourier()
    first_m1 = residue(k1, Pole(-1, 0)).coeffs[0].real
    second = sum_over_line(k2, 0, J).fourier()
    third1 = sum_over_line(k3, 1, J).fourier()
    third0 = sum_over_line(k3, 0, J).fourier()
    return TW1Parts(
        H1=first[0],
        H2=second[0].scaled(0.5),
        H31=third0[0],
        H32=third1[0],
        first_lg=first[1].mean,
        first_const=first_m1,
        second_lg=0.5 * second[1].mean,
        third_n_lg=third1[1].mean,
        third_lg=third0[1].mean,
    )


@lru_cache(maxsize=None)
def tw1_closed_form(J: int = J_DEFAULT) -> ClosedFormExpr:
    """TW_1(n) = n F_{W,1}(lg n) - lg n / 4 + F_{W,0}(lg n).

    Built as first + second/2 - third, where the kernels are
    (x-2)/(x-1) zeta n^{s+1}/(s(s+1)(s+2)), (x-2)/(x-1) zeta n^s/(s(s+1)) and
    zeta/((x-1)(x-2)) n^s/(s(s+1)).
    """
    p = tw1_parts(J)
    cf = ClosedFormExpr(label="tw M=1")
    # n lg n terms cancel between the first and third integrals
    lead = p.first_lg - p.third_n_lg
    if abs(lead) > 1e-12:
        cf.add_term(1, 1, FourierSeries1.constant(lead))
    cf.add_term(1, 0, p.H1 - p.H32)
    cf.add_term(0, 1, FourierSeries1.constant(p.second_lg - p.third_lg))
    cf.add_term(0, 0, p.H2 - p.H31 + FourierSeries1.constant(p.first_const))
    cf.info = {"n_lg_coefficient": lead, "first_constant": p.first_const}
    return cf


def tw1_reference_series(J: int) -> tuple[FourierSeries1, FourierSeries1]:
    """F_{W,1}, F_{W,0} from their explicit zeta-value coefficients."""
    j = np.arange(1, J + 1)
    beta = 1j * OMEGA * j
    alpha = 1.0 + beta
    zb, za = zeta_many(beta), zeta_many(alpha)
    fw1 = -(2 * zb / (beta * (beta + 1) * (beta + 2)) + za / (alpha * (alpha + 1))) / (2 * LN2)
    fw0 = zb / (beta * (beta + 1)) / (2 * LN2)
    return (
        FourierSeries1.with_fitted_tail(TW1_CONSTANTS["F_W1"], fw1),
        FourierSeries1.with_fitted_tail(TW1_CONSTANTS["F_W0"], fw0),
    )


# ------------------------------------------------------------ TW_M


@lru_cache(maxsize=None)
def twm_closed_form(M: int, J: int = J_TWM, cap: int = M_MAX) -> ClosedFormExpr:
    """TW_M(n) = n G_M(lg n) + d_M lg^M n + sum_{d<M} lg^d n G_{M,d}(lg n)."""
    if M < 1:
        raise DomainError("M must be >= 1")
    if M > cap:
        raise CapabilityError(f"M={M} exceeds configured maximum {cap}")
    K = Kernel(build_bm(M, cap=cap), label=f"tw M={M}")
    cf = ClosedFormExpr(label=f"tw M={M}")
    upper = sum_over_line(K, 1, J)
    lower = sum_over_line(K, 0, J)
    _add_line(cf, upper, 1)
    _add_line(cf, lower, 0)
    dM = cf.term(0, M).mean
    cf.info = {
        "d_M": dM,
        "d_M_error": max(1e-12, abs(lower.table[0, M].imag)),
        "upper_imag": upper.mean_imag(),
        "lower_imag": lower.mean_imag(),
    }
    return cf


# ------------------------------------------------------------ constants


def f_mean_exact(M: int) -> float:
    """M/(4 ln 2) [2 gamma_0 - 3 + (M-2) ln 2]."""
    return M / (4 * LN2) * (2 * EULER_GAMMA - 3 + (M - 2) * LN2)


def f_mean_approx(M: int) -> float:
    """The printed decimal approximation M^2/4 - 0.915648 M."""
    return M * M / 4 - 0.915648 * M


def a_mean_exact(k: int) -> float:
    """(1/(k-2)!) ((k+1)/2 - 1/ln 2)."""
    return ((k + 1) / 2 - 1 / LN2) / math.factorial(k - 2)


TW1_CONSTANTS = {
    "F_W1": (LNPI - EULER_GAMMA + 2 * LN2) / (4 * LN2),
    "F_W0": (2 - 2 * LNPI - 5 * LN2) / (8 * LN2),
    "H1": (2 * LNPI - LN2 - 3) / (8 * LN2),
    "H2": (2 * LNPI - LN2 - 2) / (8 * LN2),
    "H31": (2 * LNPI + 3 * LN2 - 2) / (4 * LN2),
    "H32": (2 * EULER_GAMMA - 3 - 5 * LN2) / (8 * LN2),
}

A0_MEAN = 0.5 - 1 / LN2


# ------------------------------------------------------------ comparison


def eval_closed_form(cf: ClosedFormExpr, n) -> np.ndarray:
    n_arr = np.atleast_1d(np.asarray(n))
    if np.any(n_arr < 2):
        raise DomainError("closed forms are evaluated for n >= 2")
    return cf.evaluate(n_arr)


def log_sample(lo: int, hi: int, count: int) -> np.ndarray:
    """About ``count`` distinct integers spread evenly in lg n over [lo, hi]."""
    m = count
    while True:
        ns = np.unique(np.round(np.geomspace(lo, hi, m)).astype(np.int64))
        if len(ns) >= count or m > 50 * count:
            return ns
        m += 1


def scale_ts(M: int):
    return lambda n: n * np.log2(n) ** (M - 1)


def scale_mdc(k: int):
    return lambda n: n * np.log2(n) ** (k - 2)


def scale_tw(n):
    return np.asarray(n, dtype=float)


@dataclass
class Comparison:
    max_deviation: float
    worst_n: int
    deviations: np.ndarray
    bound: np.ndarray

    @property
    def max_bound(self) -> float:
        return float(self.bound.max())


def compare_exact(cf: ClosedFormExpr, exact_fn, sample, scale) -> Comparison:
    """max_n |cf(n) - exact(n)| / scale(n) over the sample."""
    ns = np.asarray(sample, dtype=np.int64)
    approx = eval_closed_form(cf, ns)
    exact = np.array([float(exact_fn(int(n))) for n in ns])
    sc = np.asarray(scale(ns.astype(float)), dtype=float)
    dev = np.abs(approx - exact) / sc
    i = int(np.argmax(dev))
    return Comparison(float(dev[i]), int(ns[i]), dev, cf.tail_bound(ns) / sc)
