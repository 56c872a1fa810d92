"""Period-1 Fourier series and the closed-form expressions built from them."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import AccuracyError

LN2 = math.log(2.0)
NEGLIGIBLE = 1e-13


def split_lg(n) -> tuple[int, float]:
    """lg n as (integer part, fractional part) with the fraction exact under n -> 2n.

    ``frexp`` gives n = m 2^e with m in [1/2, 1), so lg n = (e - 1) + lg(2m) and
    lg(2m) depends only on the mantissa.
    """
    m, e = math.frexp(float(n))
    return e - 1, math.log2(2.0 * m)


def lg(n) -> float:
    e, f = split_lg(n)
    return e + f


def fit_tail_bound(a: np.ndarray) -> tuple[float, float]:
    """Fit |a_j| <= C log^2 j j^(A-2) over the top three quarters of j; bound sum_{|j|>J} |a_j|.

    Returns (A, bound).  Raises when the fitted decay is too slow to sum.
    """
    J = len(a)
    mags = np.abs(a)
    if J == 0 or mags.max() <= NEGLIGIBLE:
        return (-math.inf, 0.0)
    j = np.arange(1, J + 1, dtype=float)
    lo = max(2, J // 4)
    sel = slice(lo - 1, J)
    jj, mm = j[sel], mags[sel]
    ok = mm > 0
    if ok.sum() < 3:
        return (-math.inf, 0.0)
    env = np.log(mm[ok]) - 2.0 * np.log(np.log(jj[ok]))
    slope = np.polyfit(np.log(jj[ok]), env, 1)[0]
    A = slope + 2.0
    if A >= 1.0:
        raise AccuracyError(f"Fourier coefficients decay too slowly (fitted A = {A:.3f} >= 1)")
    p = 2.0 - A
    C = float(np.max(mm / (np.log(jj) ** 2 * jj ** (A - 2.0))))
    L = math.log(J)
    q = p - 1.0
    integral = J ** (-q) * (L * L / q + 2 * L / q**2 + 2 / q**3)
    return (A, 2.0 * C * integral)


@dataclass
class FourierSeries1:
    """mean + sum_{0<|j|<=J} a_j e^{2 pi i j u}, with a_{-j} = conj(a_j)."""

    mean: float
    coeffs: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=complex))
    tail_bound: float = 0.0
    decay_exponent: float = -math.inf

    @classmethod
    def with_fitted_tail(cls, mean: float, coeffs) -> "FourierSeries1":
        coeffs = np.asarray(coeffs, dtype=complex)
        A, bound = fit_tail_bound(coeffs)
        return cls(float(mean), coeffs, bound, A)

    @classmethod
    def constant(cls, value: float) -> "FourierSeries1":
        return cls(float(value))

    @property
    def J(self) -> int:
        return len(self.coeffs)

    def is_constant(self) -> bool:
        return not np.any(np.abs(self.coeffs) > 0)

    def at_fraction(self, f) -> np.ndarray:
        """Values at fractional parts f in [0, 1)."""
        f = np.atleast_1d(np.asarray(f, dtype=float))
        if not self.J:
            return np.full(f.shape, self.mean)
        j = np.arange(1, self.J + 1)
        phase = np.exp(2j * np.pi * np.outer(f, j))
        return self.mean + 2.0 * (phase @ self.coeffs).real

    def __call__(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        return self.at_fraction(u - np.floor(u))

    def padded(self, J: int) -> np.ndarray:
        """a_1..a_J, zero beyond the stored coefficients."""
        out = np.zeros(J, dtype=complex)
        m = min(J, self.J)
        out[:m] = self.coeffs[:m]
        return out

    def truncated(self, J: int) -> "FourierSeries1":
        return FourierSeries1.with_fitted_tail(self.mean, self.coeffs[:J])

    def __add__(self, other: "FourierSeries1") -> "FourierSeries1":
        J = max(self.J, other.J)
        c = np.zeros(J, dtype=complex)
        c[: self.J] += self.coeffs
        c[: other.J] += other.coeffs
        return FourierSeries1(self.mean + other.mean, c, self.tail_bound + other.tail_bound,
                              max(self.decay_exponent, other.decay_exponent))

    def __neg__(self) -> "FourierSeries1":
        return FourierSeries1(-self.mean, -self.coeffs, self.tail_bound, self.decay_exponent)

    def __sub__(self, other: "FourierSeries1") -> "FourierSeries1":
        return self + (-other)

    def scaled(self, c: float) -> "FourierSeries1":
        return FourierSeries1(c * self.mean, c * self.coeffs, abs(c) * self.tail_bound, self.decay_exponent)


@dataclass
class ClosedFormExpr:
    """sum over (n_power, lg_power) of n^a lg^m n * F_{a,m}(lg n), plus a constant."""

    terms: dict[tuple[int, int], FourierSeries1] = field(default_factory=dict)
    constant: float = 0.0
    label: str = ""
    info: dict = field(default_factory=dict)

    def add_term(self, n_power: int, lg_power: int, series: FourierSeries1) -> None:
        key = (n_power, lg_power)
        self.terms[key] = self.terms[key] + series if key in self.terms else series

    def term(self, n_power: int, lg_power: int) -> FourierSeries1:
        return self.terms.get((n_power, lg_power), FourierSeries1.constant(0.0))

    def keys(self) -> list[tuple[int, int]]:
        return sorted(self.terms, reverse=True)

    def _parts(self, n) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        n = np.atleast_1d(np.asarray(n))
        split = [split_lg(int(x)) for x in n]
        e = np.array([p[0] for p in split], dtype=float)
        f = np.array([p[1] for p in split])
        return n.astype(float), e + f, f

    def evaluate(self, n) -> np.ndarray:
        nf, lgn, f = self._parts(n)
        total = np.full(nf.shape, self.constant)
        for (a, m), F in self.terms.items():
            total = total + nf**a * lgn**m * F.at_fraction(f)
        return total

    def periodic_values(self, n) -> dict[tuple[int, int], np.ndarray]:
        _, _, f = self._parts(n)
        return {k: F.at_fraction(f) for k, F in self.terms.items()}

    def tail_bound(self, n) -> np.ndarray:
        nf, lgn, _ = self._parts(n)
        total = np.zeros(nf.shape)
        for (a, m), F in self.terms.items():
            total = total + nf**a * np.abs(lgn) ** m * F.tail_bound
        return total
