"""Truncated Laurent series whose coefficients are polynomials in ``Λ = ln n``.

A series ``[m | a_m, a_{m+1}, ...]`` around a center ``c`` stands for
``sum_i a_{m+i} (s - c)^{m+i}``; each ``a_k`` is stored as a row of complex
coefficients of ``1, Λ, Λ², ...``.  Only the first ``T`` terms are known;
arithmetic propagates that truncation so a result never claims more terms
than its inputs support.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

ZERO_THRESHOLD = 1e-13


@dataclass
class LaurentSeries:
    center: complex
    order: int
    coeffs: np.ndarray  # shape (T, D): coeffs[i, r] multiplies (s-c)^(order+i) Λ^r

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.ndim == 1:
            c = c[:, None]
        self.coeffs = c

    @classmethod
    def from_scalars(cls, center, order, values) -> "LaurentSeries":
        return cls(center, order, np.asarray(values, dtype=complex)[:, None])

    @property
    def T(self) -> int:
        return self.coeffs.shape[0]

    @property
    def D(self) -> int:
        return self.coeffs.shape[1]

    def coefficient(self, k: int) -> np.ndarray:
        """Λ-polynomial coefficient of (s - center)^k."""
        i = k - self.order
        if i < 0:
            return np.zeros(self.D, dtype=complex)
        if i >= self.T:
            raise IndexError(f"exponent {k} beyond truncation (known below {self.order + self.T})")
        return self.coeffs[i]

    def is_zero(self) -> bool:
        return not np.any(self.coeffs)

    def normalized(self, threshold: float = ZERO_THRESHOLD) -> "LaurentSeries":
        """Drop leading terms that vanish to within ``threshold`` (relative)."""
        mags = np.abs(self.coeffs).max(axis=1)
        scale = mags.max() if mags.size else 0.0
        if scale == 0.0:
            return self
        lead = 0
        while lead < self.T - 1 and mags[lead] <= threshold * scale:
            lead += 1
        if lead == 0:
            return self
        return LaurentSeries(self.center, self.order + lead, self.coeffs[lead:].copy())

    def truncate(self, T: int) -> "LaurentSeries":
        return LaurentSeries(self.center, self.order, self.coeffs[:T].copy())

    def __mul__(self, other):
        if not isinstance(other, LaurentSeries):
            return LaurentSeries(self.center, self.order, self.coeffs * other)
        T = min(self.T, other.T)
        D = self.D + other.D - 1
        out = np.zeros((T, D), dtype=complex)
        a, b = self.coeffs, other.coeffs
        for i in range(T):
            ai = a[i]
            if not ai.any():
                continue
            for j in range(T - i):
                bj = b[j]
                if bj.any():
                    out[i + j] += np.convolve(ai, bj)
        return LaurentSeries(self.center, self.order + other.order, out)

    __rmul__ = __mul__

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        lo = min(self.order, other.order)
        hi = min(self.order + self.T, other.order + other.T)
        D = max(self.D, other.D)
        out = np.zeros((max(hi - lo, 0), D), dtype=complex)
        for s in (self, other):
            for i in range(s.T):
                k = s.order + i - lo
                if k < out.shape[0]:
                    out[k, : s.D] += s.coeffs[i]
        return LaurentSeries(self.center, lo, out)

    def __neg__(self):
        return self * -1.0

    def __sub__(self, other):
        return self + (-other)

    def __pow__(self, p: int) -> "LaurentSeries":
        if p < 0:
            return self.inverse() ** (-p)
        out = LaurentSeries.from_scalars(self.center, 0, np.r_[1.0, np.zeros(self.T - 1)])
        for _ in range(p):
            out = out * self
        return out

    def inverse(self) -> "LaurentSeries":
        """Reciprocal of a Λ-free series with nonzero leading coefficient."""
        s = self.normalized()
        if s.D != 1 and np.any(s.coeffs[:, 1:]):
            raise ValueError("only Λ-free series can be inverted")
        a = s.coeffs[:, 0]
        if a[0] == 0:
            raise ZeroDivisionError("inverse of a zero series")
        b = np.zeros(s.T, dtype=complex)
        b[0] = 1.0 / a[0]
        for k in range(1, s.T):
            b[k] = -np.dot(a[1: k + 1], b[k - 1:: -1][:k]) / a[0]
        return LaurentSeries.from_scalars(s.center, -s.order, b)

    def residue(self) -> np.ndarray:
        """Λ-polynomial coefficient of (s - center)^-1."""
        return self.coefficient(-1)


def geometric(center: complex, shift: complex, T: int) -> LaurentSeries:
    """Expansion of 1/(s + shift) around ``center`` to T terms."""
    w = center + shift
    if w == 0:
        return LaurentSeries.from_scalars(center, -1, np.r_[1.0, np.zeros(T - 1)])
    k = np.arange(T)
    return LaurentSeries.from_scalars(center, 0, (-1.0) ** k / w ** (k + 1))


def n_power(center: complex, T: int) -> LaurentSeries:
    """n^s / n^center = exp((s - center) Λ): Λ^i / i! at (s - center)^i."""
    c = np.zeros((T, T), dtype=complex)
    f = 1.0
    for i in range(T):
        if i:
            f /= i
        c[i, i] = f
    return LaurentSeries(center, 0, c)
