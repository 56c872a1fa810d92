"""Exact digital functions and divide-and-conquer cost sequences.

Every value here is an exact Python integer or :class:`fractions.Fraction`.
Scalar functions work for arbitrarily large ``n``; the ``*_array`` helpers
return numpy ``int64`` tables for bulk checks and raise if a table would
overflow.

Conventions: ``v(n)`` counts 1-bits, ``v2(n)`` counts trailing zeros,
``S_M`` weights bit ``t`` by the rising factorial ``t(t+1)...(t+M-1)``,
``W_M`` weights the ``t``-th set bit counted from the top by ``t**M``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .errors import CapabilityError, DomainError

M_CAP = 8
K_CAP = 6

_INT64_SAFE = 2**62


@dataclass(frozen=True)
class Bits:
    """Binary digits of a nonnegative integer, least significant first."""

    bits: tuple[int, ...]

    @classmethod
    def of(cls, n: int) -> "Bits":
        if n < 0:
            raise DomainError("Bits requires n >= 0")
        return cls(tuple((n >> t) & 1 for t in range(n.bit_length())))

    @property
    def value(self) -> int:
        return sum(b << t for t, b in enumerate(self.bits))

    def exponents(self) -> list[int]:
        """Exponents of the set bits in descending order (i_1 > i_2 > ...)."""
        return [t for t in range(len(self.bits) - 1, -1, -1) if self.bits[t]]


def _check_nonneg(n: int) -> None:
    if n < 0:
        raise DomainError(f"expected n >= 0, got {n}")


def _check_pos(n: int) -> None:
    if n < 1:
        raise DomainError(f"expected n >= 1, got {n}")


def _check_m(M: int, cap: int | None) -> None:
    cap = M_CAP if cap is None else cap
    if M < 0:
        raise DomainError(f"expected M >= 0, got {M}")
    if M > cap:
        raise CapabilityError(f"M={M} exceeds cap {cap}")


def rising(t: int, M: int) -> int:
    """Rising factorial t(t+1)...(t+M-1); 1 when M == 0."""
    out = 1
    for q in range(M):
        out *= t + q
    return out


def falling(k: int, i: int) -> int:
    out = 1
    for q in range(i):
        out *= k - q
    return out


def v(n: int) -> int:
    _check_nonneg(n)
    return bin(n).count("1")


def v2(n: int) -> int:
    if n < 1:
        raise DomainError("v2 is undefined at n <= 0")
    return (n & -n).bit_length() - 1


def s_m(n: int, M: int, cap: int | None = None) -> int:
    _check_nonneg(n)
    _check_m(M, cap)
    if M == 0:
        return n
    return sum(rising(t, M) << t for t in range(n.bit_length()) if (n >> t) & 1)


def w_m(n: int, M: int, cap: int | None = None) -> int:
    _check_nonneg(n)
    _check_m(M, cap)
    if M == 0:
        return n
    return sum(rank**M << i for rank, i in enumerate(Bits.of(n).exponents(), start=1))


def _bit_count_below(n: int, t: int) -> int:
    """Number of j in [0, n) with bit t set."""
    period = 1 << (t + 1)
    half = 1 << t
    return (n // period) * half + max(0, n % period - half)


def sum_s_m(n: int, M: int, cap: int | None = None) -> int:
    """Sum of S_M(j) over 0 <= j < n, in O(log n) operations."""
    _check_nonneg(n)
    _check_m(M, cap)
    if M == 0:
        return n * (n - 1) // 2
    return sum(rising(t, M) * (_bit_count_below(n, t) << t) for t in range(n.bit_length()))


class _WSums:
    """Prefix sums over j < n of W_q(j) and v(j)**q for q <= M.

    Splitting off the top bit (which takes rank 1 and pushes every other
    rank up by one) gives, for j < 2^i,
        W_q(2^i + j) = 2^i + sum_p C(q,p) W_p(j)    (W_0(j) = j)
        v(2^i + j)^q = sum_p C(q,p) v(j)^p,
    so both prefix-sum families recurse on the binary expansion of n.
    """

    def __init__(self, M: int):
        self.M = M
        self._cache: dict[int, tuple[tuple[int, ...], tuple[int, ...]]] = {0: ((0,) * (M + 1), (0,) * (M + 1))}

    def power_block(self, i: int):
        key = 1 << i
        if key in self._cache:
            return self._cache[key]
        M = self.M
        digit = tuple(sum(comb(i, c) * c**q for c in range(i + 1)) for q in range(M + 1))
        if i == 0:
            weighted = (0,) * (M + 1)
        else:
            # the block [0, 2^i) is [0, 2^(i-1)) followed by the same range shifted by 2^(i-1)
            _, w_half = self.power_block(i - 1)
            half = 1 << (i - 1)
            weighted = tuple(
                w_half[q] + half * half + sum(comb(q, p) * w_half[p] for p in range(q + 1))
                for q in range(M + 1)
            )
        self._cache[key] = (digit, weighted)
        return digit, weighted

    def __call__(self, n: int):
        if n in self._cache:
            return self._cache[n]
        M = self.M
        i = n.bit_length() - 1
        top = 1 << i
        d_top, w_top = self.power_block(i)
        r = n - top
        d_r, w_r = self(r)
        digit = tuple(d_top[q] + sum(comb(q, p) * d_r[p] for p in range(q + 1)) for q in range(M + 1))
        weighted = tuple(
            w_top[q] + r * top + sum(comb(q, p) * w_r[p] for p in range(q + 1))
            for q in range(M + 1)
        )
        self._cache[n] = (digit, weighted)
        return digit, weighted


def sum_w_m(n: int, M: int, cap: int | None = None) -> int:
    """Sum of W_M(j) over 0 <= j < n, in O(M^2 log n) operations."""
    _check_nonneg(n)
    _check_m(M, cap)
    return _WSums(M)(n)[1][M]


def sum_v_power(n: int, q: int) -> int:
    """Sum of v(j)**q over 0 <= j < n."""
    _check_nonneg(n)
    return _WSums(q)(n)[0][q]


def ts_m(n: int, M: int, cap: int | None = None) -> Fraction:
    _check_pos(n)
    return Fraction(sum_s_m(n, M, cap), n)


def tw_m(n: int, M: int, cap: int | None = None) -> Fraction:
    _check_pos(n)
    return Fraction(sum_w_m(n, M, cap), n)


def mdc_f(n: int, k: int, cap: int | None = None) -> int:
    """Exact solution f_n^k of the ECDF-k recurrence.

    f_1 = 0, f_n = f_floor(n/2) + f_ceil(n/2) + e_n with e_n = n - 1 for
    k = 2 and e_n = f_n^{k-1} + n - 1 above.
    """
    _check_pos(n)
    cap = K_CAP if cap is None else cap
    if k < 2:
        raise DomainError("mdc_f requires k >= 2")
    if k > cap:
        raise CapabilityError(f"k={k} exceeds cap {cap}")
    memo: dict[tuple[int, int], int] = {}

    def f(m: int, d: int) -> int:
        if m <= 1:
            return 0
        key = (m, d)
        hit = memo.get(key)
        if hit is not None:
            return hit
        cost = m - 1 if d == 2 else f(m, d - 1) + m - 1
        out = f(m // 2, d) + f((m + 1) // 2, d) + cost
        memo[key] = out
        return out

    return f(n, k)


def cw(n: int) -> int:
    """Worst-case bottom-up mergesort cost with merge cost n1 + n2."""
    _check_pos(n)
    total = 0
    # C_w(2^k + j) = C_w(2^k) + C_w(j) + 2^k + j unrolls over the set bits, top first
    while n & (n - 1):
        k = n.bit_length() - 1
        total += k * (1 << k) + n
        n -= 1 << k
    k = n.bit_length() - 1
    return total + k * (1 << k)


def tv(n: int) -> Fraction:
    """(1/n) * sum_{j=1..n} sum_{i<j} v(i), by the defining double sum."""
    _check_pos(n)
    inner = 0
    outer = 0
    for j in range(1, n + 1):
        outer += inner
        inner += v(j)
    return Fraction(outer, n)


def nabla(seq) -> np.ndarray:
    """Backward difference A(j) - A(j-1); entry 0 keeps A(0) (A(-1) read as 0)."""
    a = np.asarray(seq)
    out = a.copy()
    out[1:] = a[1:] - a[:-1]
    return out


def delta_nabla(seq) -> np.ndarray:
    """Double difference s_{n+1} - 2 s_n + s_{n-1} at positions 1..len-2.

    Entries 0 and len-1 are set to 0 (undefined there).
    """
    a = np.asarray(seq)
    out = np.zeros_like(a)
    out[1:-1] = a[2:] - 2 * a[1:-1] + a[:-2]
    return out


# ---------------------------------------------------------------- bulk tables


def _range(N: int) -> np.ndarray:
    if N < 0:
        raise DomainError("table size must be >= 0")
    return np.arange(N + 1, dtype=np.int64)


def v_array(N: int) -> np.ndarray:
    """v(n) for n = 0..N."""
    n = _range(N)
    out = np.zeros_like(n)
    for t in range(max(N, 1).bit_length()):
        out += (n >> t) & 1
    return out


def v2_array(N: int) -> np.ndarray:
    """v2(n) for n = 0..N; entry 0 is -1 as a sentinel (v2(0) is undefined)."""
    n = _range(N)
    out = np.full_like(n, -1)
    low = n & -n
    for t in range(max(N, 1).bit_length()):
        out[low == (1 << t)] = t
    return out


def _guard(bound: int, what: str) -> None:
    if bound >= _INT64_SAFE:
        raise CapabilityError(f"{what} table would overflow int64; use the scalar functions")


def s_m_array(N: int, M: int, cap: int | None = None) -> np.ndarray:
    _check_m(M, cap)
    B = max(N, 1).bit_length()
    if M:
        _guard(rising(B, M) << (B + 1), "S_M")
    n = _range(N)
    if M == 0:
        return n.copy()
    out = np.zeros_like(n)
    for t in range(B):
        out += rising(t, M) * (n & (1 << t))
    return out


def w_m_array(N: int, M: int, cap: int | None = None) -> np.ndarray:
    _check_m(M, cap)
    B = max(N, 1).bit_length()
    if M:
        _guard(B**M << (B + 1), "W_M")
    n = _range(N)
    if M == 0:
        return n.copy()
    out = np.zeros_like(n)
    for t in range(B):
        rank = v_array_from(n >> t)
        out += (n & (1 << t)) * rank**M
    return out


def v_array_from(values: np.ndarray) -> np.ndarray:
    out = np.zeros_like(values)
    top = int(values.max()) if values.size else 0
    for t in range(max(top, 1).bit_length()):
        out += (values >> t) & 1
    return out


def prefix_exclusive(a: np.ndarray) -> np.ndarray:
    """out[n] = sum_{j<n} a[j] for n = 0..len(a)-1."""
    out = np.zeros_like(a)
    np.cumsum(a[:-1], out=out[1:])
    return out


def mdc_f_array(N: int, k: int, cap: int | None = None) -> np.ndarray:
    """f_n^k for n = 0..N (f_0 := 0), filled one dyadic block at a time."""
    cap = K_CAP if cap is None else cap
    if k < 2 or k > cap:
        raise CapabilityError(f"k={k} outside [2, {cap}]")
    B = max(N, 1).bit_length()
    _guard((B + 1) ** (k - 1) << (B + 1), "f^k")
    n = _range(N)
    prev = None
    for d in range(2, k + 1):
        f = np.zeros_like(n)
        e = n - 1 if d == 2 else prev + n - 1
        e[:2] = 0
        lo = 1
        # block (lo, 2 lo] only reads f at indices <= lo, already filled
        while lo < N:
            hi = min(2 * lo, N)
            idx = n[lo + 1: hi + 1]
            f[lo + 1: hi + 1] = f[idx // 2] + f[(idx + 1) // 2] + e[lo + 1: hi + 1]
            lo = hi
        prev = f
    return prev


def cw_array(N: int) -> np.ndarray:
    """C_w(n) for n = 0..N (C_w(0) := 0), by the power-of-two split recurrence."""
    n = _range(N)
    B = max(N, 1).bit_length()
    _guard(B << (B + 1), "C_w")
    out = np.zeros_like(n)
    for k in range(B):
        top = 1 << k
        if top > N:
            break
        out[top] = k * top
        hi = min(2 * top - 1, N)
        if hi > top:
            idx = n[top + 1: hi + 1]
            out[top + 1: hi + 1] = out[top] + out[idx - top] + idx
    return out
