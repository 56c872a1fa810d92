"""Residues of  R(2^s) * base(s) * n^s / prod(s + a)  and their sums along pole lines.

A pole sits at sigma + 2 pi i j / ln 2.  Since 2^s takes the same value 2^sigma
at every pole of a line, the rational factor's local expansion is shared by
the whole line; only the transcendental factor (zeta or I_k) and the
polynomial denominators change with j.

The coefficient ring is polynomials in Λ = ln n.  Results are reported in
powers of lg n (Λ^r = ln^r 2 lg^r n) times n^sigma e^(2 pi i j lg n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .dgf import DgfExpr, RatFunc2s, ir_taylor, ir_values
from .errors import DomainError
from .fourier import ClosedFormExpr, FourierSeries1
from .laurent import LaurentSeries, geometric, n_power
from .specfun import LN2, taylor_from_samples, zeta_laurent_at_1, zeta_many, zeta_taylor

DEFAULT_EXTRA = 4
OMEGA = 2.0 * math.pi / LN2


@dataclass(frozen=True)
class Pole:
    sigma: int
    j: int = 0

    @property
    def center(self) -> complex:
        return complex(self.sigma, OMEGA * self.j)


@dataclass
class Kernel:
    """expr(s) * n^s / prod_a (s + a)."""

    expr: DgfExpr
    shifts: tuple[int, ...] = (0, 1)
    label: str = ""

    @classmethod
    def single(cls, base: str, r: RatFunc2s, shifts=(0, 1), label: str = "") -> "Kernel":
        return cls(DgfExpr.of(base, r), tuple(shifts), label)

    def scaled(self, c) -> "Kernel":
        return Kernel(self.expr * c, self.shifts, self.label)


@dataclass
class ResidueTerm:
    """Residue at one pole: n^sigma e^(2 pi i j lg n) * sum_r coeffs[r] lg^r n."""

    sigma: int
    j: int
    coeffs: np.ndarray
    order: int = 0

    def value(self, n: float) -> complex:
        lgn = math.log2(n)
        poly = sum(c * lgn**r for r, c in enumerate(self.coeffs))
        return n**self.sigma * np.exp(2j * math.pi * self.j * lgn) * poly


# ------------------------------------------------------------ orders


def rational_order(r: RatFunc2s, sigma: int) -> int:
    """Order of r(2^s) at any pole of the sigma line (negative for a pole)."""
    x0 = Fraction(2) ** sigma
    num, m = r.num, 0
    while num(x0) == 0:
        num = num.div_linear(x0)
        m += 1
    e = {Fraction(0): r.a, Fraction(1): r.b, Fraction(2): r.c}.get(x0, 0)
    return m - e


def base_order(base: str, pole: Pole) -> int:
    if base == "zeta":
        return -1 if (pole.sigma == 1 and pole.j == 0) else 0
    if base.startswith("I") and pole.sigma <= -1:
        raise DomainError("I_k is only continued to Re(s) > -3/4")
    return 0


def shift_order(a: int, pole: Pole) -> int:
    return -1 if (pole.j == 0 and pole.sigma == -a) else 0


def pole_order(base: str, r: RatFunc2s, shifts, pole: Pole) -> int:
    """Total pole order of one kernel term (<= 0 means analytic there)."""
    total = rational_order(r, pole.sigma) + base_order(base, pole)
    total += sum(shift_order(a, pole) for a in shifts)
    return -total


# ------------------------------------------------------------ expansions


@lru_cache(maxsize=4096)
def _rat_laurent(r: RatFunc2s, sigma: int, T: int) -> LaurentSeries:
    return r.laurent(sigma, T)


def _relabel(ls: LaurentSeries, center: complex) -> LaurentSeries:
    return LaurentSeries(center, ls.order, ls.coeffs)


def _base_series(base: str, pole: Pole, T: int, data: np.ndarray | None = None) -> LaurentSeries:
    c = pole.center
    if base == "one":
        return LaurentSeries.from_scalars(c, 0, np.r_[1.0, np.zeros(T - 1)])
    if data is not None:
        return LaurentSeries.from_scalars(c, 0, data[:T])
    if base == "zeta":
        if pole.sigma == 1 and pole.j == 0:
            return zeta_laurent_at_1(T - 1)
        return LaurentSeries.from_scalars(c, 0, zeta_taylor(c, T))
    k = int(base[1:])
    if T == 1:
        return LaurentSeries.from_scalars(c, 0, ir_values(k, [c])[0, k : k + 1])
    return LaurentSeries.from_scalars(c, 0, ir_taylor(k, [c], T)[0, k])


def expand_factor(factor, pole: Pole, T: int) -> LaurentSeries:
    """Local expansion of one factor: "n^s", ("shift", a), RatFunc2s, "zeta", "I<k>".

    The n^s expansion omits the overall n^center, which ResidueTerm carries.
    """
    c = pole.center
    if isinstance(factor, RatFunc2s):
        return _relabel(_rat_laurent(factor, pole.sigma, T), c)
    if factor == "n^s":
        return n_power(c, T)
    if isinstance(factor, tuple) and factor[0] == "shift":
        return geometric(c, factor[1], T)
    if isinstance(factor, str) and (factor == "zeta" or factor.startswith("I") or factor == "one"):
        return _base_series(factor, pole, T)
    raise DomainError(f"unsupported factor {factor!r}")


def _term_residue(base: str, r: RatFunc2s, shifts, pole: Pole, extra: int,
                  data: np.ndarray | None = None) -> np.ndarray:
    """Λ-polynomial residue of one kernel term."""
    P = pole_order(base, r, shifts, pole)
    if P <= 0:
        return np.zeros(1, dtype=complex)
    T = P + extra
    s = _relabel(_rat_laurent(r, pole.sigma, T), pole.center)
    s = s * n_power(pole.center, T)
    for a in shifts:
        s = s * geometric(pole.center, a, T)
    if base != "one":
        # the transcendental factor only needs the P terms the residue reads
        s = s * _base_series(base, pole, P, data)
    return s.residue()


def _to_lg(lam: np.ndarray) -> np.ndarray:
    return lam * LN2 ** np.arange(len(lam))


def residue(kernel: Kernel, pole: Pole, extra: int = DEFAULT_EXTRA) -> ResidueTerm:
    """Residue of the kernel at one pole, as a polynomial in lg n."""
    total = np.zeros(1, dtype=complex)
    order = 0
    for base, r in kernel.expr.terms.items():
        res = _term_residue(base, r, kernel.shifts, pole, extra)
        order = max(order, pole_order(base, r, kernel.shifts, pole))
        total = _padd(total, res)
    return ResidueTerm(pole.sigma, pole.j, _to_lg(total), order)


def _padd(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = max(len(a), len(b))
    out = np.zeros(n, dtype=complex)
    out[: len(a)] += a
    out[: len(b)] += b
    return out


# ------------------------------------------------------------ lines


@dataclass
class LineSum:
    """Residues on one pole line: table[j, r] multiplies n^sigma lg^r n e^(2 pi i j lg n)."""

    sigma: int
    table: np.ndarray
    labels: list[str] = field(default_factory=list)

    @property
    def J(self) -> int:
        return self.table.shape[0] - 1

    def mean_imag(self) -> float:
        return float(np.abs(self.table[0].imag).max())

    def fourier(self) -> dict[int, FourierSeries1]:
        out = {}
        for r in range(self.table.shape[1]):
            out[r] = FourierSeries1.with_fitted_tail(self.table[0, r].real, self.table[1:, r])
        return out

    def closed_form(self) -> ClosedFormExpr:
        cf = ClosedFormExpr()
        for r, F in self.fourier().items():
            cf.add_term(self.sigma, r, F)
        return cf


def _line_data(bases, sigma: int, J: int, T: int) -> dict[str, np.ndarray]:
    """Taylor data (J, T) of each transcendental base at poles j = 1..J."""
    centers = sigma + 1j * OMEGA * np.arange(1, J + 1)
    out = {}
    if "zeta" in bases:
        if T == 1:
            out["zeta"] = zeta_many(centers)[:, None]
        else:
            nodes, radius = 32, 0.25
            ring = radius * np.exp(2j * np.pi * np.arange(nodes) / nodes)
            samples = zeta_many(centers[:, None] + ring[None, :])
            out["zeta"] = taylor_from_samples(samples, radius, T)
    ks = [int(b[1:]) for b in bases if b.startswith("I")]
    if ks:
        kmax = max(ks)
        if T == 1:
            vals = ir_values(kmax, centers)[:, :, None]
        else:
            vals = ir_taylor(kmax, centers, T)
        for k in ks:
            out[f"I{k}"] = vals[:, k, :]
    return out


def sum_over_line(kernel: Kernel, sigma: int, J: int, include_zero: bool = True,
                  extra: int = DEFAULT_EXTRA) -> LineSum:
    """Residues at sigma + 2 pi i j / ln 2 for 0 <= j <= J (j < 0 by conjugation)."""
    rows = [np.zeros(1, dtype=complex) for _ in range(J + 1)]
    if include_zero:
        rows[0] = residue(kernel, Pole(sigma, 0), extra).coeffs
    if J >= 1:
        probe = Pole(sigma, 1)
        orders = {b: pole_order(b, r, kernel.shifts, probe) for b, r in kernel.expr.terms.items()}
        live = [b for b, P in orders.items() if P > 0]
        trans = [b for b in live if b != "one"]
        T = max([orders[b] for b in trans], default=1)
        data = _line_data(trans, sigma, J, T) if trans else {}
        for j in range(1, J + 1):
            pole = Pole(sigma, j)
            acc = np.zeros(1, dtype=complex)
            for b in live:
                d = data[b][j - 1] if b in data else None
                acc = _padd(acc, _term_residue(b, kernel.expr.terms[b], kernel.shifts, pole, extra, d))
            rows[j] = _to_lg(acc)
    D = max(len(r) for r in rows)
    table = np.zeros((J + 1, D), dtype=complex)
    for j, r in enumerate(rows):
        table[j, : len(r)] = r
    return LineSum(sigma, table, [kernel.label])
