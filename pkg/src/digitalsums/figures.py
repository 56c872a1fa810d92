"""Data behind the three figure panels, sampled on dyadic grids.

Points are n = b * 2^p with b running over one base period, so every
sampled n > the base period also has n/2 sampled and the period-1
structure in lg n can be checked directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import digits
from .fourier import lg

PER_PERIOD = 512


@dataclass
class FigureData:
    name: str
    caption: str
    n: np.ndarray
    y: np.ndarray

    @property
    def lg_n(self) -> np.ndarray:
        return np.array([lg(int(x)) for x in self.n])


def dyadic_grid(lg_min: int = 1, lg_max: int = 20, per_period: int = PER_PERIOD) -> np.ndarray:
    """Integers in [2^lg_min, 2^lg_max] about ``per_period`` per unit of lg n, closed under doubling."""
    base_e = max(lg_min, int(math.ceil(math.log2(per_period))))
    out = [np.arange(2**e, 2 ** (e + 1)) for e in range(lg_min, min(base_e, lg_max))]
    if base_e < lg_max:
        b = np.unique(np.round(2.0 ** (base_e + np.arange(per_period) / per_period)).astype(np.int64))
        for p in range(lg_max - base_e):
            out.append(b << p)
    out.append(np.array([2**lg_max]))
    return np.unique(np.concatenate(out))


def _frac(values) -> np.ndarray:
    return np.array([float(x) for x in values])


def figure1(ns: np.ndarray, M: int) -> FigureData:
    y = []
    for n in ns:
        n = int(n)
        L = math.log2(n)
        y.append((digits.s_m(n, M) - n * L**M) / (n * L ** (M - 1)))
    return FigureData(f"fig1_M{M}", f"(S_{M}(n) - n lg^{M} n)/(n lg^{M - 1} n)", ns, np.array(y))


def figure2(ns: np.ndarray, M: int) -> FigureData:
    y = _frac(digits.w_m(int(n), M) for n in ns) / ns
    return FigureData(f"fig2_M{M}", f"W_{M}(n)/n", ns, y)


def figure3(ns: np.ndarray, panel: str) -> FigureData:
    L = np.log2(ns.astype(float))
    nf = ns.astype(float)
    if panel == "a":
        f = _frac(digits.mdc_f(int(n), 3) for n in ns)
        return FigureData("fig3a_f3", "(f^3_n - n lg^2 n / 2)/(n lg n)", ns, (f - 0.5 * nf * L**2) / (nf * L))
    if panel == "b":
        f = _frac(digits.mdc_f(int(n), 4) for n in ns)
        return FigureData("fig3b_f4", "(f^4_n - n lg^3 n / 6)/(n lg^2 n)", ns, (f - nf * L**3 / 6) / (nf * L**2))
    if panel == "c":
        t = _frac(digits.ts_m(int(n), 1) for n in ns)
        return FigureData("fig3c_ts1", "(TS_1(n) - n lg n / 2)/n", ns, (t - 0.5 * nf * L) / nf)
    if panel == "d":
        t = _frac(digits.ts_m(int(n), 2) for n in ns)
        return FigureData("fig3d_ts2", "(TS_2(n) - n lg^2 n / 2)/(n lg n)", ns, (t - 0.5 * nf * L**2) / (nf * L))
    if panel == "e":
        t = _frac(digits.tw_m(int(n), 1) for n in ns)
        return FigureData("fig3e_tw1", "TW_1(n)/n", ns, t / nf)
    if panel == "f":
        t = _frac(digits.tw_m(int(n), 2) for n in ns)
        return FigureData("fig3f_tw2", "TW_2(n)/n", ns, t / nf)
    raise ValueError(f"unknown panel {panel!r}")


def figure_datasets(which=(1, 2, 3), lg_min: int = 1, lg_max: int = 20, per_period: int = PER_PERIOD) -> list[FigureData]:
    ns = dyadic_grid(lg_min, lg_max, per_period)
    out = []
    if 1 in which:
        out += [figure1(ns, 1), figure1(ns, 2)]
    if 2 in which:
        out += [figure2(ns, 1), figure2(ns, 2)]
    if 3 in which:
        out += [figure3(ns, p) for p in "abcdef"]
    return out


def write_csv(data: FigureData, directory: Path) -> Path:
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / f"{data.name}.csv"
    with open(path, "w", newline="\n") as fh:
        fh.write("n,lg_n,y\n")
        for n, L, y in zip(data.n, data.lg_n, data.y):
            fh.write(f"{int(n)},{L:.17g},{y:.17g}\n")
    return path
