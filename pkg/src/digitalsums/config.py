"""Run parameters, with DIGITALSUMS_* environment overrides."""

from __future__ import annotations

import os
from dataclasses import dataclass, field, fields
from pathlib import Path

ENV_PREFIX = "DIGITALSUMS_"


@dataclass
class RunConfig:
    J: int = 2000  # Fourier truncation for TS, f^k, TW_1
    J_twm: int = 50  # truncation for TW_M via B_M
    J_ratio: int = 8000  # second truncation for the TS_1 convergence check (0 disables)
    N: int = 100_000  # partial-sum length and recurrence range
    N_int: int = 1_000_000  # range of the integer checks
    M_max: int = 3
    k_max: int = 6
    sample: int = 200  # closed-form comparison points
    fig_lg_max: int = 20
    per_period: int = 512
    out: Path = Path("out")
    tolerances: dict[str, float] = field(default_factory=dict)

    def tol(self, name: str, default: float) -> float:
        return self.tolerances.get(name, default)

    @classmethod
    def from_env(cls, environ=None, **overrides) -> "RunConfig":
        environ = os.environ if environ is None else environ
        cfg = cls()
        for f in fields(cls):
            key = ENV_PREFIX + f.name.upper()
            if f.name == "tolerances" or key not in environ:
                continue
            raw = environ[key]
            setattr(cfg, f.name, Path(raw) if f.name == "out" else int(raw))
        for key, raw in environ.items():
            if key.startswith(ENV_PREFIX + "TOL_"):
                cfg.tolerances[key[len(ENV_PREFIX) + 4 :].lower()] = float(raw)
        for k, v in overrides.items():
            if v is not None:
                setattr(cfg, k, v)
        return cfg
