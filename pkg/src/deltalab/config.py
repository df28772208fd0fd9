"""Run configuration: one dataclass per suite, loadable from TOML and validated before use."""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import tomli

DEFAULT_SEED = 42


class ConfigError(ValueError):
    """Unknown key, wrong type or out-of-range value in a run configuration."""


@dataclass
class DeltaConfig:
    t: float = 1000.0
    N: float = 200.0
    K: float = 50.0
    p: int = 43
    cases: int = 50
    eps: float = 0.1
    small_p: int = 3
    off_diag_max: float = 1e-6
    tol: float = 1e-12


@dataclass
class VoronoiConfig:
    c_max: int = 50
    n_values: tuple = (300, 1000)
    count: int = 24
    max_rel_gap: float = 1e-6
    tol: float = 1e-8


@dataclass
class PoissonConfig:
    exact_p: int = 7
    exact_N: float = 50.0
    exact_residues: tuple = (1, 2, 5, 6)
    exact_max_gap: float = 1e-8
    cases: tuple = ((1000.0, 200.0, 50.0, 43), (1000.0, 100.0, 50.0, 23))
    v_values: tuple = (0.0, 80.0)
    max_gap: float = 1e-4
    max_outside_share: float = 1e-6


@dataclass
class ChainConfig:
    ladder: tuple = (400.0, 800.0, 1600.0)
    n_exp: float = 0.9
    k_exp: float = 0.7
    margin: float = 10.0
    resolution: float = 1.0
    p_doublings: int = 2


@dataclass
class PhaseConfig:
    doublings: int = 3
    max_residual_fraction: float = 0.1
    vor_X: float = 100.0
    vor_A: float = 1.0
    vor_C: float = 0.002
    vor_c: int = 2
    vor_n_lo: int = 16
    vor_n_hi: int = 32
    tol: float = 1e-11


@dataclass
class DiophConfig:
    census: tuple = (1000.0, 200.0, 100.0, 101)
    counts: tuple = (400.0, 100.0, 50.0, 53)
    proximity: tuple = (30, 30, 1e-3)
    c_max: float = 16.0
    census_c_max: float = 8.0
    proximity_c_max: float = 4.0
    budget: int = 10 ** 8


@dataclass
class VdcConfig:
    log_t: float = 1e4
    log_n_exp: float = 0.65
    cubic_t: float = 1e4
    draws: int = 20
    max_ratio: float = 8.0
    gauss_primes: int = 20
    gauss_tol: float = 1e-9


@dataclass
class LfuncConfig:
    form: str = "eisenstein"
    t_min: float = 10.0
    t_max: float = 1000.0
    step: float = 0.25
    zeros: int = 5
    zero_tol: float = 1e-3
    symmetry_points: int = 100


@dataclass
class RunConfig:
    seed: int = DEFAULT_SEED
    threads: int = 1
    out: str = "out"
    coeff_cache: Optional[str] = None
    delta: DeltaConfig = field(default_factory=DeltaConfig)
    voronoi: VoronoiConfig = field(default_factory=VoronoiConfig)
    poisson: PoissonConfig = field(default_factory=PoissonConfig)
    chain: ChainConfig = field(default_factory=ChainConfig)
    phase: PhaseConfig = field(default_factory=PhaseConfig)
    dioph: DiophConfig = field(default_factory=DiophConfig)
    vdc: VdcConfig = field(default_factory=VdcConfig)
    lfunc: LfuncConfig = field(default_factory=LfuncConfig)

    def validate(self) -> "RunConfig":
        if self.threads < 1:
            raise ConfigError("threads must be >= 1")
        for section in SECTIONS:
            _validate_positive(section, getattr(self, section))
        return self


SECTIONS = ("delta", "voronoi", "poisson", "chain", "phase", "dioph", "vdc", "lfunc")
# fields allowed to be zero or negative
_SIGNED = {"t_min", "exact_residues", "v_values", "cases"}


def _validate_positive(name: str, section) -> None:
    for f in dataclasses.fields(section):
        value = getattr(section, f.name)
        if f.name in _SIGNED or isinstance(value, str):
            continue
        flat = _flatten(value)
        if any(v <= 0 for v in flat):
            raise ConfigError(f"[{name}] {f.name} must be positive, got {value!r}")


def _flatten(value) -> list:
    if isinstance(value, (list, tuple)):
        out = []
        for v in value:
            out.extend(_flatten(v))
        return out
    if isinstance(value, bool) or value is None:
        return []
    return [value]


def _coerce(section_name: str, section, data: dict):
    known = {f.name: f for f in dataclasses.fields(section)}
    for key, value in data.items():
        if key not in known:
            raise ConfigError(f"unknown key [{section_name}] {key}")
        current = getattr(section, key)
        numeric = isinstance(current, (int, float)) and not isinstance(current, bool)
        if numeric and (isinstance(value, bool) or not isinstance(value, (int, float))):
            raise ConfigError(f"[{section_name}] {key} must be a number, got {value!r}")
        if isinstance(current, str) and not isinstance(value, str):
            raise ConfigError(f"[{section_name}] {key} must be a string, got {value!r}")
        if isinstance(current, tuple):
            value = tuple(tuple(v) if isinstance(v, list) else v for v in value)
        elif isinstance(current, bool) or not isinstance(value, (int, float)):
            pass
        elif isinstance(current, float):
            value = float(value)
        elif isinstance(current, int) and isinstance(value, float):
            raise ConfigError(f"[{section_name}] {key} must be an integer")
        setattr(section, key, value)


def from_dict(data: dict) -> RunConfig:
    cfg = RunConfig()
    top = {k: v for k, v in data.items() if not isinstance(v, dict)}
    _coerce("run", cfg, top)
    for key, value in data.items():
        if isinstance(value, dict):
            if key not in SECTIONS:
                raise ConfigError(f"unknown section [{key}]")
            _coerce(key, getattr(cfg, key), value)
    return cfg.validate()


def load(path) -> RunConfig:
    try:
        with open(Path(path), "rb") as fh:
            data = tomli.load(fh)
    except (OSError, tomli.TOMLDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return from_dict(data)


def as_dict(cfg: RunConfig) -> dict:
    return dataclasses.asdict(cfg)
