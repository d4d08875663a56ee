"""Run configuration for the CLI: one JSON file, validated, with defaults
that reproduce the reference verification setup exactly."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
import json
import math
import os
from typing import Optional

__all__ = ["Config", "ConfigError", "load_config", "resolve_threads", "THREADS_ENV"]

THREADS_ENV = "DUNKLWAVE_THREADS"


class ConfigError(ValueError):
    """A configuration file failed validation."""


@dataclass(frozen=True)
class ProfileConfig:
    kind: str = "power-gaussian"
    power: float = 4.0


@dataclass(frozen=True)
class Config:
    """Desk-scale defaults: radius 16, 64 panels of order 16, frequency grid
    equal to the position grid."""

    radius: float = 16.0
    panels: int = 64
    order: int = 16
    gammas: tuple = (0.0, 0.5, 1.2)
    alpha: float = 0.5
    beta: float = 1.5
    profile: ProfileConfig = field(default_factory=ProfileConfig)
    wavelet_profile: ProfileConfig = field(default_factory=lambda: ProfileConfig(power=2.0))
    window: tuple = (0.5, 4.0)
    inversion_window: tuple = (0.1, 16.0)
    per_decade: float = 64.0
    quad_order: int = 64
    threads: Optional[int] = None


def _expect(cond: bool, msg: str) -> None:
    if not cond:
        raise ConfigError(msg)


def _parse_profile(raw, key: str) -> ProfileConfig:
    _expect(isinstance(raw, dict), f"{key} must be an object")
    unknown = set(raw) - {"kind", "power"}
    _expect(not unknown, f"unknown {key} keys: {sorted(unknown)}")
    kind = raw.get("kind", "power-gaussian")
    _expect(kind == "power-gaussian", f"{key}.kind {kind!r} is not supported")
    _expect("power" in raw, f"{key}.power is required")
    power = raw["power"]
    _expect(isinstance(power, (int, float)) and not isinstance(power, bool),
            f"{key}.power must be a number")
    _expect(power > 0, f"{key}.power must be positive")
    return ProfileConfig(kind=kind, power=float(power))


def _parse_window(raw, key: str) -> tuple:
    _expect(isinstance(raw, (list, tuple)) and len(raw) == 2, f"{key} must be [eps, delta]")
    eps, delta = raw
    for v in (eps, delta):
        _expect(isinstance(v, (int, float)) and not isinstance(v, bool),
                f"{key} entries must be numbers")
    _expect(0.0 < eps < delta, f"{key} must satisfy 0 < eps < delta")
    return (float(eps), float(delta))


_NUMERIC = {
    "radius": (0.0, float),
    "per_decade": (0.0, float),
    "alpha": (-0.5, float),
    "beta": (-0.5, float),
}
_INTEGRAL = {"panels", "order", "quad_order"}


def load_config(path: Optional[str] = None) -> Config:
    """Load and validate a JSON config; None gives the defaults."""
    cfg = Config()
    if path is None:
        return cfg
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    _expect(isinstance(raw, dict), "config root must be a JSON object")
    known = {f for f in Config.__dataclass_fields__}
    unknown = set(raw) - known
    _expect(not unknown, f"unknown config keys: {sorted(unknown)}")
    updates = {}
    for key, value in raw.items():
        if key in ("profile", "wavelet_profile"):
            updates[key] = _parse_profile(value, key)
        elif key in ("window", "inversion_window"):
            updates[key] = _parse_window(value, key)
        elif key == "gammas":
            _expect(isinstance(value, list) and value, "gammas must be a non-empty list")
            for g in value:
                _expect(isinstance(g, (int, float)) and not isinstance(g, bool),
                        "gammas entries must be numbers")
                _expect(g > -0.5, "gammas entries must exceed -1/2")
            updates[key] = tuple(float(g) for g in value)
        elif key in _INTEGRAL:
            _expect(isinstance(value, int) and not isinstance(value, bool) and value > 0,
                    f"{key} must be a positive integer")
            updates[key] = value
        elif key in _NUMERIC:
            lo, cast = _NUMERIC[key]
            _expect(isinstance(value, (int, float)) and not isinstance(value, bool),
                    f"{key} must be a number")
            _expect(value > lo, f"{key} must exceed {lo}")
            updates[key] = cast(value)
        elif key == "threads":
            if value is not None:
                _expect(isinstance(value, int) and not isinstance(value, bool) and value > 0,
                        "threads must be a positive integer or null")
            updates[key] = value
        else:
            raise ConfigError(f"unhandled config key {key}")
    cfg = replace(cfg, **updates)
    _expect(cfg.alpha < cfg.beta, "alpha must be smaller than beta")
    _expect(math.isfinite(cfg.radius), "radius must be finite")
    return cfg


def resolve_threads(cfg: Config) -> int:
    """Worker count: the environment variable wins, then config, then 1."""
    raw = os.environ.get(THREADS_ENV)
    if raw is not None:
        try:
            n = int(raw)
        except ValueError:
            raise ConfigError(f"{THREADS_ENV} must be an integer, got {raw!r}")
        if n <= 0:
            raise ConfigError(f"{THREADS_ENV} must be positive, got {n}")
        return n
    return cfg.threads if cfg.threads else 1
