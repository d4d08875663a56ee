import json

import pytest

from dunklwave.config import Config, ConfigError, load_config, resolve_threads


def test_defaults_load_without_file():
    cfg = load_config(None)
    assert cfg.radius == 16.0
    assert cfg.panels == 64
    assert cfg.order == 16
    assert cfg.gammas == (0.0, 0.5, 1.2)
    assert cfg.alpha == 0.5 and cfg.beta == 1.5
    assert cfg.profile.power == 4.0
    assert cfg.wavelet_profile.power == 2.0
    assert cfg.window == (0.5, 4.0)
    assert cfg.inversion_window == (0.1, 16.0)


def test_file_overrides(tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({
        "radius": 12.0,
        "panels": 24,
        "gammas": [0.5],
        "window": [1.0, 2.0],
        "profile": {"power": 4.0},
    }))
    cfg = load_config(str(p))
    assert cfg.radius == 12.0
    assert cfg.panels == 24
    assert cfg.gammas == (0.5,)
    assert cfg.window == (1.0, 2.0)
    assert cfg.order == 16  # untouched defaults survive


def test_unknown_key_rejected(tmp_path):
    p = tmp_path / "c.json"
    p.write_text('{"radi": 12.0}')
    with pytest.raises(ConfigError):
        load_config(str(p))


def test_profile_power_required(tmp_path):
    p = tmp_path / "c.json"
    p.write_text('{"profile": {}}')
    with pytest.raises(ConfigError, match="power"):
        load_config(str(p))


def test_window_must_be_increasing_pair(tmp_path):
    p = tmp_path / "c.json"
    p.write_text('{"window": [4.0, 0.5]}')
    with pytest.raises(ConfigError):
        load_config(str(p))


def test_gamma_domain_checked(tmp_path):
    p = tmp_path / "c.json"
    p.write_text('{"gammas": [-0.7]}')
    with pytest.raises(ConfigError):
        load_config(str(p))


def test_alpha_beta_ordering(tmp_path):
    p = tmp_path / "c.json"
    p.write_text('{"alpha": 1.5, "beta": 0.5}')
    with pytest.raises(ConfigError):
        load_config(str(p))


def test_threads_resolution(monkeypatch):
    cfg = Config()
    monkeypatch.delenv("DUNKLWAVE_THREADS", raising=False)
    assert resolve_threads(cfg) == 1
    monkeypatch.setenv("DUNKLWAVE_THREADS", "4")
    assert resolve_threads(cfg) == 4
    monkeypatch.setenv("DUNKLWAVE_THREADS", "zero")
    with pytest.raises(ConfigError):
        resolve_threads(cfg)
    monkeypatch.setenv("DUNKLWAVE_THREADS", "0")
    with pytest.raises(ConfigError):
        resolve_threads(cfg)
