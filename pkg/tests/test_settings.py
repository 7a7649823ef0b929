# tests/test_settings.py

import pytest

from polyharm.config import settings
from polyharm.config.settings import RunSettings, load_run_settings
from polyharm.variational.errors import DomainError


def test_defaults_come_from_environment_constants():
    run = load_run_settings()
    assert run.quad_max_level == settings.QUAD_MAX_LEVEL
    assert run.grid_size == settings.GRID_SIZE
    assert run.tol == 1e-9


def test_explicit_overrides_win_and_none_is_ignored():
    run = load_run_settings(threads=3, grid_size=None)
    assert run.threads == 3
    assert run.grid_size == settings.GRID_SIZE


def test_config_file(tmp_path):
    config = tmp_path / "run.env"
    config.write_text("POLYHARM_QUAD_MAX_LEVEL=7\ngrid-size=128\n", encoding="utf-8")
    run = load_run_settings(config, grid_size=64)
    assert run.quad_max_level == 7
    assert run.grid_size == 64


def test_unknown_key_is_rejected(tmp_path):
    config = tmp_path / "run.env"
    config.write_text("colour=blue\n", encoding="utf-8")
    with pytest.raises(DomainError):
        load_run_settings(config)


def test_invalid_value_is_rejected():
    with pytest.raises(DomainError):
        load_run_settings(threads=0)


def test_missing_file(tmp_path):
    with pytest.raises(DomainError):
        load_run_settings(tmp_path / "absent.env")


def test_settings_are_frozen():
    run = RunSettings()
    with pytest.raises(Exception):
        run.threads = 2


def test_environment_values_are_validated(monkeypatch):
    monkeypatch.setenv("POLYHARM_GRID_SIZE", "128")
    monkeypatch.setenv("POLYHARM_QUAD_TOL_REL", "1e-9")
    run = load_run_settings()
    assert run.grid_size == 128
    assert run.quad_tol_rel == 1e-9
    assert load_run_settings(grid_size=64).grid_size == 64


@pytest.mark.parametrize("key, value", [("POLYHARM_THREADS", "four"), ("POLYHARM_THREADS", "0"),
                                        ("POLYHARM_QUAD_TOL_ABS", "tight")])
def test_malformed_environment_value(monkeypatch, key, value):
    monkeypatch.setenv(key, value)
    with pytest.raises(DomainError):
        load_run_settings()
