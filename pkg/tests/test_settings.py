"""Tests for YAML defaults and environment settings."""

from src.settings import DEFAULT_CONFIG_PATH, Defaults, Settings, load_defaults


def test_bundled_defaults():
    defaults = load_defaults()
    assert DEFAULT_CONFIG_PATH.exists()
    assert defaults.sampling.seed == 20240601
    assert defaults.sampling.wilson_z == 2.5758
    assert defaults.precision.mp_dps == 30
    assert defaults.budgets.enumeration == 10_000_000


def test_missing_file_falls_back(tmp_path):
    assert load_defaults(tmp_path / "absent.yaml") == Defaults()


def test_partial_override(tmp_path):
    path = tmp_path / "defaults.yaml"
    path.write_text("sampling:\n  min_trials: 7\n", encoding="utf-8")
    defaults = load_defaults(path)
    assert defaults.sampling.min_trials == 7
    assert defaults.sampling.chunk_size == 4096


def test_environment(monkeypatch):
    monkeypatch.setenv("QRLAB_JOBS", "3")
    monkeypatch.setenv("QRLAB_LOG_LEVEL", "debug")
    settings = Settings()
    assert settings.jobs == 3
    assert settings.log_level == "debug"
