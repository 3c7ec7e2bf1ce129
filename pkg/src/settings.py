"""Runtime settings: YAML defaults overlaid with QRLAB_* environment variables."""

import os
from functools import lru_cache
from pathlib import Path
from typing import Any, Optional

import yaml
from pydantic import BaseModel
from pydantic_settings import BaseSettings, SettingsConfigDict

DEFAULT_CONFIG_PATH = Path(__file__).parent.parent / "config" / "defaults.yaml"


class Budgets(BaseModel):
    enumeration: int = 10_000_000
    direct_count_q: int = 100_000
    cubic_p_cubed: int = 1_000_000_000
    beta_work: int = 10_000_000_000


class Sampling(BaseModel):
    seed: int = 20240601
    curve_attempt_cap: int = 10_000
    wilson_z: float = 2.5758
    min_trials: int = 100
    chunk_size: int = 4096


class Precision(BaseModel):
    mp_dps: int = 30
    sig_digits: int = 12


class FieldLimits(BaseModel):
    bitset_threshold: int = 1 << 24
    log_table_max: int = 1 << 20


class Defaults(BaseModel):
    """Contents of config/defaults.yaml."""

    budgets: Budgets = Budgets()
    sampling: Sampling = Sampling()
    precision: Precision = Precision()
    field: FieldLimits = FieldLimits()


class Settings(BaseSettings):
    """Environment-level settings (QRLAB_JOBS, QRLAB_CONFIG, QRLAB_LOG_LEVEL)."""

    model_config = SettingsConfigDict(env_prefix="QRLAB_", env_file=".env", extra="ignore")

    jobs: int = 1
    config: Optional[Path] = None
    log_level: str = "WARNING"


def load_defaults(config_path: Optional[Path] = None) -> Defaults:
    """Load experiment defaults from YAML.

    Args:
        config_path: Path to a defaults file (defaults to config/defaults.yaml)

    Returns:
        Parsed Defaults; missing keys fall back to the model defaults
    """
    if config_path is None:
        config_path = DEFAULT_CONFIG_PATH

    if not Path(config_path).exists():
        return Defaults()

    with open(config_path) as f:
        raw: dict[str, Any] = yaml.safe_load(f) or {}

    return Defaults.model_validate(raw)


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return Settings()


@lru_cache(maxsize=1)
def get_defaults() -> Defaults:
    """Defaults from QRLAB_CONFIG if set, else the bundled YAML."""
    override = os.getenv("QRLAB_CONFIG")
    return load_defaults(Path(override) if override else None)
