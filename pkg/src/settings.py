import os
from contextvars import ContextVar
from typing import Any, Literal, Optional

import yaml
from pydantic import BaseModel, Field, field_validator
from pydantic_settings import (
    BaseSettings,
    PydanticBaseSettingsSource,
    SettingsConfigDict,
)
from sympy import isprime

from src.errors import ConfigError
from src.monitoring import log_event

CONFIG_DIR = "config"

# YAML values collected by load_settings(); read back by the settings source below.
_file_values: ContextVar[dict[str, Any]] = ContextVar("beilab_file_values", default={})


class SweepSettings(BaseModel):
    max_n: int = Field(default=6, ge=2, le=7)
    splits: Literal["all", "sample"] = Field(default="all")
    samples: int = Field(default=200, ge=1)
    seed: int = Field(default=0)


class _YamlValuesSource(PydanticBaseSettingsSource):
    """Exposes the merged YAML config files as a settings source below env vars."""

    def get_field_value(self, field, field_name):  # pragma: no cover - __call__ is used
        return _file_values.get().get(field_name), field_name, False

    def __call__(self) -> dict[str, Any]:
        return dict(_file_values.get())


class Settings(BaseSettings):
    # field characteristic for homology
    char: int = Field(default=2, description="Prime p; homology is computed over GF(p)")
    # execution
    jobs: int = Field(default=1, ge=1)
    max_reg_vertices: int = Field(default=10, ge=1, le=10, description="Regularity engine cap (2n variables)")
    memo_size: int = Field(default=65536, ge=1)
    data_dir: str = Field(default="data")
    log_level: str = Field(default="INFO")
    progress: bool = Field(default=True)
    # sweeps
    sweep: SweepSettings = Field(default_factory=SweepSettings)
    # scheduling
    sweep_height_cron: str = Field(default="0 2 * * *")
    sweep_subadditivity_cron: str = Field(default="0 3 * * SUN")
    sweep_decomposition_cron: str = Field(default="0 4 * * SUN")

    @field_validator("char")
    @classmethod
    def _char_is_prime(cls, value: int) -> int:
        if not isprime(value):
            raise ValueError(f"char must be prime, got {value}")
        return value

    model_config = SettingsConfigDict(
        env_prefix="BEILAB_",
        env_nested_delimiter="__",
        case_sensitive=False,
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",  # Allow extra env vars not in the model
    )

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls,
        init_settings,
        env_settings,
        dotenv_settings,
        file_secret_settings,
    ):
        # flags > environment > config files > defaults
        return (
            init_settings,
            env_settings,
            dotenv_settings,
            _YamlValuesSource(settings_cls),
            file_secret_settings,
        )


def _read_yaml(file_path: str, required: bool) -> dict[str, Any]:
    try:
        with open(file_path, "r") as f:
            content = yaml.safe_load(f)
    except FileNotFoundError:
        if required:
            raise ConfigError(f"settings file {file_path} not found")
        log_event("settings_file_missing", {"path": file_path})
        return {}
    except yaml.YAMLError as e:
        raise ConfigError(f"error loading YAML file {file_path}: {e}") from e
    if content is None:
        return {}
    if not isinstance(content, dict):
        raise ConfigError(f"settings file {file_path} must hold a mapping")
    return content


def _merge(base: dict[str, Any], update: dict[str, Any]) -> dict[str, Any]:
    merged = dict(base)
    for key, value in update.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_settings(
    env: Optional[str] = None,
    config_file: Optional[str] = None,
    **overrides: Any,
) -> Settings:
    """
    Loads settings from default.yaml, the environment-specific yaml, an optional
    extra config file and BEILAB_* environment variables.
    Explicit overrides (CLI flags) win over environment variables, which win over files.
    """
    values = _read_yaml(os.path.join(CONFIG_DIR, "default.yaml"), required=False)
    if env:
        env_file = os.path.join(CONFIG_DIR, f"{env}.yaml")
        if os.path.exists(env_file):
            values = _merge(values, _read_yaml(env_file, required=True))
        else:
            log_event("settings_env_file_missing", {"path": env_file})
    if config_file:
        values = _merge(values, _read_yaml(config_file, required=True))

    token = _file_values.set(values)
    try:
        return Settings(**{k: v for k, v in overrides.items() if v is not None})
    finally:
        _file_values.reset(token)


if __name__ == "__main__":
    print(load_settings().model_dump_json(indent=2))
