import os
import sys

import pytest
from pydantic import ValidationError

sys.path.append(os.path.join(os.path.dirname(__file__), ".."))
import src.settings as settings_module
from src.errors import ConfigError
from src.settings import load_settings

REPO_CONFIG = os.path.join(os.path.dirname(__file__), "..", "config")


@pytest.fixture(autouse=True)
def isolated(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    monkeypatch.setattr(settings_module, "CONFIG_DIR", REPO_CONFIG)
    for name in list(os.environ):
        if name.startswith("BEILAB_"):
            monkeypatch.delenv(name)


def test_defaults_from_config():
    settings = load_settings()
    assert settings.char == 2
    assert settings.jobs == 1
    assert settings.sweep.max_n == 6
    assert settings.sweep.splits == "all"
    assert settings.sweep_height_cron == "0 2 * * *"


def test_env_file_is_merged_over_defaults():
    settings = load_settings(env="ci")
    assert settings.jobs == 2
    assert settings.progress is False
    assert settings.sweep.max_n == 5
    assert settings.sweep.samples == 50
    # untouched nested keys survive the merge
    assert settings.sweep.splits == "all"


def test_missing_env_file_falls_back_to_defaults():
    assert load_settings(env="nowhere").jobs == 1


def test_environment_variables_beat_files(monkeypatch):
    monkeypatch.setenv("BEILAB_JOBS", "3")
    monkeypatch.setenv("BEILAB_SWEEP__SEED", "9")
    settings = load_settings(env="ci")
    assert settings.jobs == 3
    assert settings.sweep.seed == 9
    assert settings.sweep.max_n == 5


def test_overrides_beat_environment(monkeypatch):
    monkeypatch.setenv("BEILAB_JOBS", "3")
    assert load_settings(jobs=4).jobs == 4
    assert load_settings(jobs=None).jobs == 3


def test_extra_config_file(tmp_path):
    extra = tmp_path / "local.yaml"
    extra.write_text("char: 3\nsweep:\n  splits: sample\n")
    settings = load_settings(config_file=str(extra))
    assert settings.char == 3
    assert settings.sweep.splits == "sample"
    assert settings.sweep.max_n == 6


def test_char_must_be_prime():
    with pytest.raises(ValidationError):
        load_settings(char=4)


def test_sweep_max_n_is_capped(tmp_path):
    extra = tmp_path / "big.yaml"
    extra.write_text("sweep:\n  max_n: 8\n")
    with pytest.raises(ValidationError):
        load_settings(config_file=str(extra))


@pytest.mark.parametrize("content", ["char: [2\n", "- 1\n- 2\n"])
def test_bad_config_file(tmp_path, content):
    extra = tmp_path / "bad.yaml"
    extra.write_text(content)
    with pytest.raises(ConfigError):
        load_settings(config_file=str(extra))


def test_missing_config_file(tmp_path):
    with pytest.raises(ConfigError):
        load_settings(config_file=str(tmp_path / "absent.yaml"))
