#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
配置管理测试
============
"""

import pytest
from pydantic import ValidationError

from config import Settings, get_settings, update_settings


ENV_KEYS = ("ENTANGLE_SEED", "DEFAULT_WORD_BITS", "BENCH_REPETITIONS", "MAX_WORKERS", "LOG_LEVEL", "DEBUG")


@pytest.fixture
def clean_env(monkeypatch):
    for key in ENV_KEYS:
        monkeypatch.delenv(key, raising=False)
    return monkeypatch


def test_defaults(clean_env):
    s = Settings(_env_file=None)
    assert s.ENTANGLE_SEED == 20240101
    assert s.DEFAULT_WORD_BITS == 32
    assert s.BENCH_REPETITIONS == 5
    assert s.LOG_LEVEL == "WARNING"
    assert s.get_lab_config()["excluded_stream"] == 0


def test_environment_overrides(clean_env):
    clean_env.setenv("ENTANGLE_SEED", "7")
    clean_env.setenv("LOG_LEVEL", "info")
    clean_env.setenv("DEFAULT_WORD_BITS", "64")
    s = Settings(_env_file=None)
    assert s.ENTANGLE_SEED == 7
    assert s.LOG_LEVEL == "INFO"
    assert s.DEFAULT_WORD_BITS == 64


@pytest.mark.parametrize(
    "key, value",
    [("BENCH_REPETITIONS", "3"), ("DEFAULT_WORD_BITS", "16"), ("LOG_LEVEL", "LOUD"), ("MAX_WORKERS", "0")],
)
def test_invalid_environment_values(clean_env, key, value):
    clean_env.setenv(key, value)
    with pytest.raises(ValidationError):
        Settings(_env_file=None)


def test_debug_forces_debug_level(clean_env):
    clean_env.setenv("DEBUG", "true")
    assert Settings(_env_file=None).effective_log_level == "DEBUG"


def test_update_settings_validates_before_writing():
    settings = get_settings()
    original = settings.MAX_WORKERS
    try:
        update_settings(MAX_WORKERS=2, NOT_A_SETTING=1)
        assert settings.MAX_WORKERS == 2
        with pytest.raises(ValidationError):
            update_settings(MAX_WORKERS=0)
        assert settings.MAX_WORKERS == 2
    finally:
        update_settings(MAX_WORKERS=original)
