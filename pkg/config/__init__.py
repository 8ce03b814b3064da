#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Entangle Lab配置管理模块
========================

提供全局配置管理，支持环境变量和.env文件两种配置方式
"""

from pathlib import Path
from typing import Any, Dict, Optional

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    应用程序配置类

    从环境变量、.env文件加载配置（环境变量优先）
    """

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # 应用基础信息
    APP_NAME: str = "EntangleLab"
    VERSION: str = "0.1.0"
    DESCRIPTION: str = "数值纠缠容错流处理实验框架"

    # 日志配置
    LOG_LEVEL: str = "WARNING"
    LOG_FILE_PATH: Optional[str] = None
    LOG_FORMAT: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

    # 实验配置
    ENTANGLE_SEED: int = Field(default=20240101, ge=0)
    DEFAULT_WORD_BITS: int = 32
    DEFAULT_EXCLUDED_STREAM: int = Field(default=0, ge=0)
    BENCH_REPETITIONS: int = Field(default=5, ge=5)

    # 性能配置
    MAX_WORKERS: int = Field(default=4, ge=1)

    # 开发配置
    DEBUG: bool = False

    @field_validator("LOG_LEVEL")
    @classmethod
    def _check_log_level(cls, value: str) -> str:
        level = value.upper()
        if level not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ValueError(f"未知的日志级别: {value}")
        return level

    @field_validator("DEFAULT_WORD_BITS")
    @classmethod
    def _check_word_bits(cls, value: int) -> int:
        if value not in (32, 64):
            raise ValueError(f"字长只支持32或64位, 实际为 {value}")
        return value

    @property
    def effective_log_level(self) -> str:
        """DEBUG开关打开时强制使用DEBUG级别"""
        return "DEBUG" if self.DEBUG else self.LOG_LEVEL

    def ensure_directories(self) -> None:
        """确保日志目录存在"""
        if self.LOG_FILE_PATH:
            Path(self.LOG_FILE_PATH).parent.mkdir(parents=True, exist_ok=True)

    def get_lab_config(self) -> Dict[str, Any]:
        """获取实验相关配置"""
        return {
            "seed": self.ENTANGLE_SEED,
            "word_bits": self.DEFAULT_WORD_BITS,
            "excluded_stream": self.DEFAULT_EXCLUDED_STREAM,
            "bench_repetitions": self.BENCH_REPETITIONS,
            "max_workers": self.MAX_WORKERS,
        }


# 全局配置实例
settings = Settings()


def get_settings() -> Settings:
    """
    获取配置实例

    Returns:
        Settings: 配置实例
    """
    return settings


def update_settings(**kwargs) -> None:
    """
    更新配置

    新值先经过完整校验，校验通过后才写入全局实例；未知的键会被忽略。

    Args:
        **kwargs: 配置参数

    Raises:
        pydantic.ValidationError: 新值不合法
    """
    known = {key: value for key, value in kwargs.items() if key in Settings.model_fields}
    if not known:
        return
    merged = settings.model_dump()
    merged.update(known)
    validated = Settings(**merged)
    for key in known:
        setattr(settings, key, getattr(validated, key))
