#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
纠缠核心层
==========

纠缠/解纠缠、故障校验、fail-stop恢复及相关数据类型
"""

from .counters import OpCounter
from .entanglement import (
    config_for,
    disentangle_excluding,
    dynamic_range,
    entangle,
    recover_failstop,
    verify,
)
from .errors import (
    CertificationError,
    ConfigurationError,
    DynamicRangeError,
    EntanglementError,
    ShapeError,
    StreamIndexError,
    StreamUnavailableError,
    UnrecoverableError,
)
from .types import EntangledBlock, EntanglementConfig, FaultCheckResult, StreamBlock

__all__ = [
    "OpCounter",
    "config_for",
    "disentangle_excluding",
    "dynamic_range",
    "entangle",
    "recover_failstop",
    "verify",
    "CertificationError",
    "ConfigurationError",
    "DynamicRangeError",
    "EntanglementError",
    "ShapeError",
    "StreamIndexError",
    "StreamUnavailableError",
    "UnrecoverableError",
    "EntangledBlock",
    "EntanglementConfig",
    "FaultCheckResult",
    "StreamBlock",
]
