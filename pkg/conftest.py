#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
pytest公共配置
==============
"""

import logging
import sys
from pathlib import Path

import pytest

# 添加项目根目录到Python路径
sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(autouse=True)
def _reset_entangle_handlers():
    """main() 会给 entangle 日志记录器挂上stderr处理器，每个测试结束后移除"""
    yield
    logger = logging.getLogger("entangle")
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
