#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
异常定义
========

纠缠计算各层共用的异常层次
"""

from typing import Any, Optional


class EntanglementError(Exception):
    """所有纠缠相关异常的基类"""


class ConfigurationError(EntanglementError, ValueError):
    """(M, w, l, k) 参数组合不可行或不合法"""


class DynamicRangeError(EntanglementError, ValueError):
    """
    输入样本超出允许的动态范围

    Attributes:
        stream: 越界样本所在的流编号 m
        position: 越界样本的位置 n
        value: 越界的取值
    """

    def __init__(self, stream: int, position: int, value: int, lo: int, hi: int):
        self.stream = stream
        self.position = position
        self.value = value
        self.lo = lo
        self.hi = hi
        super().__init__(
            f"样本 (m={stream}, n={position}) 的取值 {value} 超出动态范围 [{lo}, {hi}]"
        )


class ShapeError(EntanglementError, ValueError):
    """块或操作数的形状不匹配"""


class StreamIndexError(EntanglementError, IndexError):
    """流编号或样本位置越界"""


class UnrecoverableError(EntanglementError):
    """缺失的流超过可恢复的数量"""


class StreamUnavailableError(EntanglementError):
    """试图读取被标记为缺失的流"""


class CertificationError(EntanglementError):
    """
    LSB算子未通过动态范围认证

    Attributes:
        certificate: 未通过的认证结果
    """

    def __init__(self, message: str, certificate: Optional[Any] = None):
        self.certificate = certificate
        super().__init__(message)
