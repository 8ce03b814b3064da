#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
解析运算量模型
==============

只统计加法与乘法，忽略所有算术移位。N同时表示输入流长度与核的维度。

    C_GEMM       = M·N³
    C_conv,time  = 4·M·N²
    C_conv,freq  = M·[(45N+15)·log₂(3N+1) + 3N + 1]
    C_ne,GEMM    = 2·M·N²           C_ne,conv   = 2·M·N
    C_ABFT,*     = C_ne,* + C_*/M
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Union

from core.errors import ConfigurationError


class Workload(str, Enum):
    GEMM = "gemm"
    CONV_TIME = "conv_time"
    CONV_FREQ = "conv_freq"


# 行列双校验和ABFT在GEMM上的实测开销范围
ABFT_RC_CHECK_OVERHEAD = (0.035, 0.055)

Number = Union[int, float]


@dataclass(frozen=True)
class CostQuery:
    """
    运算量查询

    Attributes:
        workload: 工作负载
        m_streams: 流数M (>= 3)
        dimension: 维度N (>= 1)
    """

    workload: Workload
    m_streams: int
    dimension: int

    def __post_init__(self):
        object.__setattr__(self, "workload", Workload(self.workload))
        if self.m_streams < 3:
            raise ConfigurationError(f"流数M必须不小于3, 实际为 {self.m_streams}")
        if self.dimension < 1:
            raise ConfigurationError(f"维度N必须为正, 实际为 {self.dimension}")


@dataclass(frozen=True)
class OverheadEstimate:
    count: Number
    ratio: float


@dataclass(frozen=True)
class CurvePoint:
    workload: Workload
    m_streams: int
    dimension: int
    entangle_ratio: float
    abft_ratio: float


def base_cost(q: CostQuery) -> Number:
    """无容错计算的运算量"""
    m, n = q.m_streams, q.dimension
    if q.workload is Workload.GEMM:
        return m * n ** 3
    if q.workload is Workload.CONV_TIME:
        return 4 * m * n ** 2
    return m * ((45 * n + 15) * math.log2(3 * n + 1) + 3 * n + 1)


def _entangle_count(q: CostQuery) -> int:
    m, n = q.m_streams, q.dimension
    if q.workload is Workload.GEMM:
        return 2 * m * n ** 2
    return 2 * m * n


def entangle_overhead(q: CostQuery) -> OverheadEstimate:
    """
    纠缠与解纠缠的运算量上界及其相对基础运算量的比例

    N → ∞ 时比例趋于0。
    """
    count = _entangle_count(q)
    return OverheadEstimate(count, count / base_cost(q))


def abft_overhead(q: CostQuery) -> OverheadEstimate:
    """
    单校验和ABFT的运算量及比例

    N → ∞ 时比例趋于 1/M。
    """
    count = _entangle_count(q) + base_cost(q) / q.m_streams
    return OverheadEstimate(count, count / base_cost(q))


def curves(
    workload: Union[Workload, str],
    m_values: Iterable[int],
    dimensions: Iterable[int],
) -> List[CurvePoint]:
    """
    比例曲线，M在外层、N在内层

    Returns:
        List[CurvePoint]: 每个 (M, N) 一个点
    """
    workload = Workload(workload)
    dimensions = list(dimensions)
    points = []
    for m in m_values:
        for n in dimensions:
            q = CostQuery(workload, m, n)
            points.append(
                CurvePoint(workload, m, n, entangle_overhead(q).ratio, abft_overhead(q).ratio)
            )
    return points
