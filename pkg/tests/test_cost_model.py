#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
解析运算量模型测试
==================
"""

import pytest

from core import ConfigurationError
from cost import CostQuery, Workload, abft_overhead, base_cost, curves, entangle_overhead


def test_base_cost_examples():
    assert base_cost(CostQuery(Workload.GEMM, 3, 10)) == 3000
    assert base_cost(CostQuery(Workload.CONV_TIME, 3, 10)) == 1200
    assert base_cost(CostQuery(Workload.CONV_FREQ, 3, 1)) == pytest.approx(372)


def test_gemm_overheads():
    q = CostQuery(Workload.GEMM, 3, 1000)
    assert entangle_overhead(q).count == 6_000_000
    assert entangle_overhead(q).ratio == pytest.approx(0.002)
    assert abft_overhead(q).ratio == pytest.approx(0.002 + 1 / 3)


def test_conv_time_overhead():
    q = CostQuery("conv_time", 8, 1000)
    assert entangle_overhead(q).ratio == pytest.approx(0.0005)
    assert abft_overhead(q).ratio == pytest.approx(0.0005 + 1 / 8)


@pytest.mark.parametrize("workload", list(Workload))
@pytest.mark.parametrize("m", [3, 8, 32])
def test_entangle_ratio_vanishes_and_abft_ratio_tends_to_one_over_m(workload, m):
    ratios = [entangle_overhead(CostQuery(workload, m, n)).ratio for n in (10, 100, 1000, 10000)]
    assert ratios == sorted(ratios, reverse=True)
    big = CostQuery(workload, m, 10 ** 6)
    assert entangle_overhead(big).ratio < 0.01
    assert abft_overhead(big).ratio == pytest.approx(1 / m, abs=0.01)


@pytest.mark.parametrize("m", [3, 8, 32])
def test_entangle_always_cheaper_than_abft(m):
    for workload in Workload:
        for n in (1, 2, 10, 100, 1000):
            q = CostQuery(workload, m, n)
            assert entangle_overhead(q).count < abft_overhead(q).count


@pytest.mark.parametrize("n", [16384, 65536])
def test_frequency_domain_convolution_overhead_is_small(n):
    assert entangle_overhead(CostQuery(Workload.CONV_FREQ, 3, n)).ratio <= 0.003


@pytest.mark.parametrize("m", [3, 8, 32])
def test_time_domain_convolution_overhead_below_threshold(m):
    for n in (700, 1000, 5000):
        assert entangle_overhead(CostQuery(Workload.CONV_TIME, m, n)).ratio <= 0.003


@pytest.mark.parametrize("m", [3, 8, 32])
def test_abft_gemm_ratio_near_one_over_m(m):
    ratio = abft_overhead(CostQuery(Workload.GEMM, m, 2000)).ratio
    assert abs(ratio - 1 / m) <= 0.01


def test_abft_gemm_example_m8():
    assert abft_overhead(CostQuery(Workload.GEMM, 8, 2000)).ratio == pytest.approx(0.126)


def test_gemm_overhead_is_small_for_large_dimensions():
    for n in (1000, 2000, 10000):
        assert entangle_overhead(CostQuery(Workload.GEMM, 3, n)).ratio <= 0.002


def test_query_validation():
    with pytest.raises(ConfigurationError):
        CostQuery(Workload.GEMM, 2, 10)
    with pytest.raises(ConfigurationError):
        CostQuery(Workload.GEMM, 3, 0)
    with pytest.raises(ValueError):
        CostQuery("fft", 3, 10)


def test_curves_order():
    points = curves("gemm", [3, 8], [100, 1000])
    assert [(p.m_streams, p.dimension) for p in points] == [(3, 100), (3, 1000), (8, 100), (8, 1000)]
    assert points[1].entangle_ratio == pytest.approx(0.002)
