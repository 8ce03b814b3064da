#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
基准测试
========

计时相关的断言受机器负载影响，只在设置 ENTANGLE_RUN_BENCH=1 时运行趋势检查
"""

import os

import numpy as np
import pytest

from lab import BENCH_WORKLOADS, bench, bench_point
from lab.bench import GEMM_ROWS, BenchRow, abft_threshold, paired_overhead_pct, workload_kernel


run_bench = pytest.mark.skipif(
    os.environ.get("ENTANGLE_RUN_BENCH") != "1",
    reason="设置 ENTANGLE_RUN_BENCH=1 运行耗时的计时测试",
)


def test_bench_point_rows():
    rows = bench_point("identity", 3, 8, repetitions=5, seed=1)
    assert [r.method for r in rows] == ["plain", "entangle", "abft"]
    assert rows[0].overhead_pct == 0.0


def test_bench_rejects_too_few_repetitions():
    with pytest.raises(ValueError):
        bench(["identity"], [3], [8], repetitions=4, seed=1)
    with pytest.raises(ValueError):
        bench(["sort"], [3], [8], repetitions=5, seed=1)


def test_abft_threshold_requires_persistent_lead():
    def rows(lengths_and_overheads):
        out = []
        for length, (ent, abft) in lengths_and_overheads:
            out.append(BenchRow("gemm", "entangle", 3, length, 0, ent))
            out.append(BenchRow("gemm", "abft", 3, length, 0, abft))
        return out

    assert abft_threshold(rows([(200, (5, 1)), (500, (3, 4)), (1000, (2, 6))]), "gemm", 3) == 500
    assert abft_threshold(rows([(200, (1, 5)), (500, (3, 4)), (1000, (6, 2))]), "gemm", 3) is None


def test_gemm_operand_is_square_in_dimension():
    kernel, stream_length = workload_kernel("gemm", 16, np.random.default_rng(0))
    assert kernel.operand.shape == (16, 16)
    assert stream_length == GEMM_ROWS * 16
    assert kernel.output_length(stream_length) == GEMM_ROWS * 16


def test_paired_overhead_uses_per_round_ratios():
    # 单轮的异常值不影响中位数
    assert paired_overhead_pct([100, 200, 100], [110, 220, 300]) == pytest.approx(10.0)
    assert paired_overhead_pct([100] * 5, [100] * 5) == 0.0


@run_bench
def test_gemm_overhead_trend():
    result = bench(["gemm"], [3], [200, 500, 1000, 2000], repetitions=7, seed=1)
    entangle_pct = result.overheads("gemm", "entangle", 3)
    abft_pct = dict(result.overheads("gemm", "abft", 3))
    for length, pct in entangle_pct:
        if length >= 500:
            assert pct < abft_pct[length]
    # 允许1个百分点的计时噪声
    for (_, earlier), (_, later) in zip(entangle_pct, entangle_pct[1:]):
        assert later <= earlier + 1.0
    assert result.thresholds[("gemm", 3)] is not None


@run_bench
def test_every_workload_runs():
    result = bench(BENCH_WORKLOADS, [3, 4], [64], repetitions=5, seed=2)
    assert len(result.rows) == len(BENCH_WORKLOADS) * 2 * 3
