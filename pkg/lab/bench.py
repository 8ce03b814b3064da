#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
相对开销基准测试
================

对同一输入块分别计时无容错计算、纠缠流水线（纠缠 → 算子 → 校验）与
ABFT流水线（编码 → 算子 → 校验），报告各自相对无容错计算的开销百分比。

工作负载:
    gemm      每条流为 R×N 子块，乘以 N×N 矩阵（R=32）；乘法为 R·N² 次，编码与校验为 R·N 量级
    conv      长度N的流与N抽头核做循环卷积
    identity  乘以1，几乎只剩编码与校验本身的开销
"""

import time
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from core.types import StreamBlock
from kernels.kernel import KernelKind, LsbKernel
from kernels.operators import apply_plain
from lab.sweep import certified_input_bound
from methods.abft_method import AbftMethod
from methods.entanglement_method import EntanglementMethod
from utils.logger import get_logger


logger = get_logger("entangle.lab.bench")

BENCH_WORKLOADS = ("gemm", "conv", "identity")
BENCH_METHODS = ("plain", "entangle", "abft")
GEMM_ROWS = 32


@dataclass(frozen=True)
class BenchRow:
    workload: str
    method: str
    m_streams: int
    length: int
    median_ns: int
    overhead_pct: float


@dataclass(frozen=True)
class BenchResult:
    """
    基准测试结果

    Attributes:
        rows: 每个 (工作负载, M, N, 方法) 一行
        thresholds: 每个 (工作负载, M) 上，从该N起（含更大的N）ABFT开销始终高于纠缠开销的最小N；
            不存在时为None
    """

    rows: List[BenchRow]
    thresholds: Dict[Tuple[str, int], Optional[int]]

    def overheads(self, workload: str, method: str, m_streams: int) -> List[Tuple[int, float]]:
        """按N升序返回某方法的 (N, overhead_pct)"""
        return sorted(
            (row.length, row.overhead_pct)
            for row in self.rows
            if row.workload == workload and row.method == method and row.m_streams == m_streams
        )


def workload_kernel(workload: str, length: int, rng: np.random.Generator) -> Tuple[LsbKernel, int]:
    """返回 (算子, 每条流的长度)"""
    if workload == "gemm":
        return LsbKernel(KernelKind.MATRIX_MULTIPLY, rng.integers(-1, 2, size=(length, length))), GEMM_ROWS * length
    if workload == "conv":
        return LsbKernel(KernelKind.CIRCULAR_CONVOLUTION, rng.integers(-1, 2, size=length)), length
    if workload == "identity":
        return LsbKernel(KernelKind.SCALE, np.array(1)), length
    raise ValueError(f"未知的基准工作负载: {workload}, 可选: {', '.join(BENCH_WORKLOADS)}")


def paired_overhead_pct(plain_ns: Sequence[int], method_ns: Sequence[int]) -> float:
    """同一轮内两次计时之比的中位数，换算为百分比开销"""
    ratios = [m / max(p, 1) for p, m in zip(plain_ns, method_ns)]
    return 100.0 * (float(np.median(ratios)) - 1.0)


def _time_ns(fn: Callable[[], object]) -> int:
    start = time.perf_counter_ns()
    fn()
    return time.perf_counter_ns() - start


def bench_point(
    workload: str,
    m_streams: int,
    length: int,
    repetitions: int,
    seed: int,
    word_bits: int = 32,
) -> List[BenchRow]:
    """
    测量一个 (工作负载, M, N) 点

    各方法在每轮中交替执行。median_ns 为repetitions轮耗时的中位数，
    overhead_pct 为逐轮相对同一轮无容错耗时的开销的中位数。

    Returns:
        List[BenchRow]: plain / entangle / abft 三行
    """
    rng = np.random.default_rng([seed, m_streams, length, BENCH_WORKLOADS.index(workload)])
    kernel, stream_length = workload_kernel(workload, length, rng)
    bound = certified_input_bound(kernel, m_streams, word_bits)
    block = StreamBlock(
        rng.integers(-bound, bound + 1, size=(m_streams, stream_length), dtype=np.int64), word_bits
    )

    entangle_method = EntanglementMethod(m_streams, word_bits)
    abft_method = AbftMethod(m_streams, word_bits)
    pipelines = {
        "plain": lambda: apply_plain(block, kernel),
        "entangle": lambda: entangle_method.check(entangle_method.apply(entangle_method.encode(block), kernel)),
        "abft": lambda: abft_method.check(abft_method.apply(abft_method.encode(block), kernel)),
    }

    for fn in pipelines.values():
        fn()

    samples: Dict[str, List[int]] = {name: [] for name in BENCH_METHODS}
    for _ in range(repetitions):
        for name in BENCH_METHODS:
            samples[name].append(_time_ns(pipelines[name]))

    medians = {name: int(np.median(values)) for name, values in samples.items()}
    rows = [
        BenchRow(
            workload=workload,
            method=name,
            m_streams=m_streams,
            length=length,
            median_ns=medians[name],
            overhead_pct=0.0 if name == "plain" else paired_overhead_pct(samples["plain"], samples[name]),
        )
        for name in BENCH_METHODS
    ]
    logger.info(
        "基准点完成",
        workload=workload,
        m_streams=m_streams,
        length=length,
        entangle_pct=round(rows[1].overhead_pct, 3),
        abft_pct=round(rows[2].overhead_pct, 3),
    )
    return rows


def abft_threshold(result_rows: Sequence[BenchRow], workload: str, m_streams: int) -> Optional[int]:
    """从该N起ABFT开销始终高于纠缠开销的最小N"""
    by_length: Dict[int, Dict[str, float]] = {}
    for row in result_rows:
        if row.workload == workload and row.m_streams == m_streams:
            by_length.setdefault(row.length, {})[row.method] = row.overhead_pct

    threshold = None
    for length in sorted(by_length, reverse=True):
        overheads = by_length[length]
        if overheads["abft"] > overheads["entangle"]:
            threshold = length
        else:
            break
    return threshold


def bench(
    workloads: Sequence[str],
    m_values: Sequence[int],
    lengths: Sequence[int],
    repetitions: int,
    seed: int,
    word_bits: int = 32,
) -> BenchResult:
    """
    在 (工作负载, M, N) 网格上执行基准测试

    Args:
        workloads: 工作负载名称，见 BENCH_WORKLOADS
        m_values: 流数列表
        lengths: 维度N列表
        repetitions: 每个点的重复次数 (>= 5)
        seed: 随机种子
        word_bits: 字长

    Returns:
        BenchResult: 逐行结果及ABFT开销反超阈值
    """
    if repetitions < 5:
        raise ValueError(f"重复次数必须不少于5, 实际为 {repetitions}")
    rows: List[BenchRow] = []
    for workload in workloads:
        for m_streams in m_values:
            for length in lengths:
                rows.extend(bench_point(workload, m_streams, length, repetitions, seed, word_bits))

    thresholds = {
        (workload, m_streams): abft_threshold(rows, workload, m_streams)
        for workload in workloads
        for m_streams in m_values
    }
    return BenchResult(rows, thresholds)
