#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
单次试验
========

编码 → 执行算子 → 注入故障 → 检查/恢复 → 与无容错参考结果比较
"""

import time
from dataclasses import dataclass
from typing import Any

import numpy as np

from core.errors import CertificationError, UnrecoverableError
from core.types import StreamBlock
from kernels.kernel import LsbKernel
from kernels.operators import apply_plain
from lab.injection import inject
from lab.scenarios import FaultKind, FaultScenario
from methods.base import ProtectionMethod


@dataclass(frozen=True)
class TrialOutcome:
    """
    单次试验的结果

    Attributes:
        method: 容错方法名称
        scenario: 注入的故障场景
        detected: 检查是否报告了故障（流缺失视为已检出）
        recovered: 是否执行了fail-stop恢复
        outputs_correct: 最终输出是否与参考结果逐元素一致
        effective: 注入是否真正改变了受保护的块
        ns_encode / ns_apply / ns_check: 各阶段耗时（纳秒）
    """

    method: str
    scenario: FaultScenario
    detected: bool
    recovered: bool
    outputs_correct: bool
    effective: bool
    ns_encode: int = 0
    ns_apply: int = 0
    ns_check: int = 0

    @property
    def guaranteed(self) -> bool:
        """场景是否落在单故障保证范围内"""
        return self.scenario.fault_count <= 1

    @property
    def guarantee_held(self) -> bool:
        """保证范围内的场景是否得到了应有的结果；范围外的场景恒为True"""
        if not self.guaranteed:
            return True
        kind = self.scenario.kind
        if kind is FaultKind.STREAM_DROP:
            return self.recovered and self.outputs_correct
        if kind is FaultKind.NONE or not self.effective:
            return not self.detected and self.outputs_correct
        return self.detected


@dataclass(frozen=True, eq=False)
class PreparedPipeline:
    """
    已完成编码和算子执行、尚未注入故障的流水线

    Attributes:
        method: 容错方法
        kernel: LSB算子
        expected: 无容错计算得到的参考输出
        processed: 处理后的受保护块
    """

    method: ProtectionMethod
    kernel: LsbKernel
    expected: StreamBlock
    processed: Any
    ns_encode: int
    ns_apply: int


def prepare(method: ProtectionMethod, block: StreamBlock, kernel: LsbKernel) -> PreparedPipeline:
    """
    编码并执行算子

    Raises:
        CertificationError: 算子在该输入下不能通过方法的范围认证
    """
    certificate = method.certify(kernel, block.max_magnitude())
    if not certificate.admissible:
        raise CertificationError(
            f"{method.name}: {kernel.describe()} 输出上界 {certificate.output_bound} 超过 {certificate.limit}",
            certificate,
        )
    expected = apply_plain(block, kernel)

    start = time.perf_counter_ns()
    encoded = method.encode(block)
    encoded_at = time.perf_counter_ns()
    processed = method.apply(encoded, kernel)
    applied_at = time.perf_counter_ns()

    return PreparedPipeline(
        method=method,
        kernel=kernel,
        expected=expected,
        processed=processed,
        ns_encode=encoded_at - start,
        ns_apply=applied_at - encoded_at,
    )


def _changed(before: Any, after: Any) -> bool:
    if before.absent != after.absent:
        return True
    if not np.all(before.data == after.data):
        return True
    checksum = getattr(before, "checksum", None)
    return checksum is not None and not np.all(checksum == after.checksum)


def evaluate(prepared: PreparedPipeline, scenario: FaultScenario) -> TrialOutcome:
    """
    在已准备的流水线上注入故障并评估

    Args:
        prepared: 已准备的流水线
        scenario: 故障场景

    Returns:
        TrialOutcome: 试验结果
    """
    method = prepared.method
    corrupted = inject(prepared.processed, scenario)
    effective = _changed(prepared.processed, corrupted)

    start = time.perf_counter_ns()
    outputs = None
    if corrupted.absent:
        detected = True
        try:
            outputs = method.recover(corrupted)
        except UnrecoverableError:
            recovered = False
        else:
            recovered = True
    else:
        detected = not method.check(corrupted).clean
        recovered = False
        outputs = method.extract(corrupted)
    ns_check = time.perf_counter_ns() - start

    return TrialOutcome(
        method=method.name,
        scenario=scenario,
        detected=detected,
        recovered=recovered,
        outputs_correct=outputs is not None and outputs.equals(prepared.expected),
        effective=effective,
        ns_encode=prepared.ns_encode,
        ns_apply=prepared.ns_apply,
        ns_check=ns_check,
    )


def run_trial(
    block: StreamBlock,
    kernel: LsbKernel,
    scenario: FaultScenario,
    method: ProtectionMethod,
) -> TrialOutcome:
    """
    执行一次完整试验

    Args:
        block: 输入流（须在范围内）
        kernel: LSB算子（须能通过认证）
        scenario: 故障场景
        method: 容错方法

    Returns:
        TrialOutcome: 试验结果

    Raises:
        CertificationError: 算子未通过范围认证
    """
    return evaluate(prepare(method, block, kernel), scenario)
