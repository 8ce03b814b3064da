#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
参数扫描
========

在 {方法, M, w, N, 算子, 场景族} 网格上批量执行试验。

每个网格点的算子与输入数据只由 (seed, M, w, N, 算子) 决定，与方法无关，
因此纠缠与ABFT处理的是完全相同的数据。网格点在线程池中并行执行，结果按网格顺序合并。
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product
from pathlib import Path
from typing import Dict, List, Optional, Union

import numpy as np
import yaml
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from abft.checksum import abft_dynamic_range
from config import get_settings
from core.entanglement import config_for, dynamic_range
from core.types import StreamBlock
from kernels.factory import KERNEL_NAMES, make_kernel
from kernels.kernel import LsbKernel
from kernels.operators import max_input_bound
from lab.injection import inject
from lab.scenarios import (
    SCENARIO_FAMILIES,
    SEARCHED_FAMILIES,
    FaultScenario,
    scenario_family,
)
from lab.trials import PreparedPipeline, TrialOutcome, evaluate, prepare
from methods import METHOD_NAMES, MethodManager, create_default_manager
from methods.entanglement_method import EntanglementMethod
from utils.logger import get_logger


logger = get_logger("entangle.lab.sweep")


def _default_seed() -> int:
    return get_settings().ENTANGLE_SEED


class SweepGrid(BaseModel):
    """扫描网格"""

    model_config = ConfigDict(frozen=True)

    methods: List[str] = Field(default_factory=lambda: ["entangle"], min_length=1)
    m_values: List[int] = Field(default_factory=lambda: [3], min_length=1)
    word_bits: List[int] = Field(default_factory=lambda: [32], min_length=1)
    lengths: List[int] = Field(default_factory=lambda: [16], min_length=1)
    kernels: List[str] = Field(default_factory=lambda: ["conv"], min_length=1)
    scenarios: List[str] = Field(default_factory=lambda: ["all-bitflips"], min_length=1)
    trials: int = Field(default=100, ge=1)
    seed: int = Field(default_factory=_default_seed, ge=0)

    @field_validator("methods")
    @classmethod
    def _check_methods(cls, value: List[str]) -> List[str]:
        unknown = [m for m in value if m not in METHOD_NAMES]
        if unknown:
            raise ValueError(f"未知的容错方法: {unknown}, 可选: {list(METHOD_NAMES)}")
        return value

    @field_validator("m_values")
    @classmethod
    def _check_m_values(cls, value: List[int]) -> List[int]:
        if any(m < 3 for m in value):
            raise ValueError(f"流数M必须不小于3: {value}")
        return value

    @field_validator("word_bits")
    @classmethod
    def _check_word_bits(cls, value: List[int]) -> List[int]:
        if any(w not in (32, 64) for w in value):
            raise ValueError(f"字长只支持32或64位: {value}")
        return value

    @field_validator("lengths")
    @classmethod
    def _check_lengths(cls, value: List[int]) -> List[int]:
        if any(n < 1 for n in value):
            raise ValueError(f"流长度N必须为正: {value}")
        return value

    @field_validator("kernels")
    @classmethod
    def _check_kernels(cls, value: List[str]) -> List[str]:
        unknown = [k for k in value if k not in KERNEL_NAMES]
        if unknown:
            raise ValueError(f"未知的算子: {unknown}, 可选: {list(KERNEL_NAMES)}")
        return value

    @field_validator("scenarios")
    @classmethod
    def _check_scenarios(cls, value: List[str]) -> List[str]:
        unknown = [s for s in value if s not in SCENARIO_FAMILIES]
        if unknown:
            raise ValueError(f"未知的场景族: {unknown}, 可选: {list(SCENARIO_FAMILIES)}")
        return value

    @model_validator(mode="after")
    def _check_feasible(self) -> "SweepGrid":
        for m, w in product(self.m_values, self.word_bits):
            if m > w:
                raise ValueError(f"M={m} 超过字长 w={w}")
        return self

    @classmethod
    def from_yaml(cls, path: Union[str, Path]) -> "SweepGrid":
        """
        从YAML文件加载网格

        Args:
            path: YAML文件路径，键与字段同名

        Returns:
            SweepGrid: 网格
        """
        with open(path, "r", encoding="utf-8") as f:
            raw = yaml.safe_load(f) or {}
        return cls(**raw)

    def points(self) -> List["GridPoint"]:
        """按固定顺序展开网格点（方法在最内层）"""
        return [
            GridPoint(method, m, w, n, kernel, scenario)
            for m, w, n, kernel, scenario, method in product(
                self.m_values, self.word_bits, self.lengths, self.kernels, self.scenarios, self.methods
            )
        ]


@dataclass(frozen=True)
class GridPoint:
    method: str
    m_streams: int
    word_bits: int
    length: int
    kernel: str
    scenario: str


@dataclass(frozen=True)
class SweepRow:
    """一次试验及其所属的网格点"""

    point: GridPoint
    outcome: TrialOutcome


@dataclass(frozen=True)
class SweepSummary:
    """一个网格点上的汇总统计"""

    point: GridPoint
    trials: int
    detected: int
    recovered: int
    correct: int
    guaranteed: int
    violations: int

    @property
    def detection_rate(self) -> float:
        return self.detected / self.trials if self.trials else 0.0

    @property
    def correct_rate(self) -> float:
        return self.correct / self.trials if self.trials else 0.0


@dataclass(frozen=True)
class SweepResult:
    rows: List[SweepRow]
    summaries: List[SweepSummary]

    @property
    def all_guarantees_held(self) -> bool:
        return all(s.violations == 0 for s in self.summaries)

    @property
    def violations(self) -> List[SweepRow]:
        return [row for row in self.rows if not row.outcome.guarantee_held]


def certified_input_bound(kernel: LsbKernel, m_streams: int, word_bits: int) -> int:
    """两种方法都能接受的最大输入幅度"""
    entangle_hi = dynamic_range(config_for(m_streams, word_bits))[1]
    abft_hi = abft_dynamic_range(m_streams, word_bits)[1]
    return min(max_input_bound(kernel, entangle_hi), max_input_bound(kernel, abft_hi))


def point_kernel(point: GridPoint, seed: int) -> LsbKernel:
    """网格点使用的算子，与方法无关"""
    kernel_index = KERNEL_NAMES.index(point.kernel)
    rng = np.random.default_rng([seed, point.m_streams, point.word_bits, point.length, kernel_index])
    return make_kernel(point.kernel, point.length, rng)


def point_block(point: GridPoint, seed: int, data_seed: int, bound: int) -> StreamBlock:
    """网格点的第data_seed个输入块，在 [-bound, bound] 上均匀抽取"""
    kernel_index = KERNEL_NAMES.index(point.kernel)
    rng = np.random.default_rng(
        [seed, point.m_streams, point.word_bits, point.length, kernel_index, data_seed]
    )
    data = rng.integers(-bound, bound + 1, size=(point.m_streams, point.length), dtype=np.int64)
    return StreamBlock(data, point.word_bits)


def _crafted_double_fault(prepared: PreparedPipeline, position: int) -> FaultScenario:
    """构造相互抵消的同位置加性双故障"""
    method = prepared.method
    data = prepared.processed.data
    if isinstance(method, EntanglementMethod):
        m, l, r = method.m_streams, method.config.shift_bits, method.excluded
        first, second = (r + 1) % m, (r + 2) % m
        return FaultScenario.overwrite(first, position, int(data[first, position]) + 1).with_companion(
            FaultScenario.overwrite(second, position, int(data[second, position]) + (1 << l))
        )
    return FaultScenario.overwrite(0, position, int(data[0, position]) + 1).with_companion(
        FaultScenario.overwrite(1, position, int(data[1, position]) - 1)
    )


def find_evading_double_fault(prepared: PreparedPipeline, position: int) -> FaultScenario:
    """
    搜索一个检查无法发现的同位置双比特翻转

    依次枚举流对与比特对；若不存在这样的翻转对，则退回到构造的加性抵消双故障。

    Args:
        prepared: 已准备的流水线
        position: 故障位置n

    Returns:
        FaultScenario: 带companion的双故障场景
    """
    method = prepared.method
    word_bits = method.word_bits
    carried = method.carried_streams
    for first in range(carried):
        for second in range(first + 1, carried):
            for bit_a in range(word_bits):
                for bit_b in range(word_bits):
                    scenario = FaultScenario.bit_flip(first, position, bit_a).with_companion(
                        FaultScenario.bit_flip(second, position, bit_b)
                    )
                    if method.check(inject(prepared.processed, scenario)).clean:
                        logger.debug("找到规避检查的双比特翻转", label=scenario.label)
                        return scenario
    logger.debug("未找到规避检查的双比特翻转, 使用构造的抵消故障", position=position)
    return _crafted_double_fault(prepared, position)


def run_point(point: GridPoint, grid: SweepGrid, manager: MethodManager) -> List[SweepRow]:
    """
    执行一个网格点的全部试验

    Raises:
        CertificationError: 该点的算子不能在可用输入范围内通过认证
    """
    method = manager.create_method(point.method, point.m_streams, point.word_bits)
    kernel = point_kernel(point, grid.seed)
    bound = certified_input_bound(kernel, point.m_streams, point.word_bits)
    out_length = kernel.output_length(point.length)

    current: Dict[int, PreparedPipeline] = {}

    def prepared_for(data_seed: int) -> PreparedPipeline:
        if data_seed not in current:
            current.clear()
            current[data_seed] = prepare(method, point_block(point, grid.seed, data_seed, bound), kernel)
        return current[data_seed]

    if point.scenario in SEARCHED_FAMILIES:
        prepared = prepared_for(0)
        scenarios = [find_evading_double_fault(prepared, n) for n in range(min(out_length, grid.trials))]
    else:
        scenarios = scenario_family(
            point.scenario,
            carried_streams=method.carried_streams,
            word_bits=point.word_bits,
            length=out_length,
            trials=grid.trials,
            seed=grid.seed,
        )

    rows = [SweepRow(point, evaluate(prepared_for(s.seed), s)) for s in scenarios]
    logger.info(
        "网格点完成",
        method=point.method,
        m_streams=point.m_streams,
        word_bits=point.word_bits,
        length=point.length,
        kernel=point.kernel,
        scenario=point.scenario,
        trials=len(rows),
    )
    return rows


def summarize(point: GridPoint, rows: List[SweepRow]) -> SweepSummary:
    outcomes = [row.outcome for row in rows]
    return SweepSummary(
        point=point,
        trials=len(outcomes),
        detected=sum(o.detected for o in outcomes),
        recovered=sum(o.recovered for o in outcomes),
        correct=sum(o.outputs_correct for o in outcomes),
        guaranteed=sum(o.guaranteed for o in outcomes),
        violations=sum(not o.guarantee_held for o in outcomes),
    )


def sweep(
    grid: SweepGrid,
    max_workers: Optional[int] = None,
    manager: Optional[MethodManager] = None,
) -> SweepResult:
    """
    在网格上执行全部试验

    Args:
        grid: 扫描网格
        max_workers: 线程数，默认取配置 MAX_WORKERS
        manager: 方法管理器，默认注册纠缠与ABFT

    Returns:
        SweepResult: 按网格顺序排列的逐试验结果与逐点汇总
    """
    manager = manager or create_default_manager()
    workers = max_workers or get_settings().MAX_WORKERS
    points = grid.points()
    # 方法实例先在主线程中创建，工作线程只读取缓存
    for point in points:
        manager.create_method(point.method, point.m_streams, point.word_bits)

    logger.info("开始扫描", points=len(points), workers=workers, seed=grid.seed)
    with ThreadPoolExecutor(max_workers=workers) as executor:
        per_point = list(executor.map(lambda p: run_point(p, grid, manager), points))

    rows = [row for point_rows in per_point for row in point_rows]
    summaries = [summarize(point, point_rows) for point, point_rows in zip(points, per_point)]
    result = SweepResult(rows, summaries)
    logger.info("扫描完成", rows=len(rows), violations=len(result.violations))
    return result
