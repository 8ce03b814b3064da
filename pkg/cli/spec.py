#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
命令行运行规格
==============

把命令行参数整理为经过校验的 RunSpec；任何前置条件不满足都在开始计算前报错
"""

from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from config import get_settings
from core.entanglement import config_for
from cost.model import Workload
from kernels.factory import KERNEL_NAMES
from lab.bench import BENCH_WORKLOADS
from lab.scenarios import SCENARIO_FAMILIES
from lab.sweep import SweepGrid
from methods import METHOD_NAMES


class UsageError(Exception):
    """命令行用法错误"""


def _default_seed() -> int:
    return get_settings().ENTANGLE_SEED


def _default_repetitions() -> int:
    return get_settings().BENCH_REPETITIONS


def _default_word_bits() -> List[int]:
    return [get_settings().DEFAULT_WORD_BITS]


class RunSpec(BaseModel):
    """
    一次命令行调用的完整参数

    Attributes:
        subcommand: table / run / bench / curves
        methods: 容错方法（run）
        m_values: 流数列表
        word_bits: 字长列表
        lengths: 维度N列表
        kernel: 算子名称（run）
        scenario: 场景族（run）
        workloads: 工作负载（bench / curves）
        seed: 随机种子
        repetitions: 基准测试重复次数
        trials: 随机场景族的试验次数
        output: 输出路径，"-" 表示stdout
        output_format: csv 或 text（table）
        grid_file: YAML网格文件（run），提供时覆盖网格相关参数
    """

    model_config = ConfigDict(frozen=True)

    subcommand: Literal["table", "run", "bench", "curves"]
    methods: List[str] = Field(default_factory=lambda: ["entangle"])
    m_values: List[int] = Field(default_factory=lambda: [3])
    word_bits: List[int] = Field(default_factory=_default_word_bits)
    lengths: List[int] = Field(default_factory=lambda: [16])
    kernel: str = "conv"
    scenario: str = "all-bitflips"
    workloads: List[str] = Field(default_factory=lambda: ["gemm"])
    seed: int = Field(default_factory=_default_seed, ge=0)
    repetitions: int = Field(default_factory=_default_repetitions)
    trials: int = Field(default=100, ge=1)
    output: str = "-"
    output_format: Literal["csv", "text"] = "csv"
    grid_file: Optional[str] = None

    @model_validator(mode="after")
    def _check_preconditions(self) -> "RunSpec":
        if not self.m_values or any(m < 3 for m in self.m_values):
            raise ValueError(f"流数M必须不小于3: {self.m_values}")
        if not self.word_bits or any(w not in (32, 64) for w in self.word_bits):
            raise ValueError(f"字长只支持32或64位: {self.word_bits}")
        if not self.lengths or any(n < 1 for n in self.lengths):
            raise ValueError(f"维度N必须为正: {self.lengths}")

        if self.subcommand in ("table", "run", "bench"):
            for m in self.m_values:
                for w in self.word_bits:
                    config_for(m, w)

        if self.subcommand == "run" and self.grid_file is None:
            unknown = [m for m in self.methods if m not in METHOD_NAMES]
            if unknown or not self.methods:
                raise ValueError(f"未知的容错方法: {unknown}, 可选: {list(METHOD_NAMES)} 或 both")
            if self.kernel not in KERNEL_NAMES:
                raise ValueError(f"未知的算子: {self.kernel}, 可选: {list(KERNEL_NAMES)}")
            if self.scenario not in SCENARIO_FAMILIES:
                raise ValueError(f"未知的场景族: {self.scenario}, 可选: {list(SCENARIO_FAMILIES)}")

        if self.subcommand == "bench":
            unknown = [w for w in self.workloads if w not in BENCH_WORKLOADS]
            if unknown:
                raise ValueError(f"未知的基准工作负载: {unknown}, 可选: {list(BENCH_WORKLOADS)}")
            if self.repetitions < 5:
                raise ValueError(f"重复次数必须不少于5, 实际为 {self.repetitions}")
            if len(self.word_bits) != 1:
                raise ValueError(f"基准测试一次只接受一个字长: {self.word_bits}")

        if self.subcommand == "curves":
            known = [w.value for w in Workload]
            unknown = [w for w in self.workloads if w not in known]
            if unknown:
                raise ValueError(f"未知的模型工作负载: {unknown}, 可选: {known}")
        return self

    def to_grid(self) -> SweepGrid:
        """run 子命令的扫描网格"""
        if self.grid_file is not None:
            return SweepGrid.from_yaml(self.grid_file)
        return SweepGrid(
            methods=self.methods,
            m_values=self.m_values,
            word_bits=self.word_bits,
            lengths=self.lengths,
            kernels=[self.kernel],
            scenarios=[self.scenario],
            trials=self.trials,
            seed=self.seed,
        )
