#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
故障场景
========

瞬时故障（比特翻转、数值覆写）与fail-stop（整条流缺失）的描述，以及按族批量生成场景
"""

from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np

from core.types import signed_word_limits


class FaultKind(str, Enum):
    """故障种类"""

    NONE = "none"
    BIT_FLIP = "bit_flip"
    VALUE_OVERWRITE = "value_overwrite"
    STREAM_DROP = "stream_drop"


@dataclass(frozen=True)
class FaultScenario:
    """
    单个故障场景

    Attributes:
        kind: 故障种类
        stream: 被破坏的流编号s
        position: 被破坏的样本位置n（stream_drop与none时为None）
        mask_or_value: 比特翻转的异或掩码，或覆写的新值
        seed: 生成该场景（及其输入数据）所用的种子
        companions: 同时发生的其他故障；非空时场景超出单故障保证范围
    """

    kind: FaultKind
    stream: int = 0
    position: Optional[int] = None
    mask_or_value: int = 0
    seed: int = 0
    companions: Tuple["FaultScenario", ...] = ()

    def __post_init__(self):
        kind = FaultKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if self.stream < 0:
            raise ValueError(f"流编号必须非负, 实际为 {self.stream}")
        if kind is FaultKind.BIT_FLIP and self.mask_or_value == 0:
            raise ValueError("比特翻转的掩码必须非零")
        if kind in (FaultKind.BIT_FLIP, FaultKind.VALUE_OVERWRITE):
            if self.position is None or self.position < 0:
                raise ValueError(f"{kind.value} 需要非负的样本位置")
        elif self.position is not None:
            raise ValueError(f"{kind.value} 不接受样本位置")

    @classmethod
    def none(cls, seed: int = 0) -> "FaultScenario":
        return cls(FaultKind.NONE, seed=seed)

    @classmethod
    def bit_flip(cls, stream: int, position: int, bit: int, seed: int = 0) -> "FaultScenario":
        return cls(FaultKind.BIT_FLIP, stream, position, 1 << bit, seed)

    @classmethod
    def overwrite(cls, stream: int, position: int, value: int, seed: int = 0) -> "FaultScenario":
        return cls(FaultKind.VALUE_OVERWRITE, stream, position, value, seed)

    @classmethod
    def stream_drop(cls, stream: int, seed: int = 0) -> "FaultScenario":
        return cls(FaultKind.STREAM_DROP, stream, seed=seed)

    def with_companion(self, other: "FaultScenario") -> "FaultScenario":
        return FaultScenario(
            self.kind, self.stream, self.position, self.mask_or_value, self.seed,
            self.companions + (other,),
        )

    @property
    def faults(self) -> Tuple["FaultScenario", ...]:
        """本场景包含的全部单个故障"""
        head = FaultScenario(self.kind, self.stream, self.position, self.mask_or_value, self.seed)
        return (head,) + tuple(f for c in self.companions for f in c.faults)

    @property
    def fault_count(self) -> int:
        if self.kind is FaultKind.NONE and not self.companions:
            return 0
        return len(self.faults)

    @property
    def label(self) -> str:
        """用于CSV输出的场景标签"""
        parts = []
        for fault in self.faults:
            if fault.kind is FaultKind.NONE:
                parts.append("none")
            elif fault.kind is FaultKind.STREAM_DROP:
                parts.append(f"stream_drop:s{fault.stream}")
            elif fault.kind is FaultKind.BIT_FLIP:
                parts.append(f"bit_flip:s{fault.stream}:n{fault.position}:x{fault.mask_or_value:x}")
            else:
                parts.append(f"value_overwrite:s{fault.stream}:n{fault.position}:v{fault.mask_or_value}")
        return "+".join(parts)


SCENARIO_FAMILIES = (
    "none",
    "all-bitflips",
    "random-bitflips",
    "overwrite",
    "stream-drop",
    "double-cancel",
)

# 需要针对已处理数据逐位置搜索的族，由 lab.sweep 生成
SEARCHED_FAMILIES = ("double-cancel",)


def scenario_family(
    family: str,
    *,
    carried_streams: int,
    word_bits: int,
    length: int,
    trials: int,
    seed: int,
) -> List[FaultScenario]:
    """
    生成一族故障场景

    Args:
        family: 场景族名称，见 SCENARIO_FAMILIES（double-cancel 除外）
        carried_streams: 实际计算的流数（纠缠为M，ABFT为M+1）
        word_bits: 字长w
        length: 输出长度
        trials: 随机族的场景数
        seed: 随机种子

    Returns:
        List[FaultScenario]: 场景列表；seed 字段标识每个场景使用的输入数据

    Raises:
        ValueError: 未知或需要搜索的场景族
    """
    if family == "none":
        return [FaultScenario.none(seed=i) for i in range(trials)]
    if family == "all-bitflips":
        return [
            FaultScenario.bit_flip(s, n, b)
            for s in range(carried_streams)
            for n in range(length)
            for b in range(word_bits)
        ]
    if family == "stream-drop":
        return [FaultScenario.stream_drop(s) for s in range(carried_streams)]

    rng = np.random.default_rng([seed, carried_streams, word_bits, length])
    if family == "random-bitflips":
        return [
            FaultScenario.bit_flip(
                int(rng.integers(carried_streams)),
                int(rng.integers(length)),
                int(rng.integers(word_bits)),
                seed=i,
            )
            for i in range(trials)
        ]
    if family == "overwrite":
        lo, _ = signed_word_limits(word_bits)
        scenarios = []
        for i in range(trials):
            stream = int(rng.integers(carried_streams))
            position = int(rng.integers(length))
            # 64位取值范围超出 integers 的 int64 上界，分两段拼接
            value = (int(rng.integers(0, 1 << 31)) << (word_bits - 31)) | int(
                rng.integers(0, 1 << (word_bits - 31))
            )
            scenarios.append(FaultScenario.overwrite(stream, position, value + lo, seed=i))
        return scenarios
    raise ValueError(f"未知或需要搜索的场景族: {family}")
