#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
核心数据类型
============

纠缠参数、明文流块、纠缠流块与故障检查结果。

字长为32位时，样本保存在 ``numpy.int64`` 数组中，解纠缠所需的双字长临时量正好落在64位内；
字长为64位时，样本保存在元素为Python整数的object数组中，由任意精度整数承担128位临时量。
"""

from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, Optional, Sequence, Tuple

import numpy as np

from core.errors import ConfigurationError, ShapeError, StreamIndexError, StreamUnavailableError


SUPPORTED_WORD_BITS = (32, 64)


def word_dtype(word_bits: int):
    """
    返回给定字长使用的numpy数据类型

    Args:
        word_bits: 字长w

    Returns:
        np.int64 或 object
    """
    if word_bits == 32:
        return np.int64
    if word_bits == 64:
        return object
    raise ConfigurationError(f"字长只支持32或64位, 实际为 {word_bits}")


def as_word_array(values, word_bits: int) -> np.ndarray:
    """
    把整数数据转换为给定字长使用的数组表示（总是返回新数组）

    Args:
        values: 任意可转换为整数数组的数据
        word_bits: 字长w

    Returns:
        np.ndarray: int64数组或Python整数object数组

    Raises:
        ShapeError: 数据不是整数
    """
    arr = np.asarray(values)
    if arr.dtype == object:
        if not all(isinstance(v, (int, np.integer)) for v in arr.flat):
            raise ShapeError("流数据必须是整数")
    elif arr.dtype.kind not in "iub":
        raise ShapeError(f"流数据必须是整数, 实际类型为 {arr.dtype}")

    dtype = word_dtype(word_bits)
    if dtype is object:
        out = np.empty(arr.shape, dtype=object)
        out.flat[:] = [int(v) for v in arr.flat]
        return out
    return arr.astype(np.int64, copy=True)


def shift_left(values, bits: int):
    """算术左移，以乘以2的幂实现，对int64数组和object数组都适用"""
    return values * (1 << bits)


def signed_word_limits(word_bits: int) -> Tuple[int, int]:
    """w位有符号整数的取值范围"""
    return -(1 << (word_bits - 1)), (1 << (word_bits - 1)) - 1


@dataclass(frozen=True)
class EntanglementConfig:
    """
    纠缠参数 (M, w, l, k)

    Attributes:
        m_streams: 流数M
        word_bits: 字长w
        shift_bits: 相邻流叠加时的移位量l
        guard_bits: 保护位数k
    """

    m_streams: int
    word_bits: int
    shift_bits: int
    guard_bits: int

    def __post_init__(self):
        m, w, l, k = self.m_streams, self.word_bits, self.shift_bits, self.guard_bits
        if m < 3:
            raise ConfigurationError(f"流数M必须不小于3, 实际为 {m}")
        if w not in SUPPORTED_WORD_BITS:
            raise ConfigurationError(f"字长只支持32或64位, 实际为 {w}")
        if l < 1 or k < 1 or k > l:
            raise ConfigurationError(f"需要 1 <= k <= l, 实际 l={l}, k={k}")
        if (m - 1) * l + k > w:
            raise ConfigurationError(f"(M-1)l+k = {(m - 1) * l + k} 超过字长 {w}")

    @property
    def usable_bits(self) -> int:
        """每个输出可用的位宽 (M-2)l+k"""
        return (self.m_streams - 2) * self.shift_bits + self.guard_bits

    @property
    def extraction_bits(self) -> int:
        """双字长临时量中低位部分的宽度 (M-1)l"""
        return (self.m_streams - 1) * self.shift_bits

    @property
    def entangled_bits(self) -> int:
        """纠缠样本的位宽上限 (M-1)l+k（不含符号位）"""
        return self.extraction_bits + self.guard_bits

    @property
    def output_limit(self) -> int:
        """
        明文输入/输出允许的最大绝对值

        取两种范围公式中较小的一个；l=1时退化为0。
        """
        m, l, k = self.m_streams, self.shift_bits, self.guard_bits
        hi = (1 << ((m - 3) * l + k)) * ((1 << (l - 1)) - 1)
        if m == 3:
            hi = min(hi, (1 << (l + k - 1)) - (1 << l))
        return max(hi, 0)


@dataclass(frozen=True, eq=False)
class StreamBlock:
    """
    M条等长的明文整数流

    Attributes:
        data: M×N 整数矩阵
        word_bits: 字长w，决定内部数组表示
    """

    data: np.ndarray
    word_bits: int = 32

    def __post_init__(self):
        arr = as_word_array(self.data, self.word_bits)
        if arr.ndim != 2:
            raise ShapeError(f"流块必须是二维矩阵, 实际维度为 {arr.ndim}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ShapeError(f"流块至少需要一条流和一个样本, 实际形状为 {arr.shape}")
        object.__setattr__(self, "data", arr)

    @classmethod
    def from_rows(cls, rows: Sequence[Iterable[int]], word_bits: int = 32) -> "StreamBlock":
        """从逐流的整数序列构造"""
        return cls(np.array([list(r) for r in rows], dtype=object), word_bits)

    @property
    def m_streams(self) -> int:
        return int(self.data.shape[0])

    @property
    def length(self) -> int:
        return int(self.data.shape[1])

    def max_magnitude(self) -> int:
        """所有样本的最大绝对值"""
        return int(np.max(np.abs(self.data)))

    def equals(self, other: "StreamBlock") -> bool:
        """逐元素精确比较"""
        return self.data.shape == other.data.shape and bool(np.all(self.data == other.data))

    def to_lists(self):
        return [[int(v) for v in row] for row in self.data]


@dataclass(frozen=True, eq=False)
class EntangledBlock:
    """
    M条纠缠流及产生它们的参数

    Attributes:
        data: M×N 纠缠样本矩阵
        config: 纠缠参数
        absent: 被标记为缺失（fail-stop）的流编号，对应行恒为0且不可读取
        magnitude_bound: 该块所代表的明文样本的最大绝对值上界，用于算子认证；
            未知时取动态范围上限
    """

    data: np.ndarray
    config: EntanglementConfig
    absent: FrozenSet[int] = field(default_factory=frozenset)
    magnitude_bound: Optional[int] = None

    def __post_init__(self):
        arr = as_word_array(self.data, self.config.word_bits)
        if arr.ndim != 2 or arr.shape[0] != self.config.m_streams or arr.shape[1] < 1:
            raise ShapeError(
                f"纠缠块形状应为 ({self.config.m_streams}, N>=1), 实际为 {arr.shape}"
            )
        absent = frozenset(int(s) for s in self.absent)
        for s in absent:
            if not 0 <= s < self.config.m_streams:
                raise StreamIndexError(f"缺失流编号 {s} 越界 (M={self.config.m_streams})")
            arr[s, :] = 0
        bound = self.config.output_limit if self.magnitude_bound is None else int(self.magnitude_bound)
        object.__setattr__(self, "data", arr)
        object.__setattr__(self, "absent", absent)
        object.__setattr__(self, "magnitude_bound", bound)

    @property
    def m_streams(self) -> int:
        return self.config.m_streams

    @property
    def length(self) -> int:
        return int(self.data.shape[1])

    def stream(self, index: int) -> np.ndarray:
        """
        读取一条纠缠流

        Raises:
            StreamIndexError: 编号越界
            StreamUnavailableError: 该流已被标记为缺失
        """
        if not 0 <= index < self.m_streams:
            raise StreamIndexError(f"流编号 {index} 越界 (M={self.m_streams})")
        if index in self.absent:
            raise StreamUnavailableError(f"流 {index} 已缺失, 不能读取")
        return self.data[index]

    def with_data(self, data, magnitude_bound: Optional[int] = None) -> "EntangledBlock":
        """用新数据构造同参数、同缺失标记的纠缠块"""
        return EntangledBlock(data, self.config, self.absent, magnitude_bound)

    def mark_absent(self, index: int) -> "EntangledBlock":
        """返回把流index标记为缺失后的新块"""
        if not 0 <= index < self.m_streams:
            raise StreamIndexError(f"流编号 {index} 越界 (M={self.m_streams})")
        return EntangledBlock(self.data, self.config, self.absent | {index}, self.magnitude_bound)


@dataclass(frozen=True)
class FaultCheckResult:
    """
    故障检查结果

    Attributes:
        clean: 是否没有位置未通过检查
        fault_positions: 未通过检查的样本位置（升序）
    """

    clean: bool
    fault_positions: Tuple[int, ...] = ()

    def __post_init__(self):
        positions = tuple(int(n) for n in self.fault_positions)
        object.__setattr__(self, "fault_positions", positions)
        if self.clean != (len(positions) == 0):
            raise ValueError("clean 必须当且仅当 fault_positions 为空")

    @classmethod
    def from_residual(cls, residual: np.ndarray) -> "FaultCheckResult":
        """由逐位置残差构造：残差非零的位置视为故障"""
        positions = tuple(int(n) for n in np.flatnonzero(np.asarray(residual != 0, dtype=bool)))
        return cls(clean=not positions, fault_positions=positions)
