#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
单校验和ABFT基线
================

在M条数据流之外附加一条校验和流 r_n = Σ_m c_{m,n}，与数据一起处理，
处理后比较 Σ_m d_{m,n} 与校验和输出 e_n。流编号M代表校验和流。
"""

from dataclasses import dataclass, field
from typing import FrozenSet, Optional, Tuple

import numpy as np

from core.errors import (
    ConfigurationError,
    DynamicRangeError,
    ShapeError,
    StreamIndexError,
    StreamUnavailableError,
    UnrecoverableError,
)
from core.types import SUPPORTED_WORD_BITS, FaultCheckResult, StreamBlock, as_word_array
from kernels.kernel import KernelKind, LsbKernel, RangeCertificate
from kernels.operators import apply_rows, output_bound
from utils.logger import get_logger


logger = get_logger("entangle.abft")


def checksum_bits(m_streams: int) -> int:
    """校验和相对数据多占用的位数 ⌈log₂M⌉"""
    return (m_streams - 1).bit_length()


def abft_dynamic_range(m_streams: int, word_bits: int) -> Tuple[int, int]:
    """
    ABFT允许的输入/输出对称区间：±(2^{w-⌈log₂M⌉-1} - 1)

    Args:
        m_streams: 数据流数M
        word_bits: 字长w

    Returns:
        Tuple[int, int]: (-hi, hi)
    """
    if word_bits not in SUPPORTED_WORD_BITS:
        raise ConfigurationError(f"字长只支持32或64位, 实际为 {word_bits}")
    if m_streams < 1:
        raise ConfigurationError(f"流数必须为正, 实际为 {m_streams}")
    hi = (1 << (word_bits - checksum_bits(m_streams) - 1)) - 1
    return -hi, hi


@dataclass(frozen=True, eq=False)
class AbftBlock:
    """
    M条数据流加一条校验和流

    Attributes:
        data: M×N 数据流
        checksum: 长度N的校验和流
        word_bits: 字长w
        absent: 缺失的流编号，M表示校验和流
    """

    data: np.ndarray
    checksum: np.ndarray
    word_bits: int = 32
    absent: FrozenSet[int] = field(default_factory=frozenset)

    def __post_init__(self):
        data = as_word_array(self.data, self.word_bits)
        checksum = as_word_array(self.checksum, self.word_bits)
        if data.ndim != 2 or checksum.shape != (data.shape[1],):
            raise ShapeError(f"数据形状 {data.shape} 与校验和形状 {checksum.shape} 不匹配")
        absent = frozenset(int(s) for s in self.absent)
        for s in absent:
            if not 0 <= s <= data.shape[0]:
                raise StreamIndexError(f"缺失流编号 {s} 越界 (M={data.shape[0]})")
            if s == data.shape[0]:
                checksum[:] = 0
            else:
                data[s, :] = 0
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "checksum", checksum)
        object.__setattr__(self, "absent", absent)

    @property
    def m_streams(self) -> int:
        return int(self.data.shape[0])

    @property
    def length(self) -> int:
        return int(self.data.shape[1])

    def mark_absent(self, index: int) -> "AbftBlock":
        """返回把流index标记为缺失后的新块（index为M时表示校验和流）"""
        if not 0 <= index <= self.m_streams:
            raise StreamIndexError(f"流编号 {index} 越界 (M={self.m_streams})")
        return AbftBlock(self.data, self.checksum, self.word_bits, self.absent | {index})


def abft_encode(block: StreamBlock, word_bits: Optional[int] = None) -> AbftBlock:
    """
    计算并附加校验和流

    Args:
        block: M条明文流
        word_bits: 字长，默认沿用block的字长

    Returns:
        AbftBlock: 原始数据不变，附加校验和

    Raises:
        DynamicRangeError: 输入超出 w-⌈log₂M⌉ 位，校验和可能溢出
    """
    w = block.word_bits if word_bits is None else word_bits
    data = as_word_array(block.data, w)
    lo, hi = abft_dynamic_range(block.m_streams, w)
    bad = np.asarray((data < lo) | (data > hi), dtype=bool)
    if bad.any():
        m, n = (int(i) for i in np.argwhere(bad)[0])
        raise DynamicRangeError(m, n, int(data[m, n]), lo, hi)
    return AbftBlock(data, data.sum(axis=0), w)


def certify_abft(m_streams: int, word_bits: int, kernel: LsbKernel, input_bound: int) -> RangeCertificate:
    """ABFT版本的范围认证：输出上界不超过ABFT动态范围时校验和不会溢出"""
    _, hi = abft_dynamic_range(m_streams, word_bits)
    bound = output_bound(kernel, int(input_bound))
    return RangeCertificate(int(input_bound), bound, hi, bound <= hi)


def abft_apply(block: AbftBlock, kernel: LsbKernel) -> AbftBlock:
    """
    对全部M+1条流执行LSB算子

    加减常数时校验和流的操作数为 M·g，使校验和关系保持成立。

    Raises:
        ShapeError: 操作数与流长度不兼容
    """
    data = apply_rows(block.data, kernel)
    operand = None
    if kernel.op_kind in (KernelKind.ADD_CONST, KernelKind.SUB_CONST):
        operand = as_word_array(kernel.operand, block.word_bits) * block.m_streams
    checksum = apply_rows(block.checksum.reshape(1, -1), kernel, operand)[0]
    return AbftBlock(data, checksum, block.word_bits, block.absent)


def abft_check(block: AbftBlock) -> FaultCheckResult:
    """
    位置n被标记当且仅当 Σ_m d_{m,n} ≠ e_n

    Raises:
        StreamUnavailableError: 存在缺失流
    """
    if block.absent:
        raise StreamUnavailableError(f"流 {sorted(block.absent)} 已缺失, 无法校验")
    result = FaultCheckResult.from_residual(block.data.sum(axis=0) - block.checksum)
    if not result.clean:
        logger.debug("校验和不一致", positions=len(result.fault_positions))
    return result


def abft_recover(block: AbftBlock) -> StreamBlock:
    """
    用校验和减去其余数据流恢复缺失的一条数据流

    Returns:
        StreamBlock: 完整的M条输出

    Raises:
        UnrecoverableError: 缺失多于一条流
    """
    if len(block.absent) > 1:
        raise UnrecoverableError(f"缺失了 {len(block.absent)} 条流 {sorted(block.absent)}, 最多只能恢复一条")

    data = block.data.copy()
    missing = [s for s in block.absent if s < block.m_streams]
    if missing:
        s = missing[0]
        others = np.delete(data, s, axis=0)
        data[s] = block.checksum - others.sum(axis=0)
        logger.debug("ABFT恢复缺失数据流", stream=s)
    return StreamBlock(data, block.word_bits)
