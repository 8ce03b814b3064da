#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
故障注入
========

把故障场景施加到纠缠块或ABFT块上，返回被破坏的副本（原块不变）
"""

from typing import Union

from abft.checksum import AbftBlock
from core.errors import StreamIndexError
from core.types import EntangledBlock, signed_word_limits
from lab.scenarios import FaultKind, FaultScenario


ProtectedBlock = Union[EntangledBlock, AbftBlock]


def flip_bit(value: int, mask: int, word_bits: int) -> int:
    """
    在w位补码表示上异或掩码

    Args:
        value: 原值（w位有符号整数）
        mask: 异或掩码，必须落在 [1, 2^w) 内
        word_bits: 字长w

    Returns:
        int: 翻转后按w位补码解释的有符号值
    """
    full = 1 << word_bits
    if not 0 < mask < full:
        raise ValueError(f"掩码 {mask:#x} 超出 {word_bits} 位字长")
    flipped = (int(value) & (full - 1)) ^ mask
    return flipped - full if flipped >= full >> 1 else flipped


def _carried(block: ProtectedBlock) -> int:
    if isinstance(block, AbftBlock):
        return block.m_streams + 1
    return block.m_streams


def _word_bits(block: ProtectedBlock) -> int:
    if isinstance(block, AbftBlock):
        return block.word_bits
    return block.config.word_bits


def _rows(block: ProtectedBlock):
    """返回可写的 (数据副本, 校验和副本或None)"""
    if isinstance(block, AbftBlock):
        return block.data.copy(), block.checksum.copy()
    return block.data.copy(), None


def _rebuild(block: ProtectedBlock, data, checksum, absent) -> ProtectedBlock:
    if isinstance(block, AbftBlock):
        return AbftBlock(data, checksum, block.word_bits, absent)
    return EntangledBlock(data, block.config, absent, block.magnitude_bound)


def inject(block: ProtectedBlock, scenario: FaultScenario) -> ProtectedBlock:
    """
    施加场景中的全部故障

    Args:
        block: 纠缠块或ABFT块（ABFT中流编号M表示校验和流）
        scenario: 故障场景

    Returns:
        被破坏的块副本

    Raises:
        StreamIndexError: 流编号或样本位置越界
        ValueError: 掩码超出字长或覆写值不是w位有符号整数
    """
    carried = _carried(block)
    word_bits = _word_bits(block)
    lo, hi = signed_word_limits(word_bits)
    data, checksum = _rows(block)
    absent = set(block.absent)

    for fault in scenario.faults:
        if fault.kind is FaultKind.NONE:
            continue
        if fault.stream >= carried:
            raise StreamIndexError(f"流编号 {fault.stream} 越界 (共 {carried} 条流)")
        if fault.kind is FaultKind.STREAM_DROP:
            absent.add(fault.stream)
            continue
        if fault.position >= data.shape[1]:
            raise StreamIndexError(f"样本位置 {fault.position} 越界 (N={data.shape[1]})")

        row = checksum if fault.stream == data.shape[0] else data[fault.stream]
        current = int(row[fault.position])
        if fault.kind is FaultKind.BIT_FLIP:
            row[fault.position] = flip_bit(current, fault.mask_or_value, word_bits)
        else:
            if not lo <= fault.mask_or_value <= hi:
                raise ValueError(f"覆写值 {fault.mask_or_value} 不是 {word_bits} 位有符号整数")
            row[fault.position] = fault.mask_or_value

    return _rebuild(block, data, checksum, frozenset(absent))
