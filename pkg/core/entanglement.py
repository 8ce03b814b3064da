#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
数值纠缠核心
============

M条整数流的纠缠、排除任一条流的解纠缠、瞬时故障校验与fail-stop恢复。

记 δ_m = d_m + (d_{m-1} << l)（下标模M）。排除流r时，以 s_i = (r+1+i) mod M 把其余
M-1条流按交替符号移位求和：

    d_temp = σ · Σ_{i=0}^{M-2} (-1)^i (δ_{s_i} << (M-2-i)l) = σ·2^{(M-1)l}·d_r + d_{r-1},  σ = (-1)^M

低 (M-1)l 位的符号扩展给出 d_{r-1}，剩余部分右移给出 d_r，其余输出按级联逐个减去。
"""

from typing import Optional, Tuple

import numpy as np

from config import get_settings
from core.counters import ENTANGLE_STAGE, EXTRACT_STAGE, VALIDATE_STAGE, OpCounter
from core.errors import (
    ConfigurationError,
    DynamicRangeError,
    ShapeError,
    StreamIndexError,
    StreamUnavailableError,
    UnrecoverableError,
)
from core.types import (
    SUPPORTED_WORD_BITS,
    EntangledBlock,
    EntanglementConfig,
    FaultCheckResult,
    StreamBlock,
    as_word_array,
    shift_left,
)
from utils.logger import get_logger


logger = get_logger("entangle.core")


def config_for(m_streams: int, word_bits: int) -> EntanglementConfig:
    """
    为给定流数和字长选择 (l, k)

    在 (M-1)l+k <= w 且 1 <= k <= l 的约束下使 (M-2)l+k 最大；并列时取较大的l。

    Args:
        m_streams: 流数M (>= 3)
        word_bits: 字长w (32或64)

    Returns:
        EntanglementConfig: 最优参数

    Raises:
        ConfigurationError: 参数不合法或M对w来说过大
    """
    if m_streams < 3:
        raise ConfigurationError(f"流数M必须不小于3, 实际为 {m_streams}")
    if word_bits not in SUPPORTED_WORD_BITS:
        raise ConfigurationError(f"字长只支持32或64位, 实际为 {word_bits}")

    best: Optional[Tuple[int, int, int]] = None
    for l in range(1, word_bits + 1):
        k = min(l, word_bits - (m_streams - 1) * l)
        if k < 1:
            break
        score = (m_streams - 2) * l + k
        if best is None or score >= best[0]:
            best = (score, l, k)

    if best is None:
        raise ConfigurationError(f"M={m_streams} 对 {word_bits} 位字长不可行")
    _, l, k = best
    return EntanglementConfig(m_streams, word_bits, l, k)


def dynamic_range(config: EntanglementConfig) -> Tuple[int, int]:
    """
    明文输入/输出允许的对称区间 [lo, hi]

    Args:
        config: 纠缠参数

    Returns:
        Tuple[int, int]: (-hi, hi)
    """
    hi = config.output_limit
    return -hi, hi


def _first_out_of_range(data: np.ndarray, lo: int, hi: int) -> Optional[Tuple[int, int]]:
    bad = np.asarray((data < lo) | (data > hi), dtype=bool)
    if not bad.any():
        return None
    m, n = np.argwhere(bad)[0]
    return int(m), int(n)


def entangle(
    block: StreamBlock,
    config: EntanglementConfig,
    counter: Optional[OpCounter] = None,
) -> EntangledBlock:
    """
    纠缠M条输入流: ε_m = (c_{m-1} << l) + c_m

    Args:
        block: M条明文流
        config: 纠缠参数
        counter: 可选的运算计数器

    Returns:
        EntangledBlock: 同形状的纠缠流

    Raises:
        ShapeError: 流数与M不一致
        DynamicRangeError: 存在超出动态范围的样本
    """
    if block.m_streams != config.m_streams:
        raise ShapeError(f"需要 {config.m_streams} 条流, 实际为 {block.m_streams}")

    c = as_word_array(block.data, config.word_bits)
    lo, hi = dynamic_range(config)
    bad = _first_out_of_range(c, lo, hi)
    if bad is not None:
        m, n = bad
        raise DynamicRangeError(m, n, int(c[m, n]), lo, hi)

    eps = shift_left(np.roll(c, 1, axis=0), config.shift_bits) + c
    if counter is not None:
        counter.tally(ENTANGLE_STAGE, c.size)

    logger.debug("纠缠完成", m_streams=config.m_streams, length=block.length)
    return EntangledBlock(eps, config, magnitude_bound=block.max_magnitude())


def _sign_extend(values, bits: int):
    """取低bits位并按补码做符号扩展"""
    full = 1 << bits
    low = values & (full - 1)
    return np.where(np.asarray(low >= (full >> 1), dtype=bool), low - full, low)


def _check_excluded(block: EntangledBlock, excluded: int) -> None:
    if not 0 <= excluded < block.m_streams:
        raise StreamIndexError(f"排除流编号 {excluded} 越界 (M={block.m_streams})")
    missing = block.absent - {excluded}
    if missing:
        raise StreamUnavailableError(
            f"排除流 {excluded} 解纠缠时流 {sorted(missing)} 不可用"
        )


def _disentangle_rows(
    block: EntangledBlock,
    excluded: int,
    counter: Optional[OpCounter],
    fast_path: bool,
) -> np.ndarray:
    config = block.config
    m_streams, l, r = config.m_streams, config.shift_bits, excluded
    length = block.length
    extraction_bits = config.extraction_bits

    out = np.empty_like(block.data)

    if fast_path and m_streams == 3:
        a = block.stream((r + 1) % 3)
        b = block.stream((r + 2) % 3)
        d_temp = b - shift_left(a, l)
        prev = _sign_extend(d_temp, extraction_bits)
        current = (prev - d_temp) >> extraction_bits
        out[r] = current
        out[(r + 1) % 3] = a - shift_left(current, l)
        out[(r + 2) % 3] = prev
        if counter is not None:
            counter.tally(EXTRACT_STAGE, 3 * length)
        return out

    # 符号因子并入各项：σ(-1)^i 为正当且仅当 i 的奇偶与 σ 的符号一致
    sign_positive = m_streams % 2 == 0
    prev_index = (r + m_streams - 1) % m_streams
    # 末项 (i = M-2) 恒为正且不移位，以它作为累加起点
    d_temp = block.stream(prev_index).copy()
    for i in range(m_streams - 2):
        term = shift_left(block.stream((r + 1 + i) % m_streams), (m_streams - 2 - i) * l)
        if (i % 2 == 0) == sign_positive:
            d_temp = d_temp + term
        else:
            d_temp = d_temp - term

    prev = _sign_extend(d_temp, extraction_bits)
    if sign_positive:
        current = (d_temp - prev) >> extraction_bits
    else:
        current = (prev - d_temp) >> extraction_bits
    out[r] = current
    out[prev_index] = prev

    for i in range(1, m_streams - 1):
        index = (r + i) % m_streams
        out[index] = block.stream(index) - shift_left(out[(index - 1) % m_streams], l)

    if counter is not None:
        counter.tally(EXTRACT_STAGE, (2 * m_streams - 3) * length)
    return out


def disentangle_excluding(
    block: EntangledBlock,
    excluded: int,
    counter: Optional[OpCounter] = None,
    fast_path: bool = True,
) -> StreamBlock:
    """
    不读取流r，从其余M-1条纠缠流恢复全部M条明文输出

    Args:
        block: 纠缠流块
        excluded: 被排除的流编号r
        counter: 可选的运算计数器
        fast_path: M=3时使用专用公式（与通用公式逐位一致）

    Returns:
        StreamBlock: 恢复出的M条明文流

    Raises:
        StreamIndexError: r越界
        StreamUnavailableError: r以外的流被标记为缺失
    """
    _check_excluded(block, excluded)
    rows = _disentangle_rows(block, excluded, counter, fast_path)
    return StreamBlock(rows, block.config.word_bits)


def verify(
    block: EntangledBlock,
    excluded: Optional[int] = None,
    counter: Optional[OpCounter] = None,
) -> FaultCheckResult:
    """
    检测瞬时故障

    排除流r解纠缠后重新合成 δ_r，与实际的 δ_r 不一致的位置即为故障位置。
    任一位置上只有一条流被破坏时必能检出，但无法定位是哪条流。

    Args:
        block: 纠缠流块（不能有缺失流）
        excluded: 用于校验的流编号r，默认取配置 DEFAULT_EXCLUDED_STREAM
        counter: 可选的运算计数器

    Returns:
        FaultCheckResult: 检查结果
    """
    r = get_settings().DEFAULT_EXCLUDED_STREAM if excluded is None else excluded
    if not 0 <= r < block.m_streams:
        raise StreamIndexError(f"校验流编号 {r} 越界 (M={block.m_streams})")
    if block.absent:
        raise StreamUnavailableError(f"流 {sorted(block.absent)} 已缺失, 无法校验")

    rows = _disentangle_rows(block, r, counter, fast_path=True)
    l = block.config.shift_bits
    prev = rows[(r - 1) % block.m_streams]
    resynth = rows[r] + shift_left(prev, l)
    residual = block.stream(r) - resynth
    if counter is not None:
        counter.tally(VALIDATE_STAGE, 2 * block.length)

    result = FaultCheckResult.from_residual(residual)
    if not result.clean:
        logger.debug("检测到瞬时故障", excluded=r, positions=len(result.fault_positions))
    return result


def recover_failstop(
    partial: EntangledBlock,
    excluded: Optional[int] = None,
    counter: Optional[OpCounter] = None,
) -> StreamBlock:
    """
    单条流fail-stop后恢复全部输出

    Args:
        partial: 至多一条流被标记为缺失的纠缠块
        excluded: 缺失的流编号；省略时取块上的缺失标记
        counter: 可选的运算计数器

    Returns:
        StreamBlock: 与无故障计算一致的M条输出

    Raises:
        UnrecoverableError: 缺失的流多于一条，或与给定的r不一致
    """
    absent = partial.absent
    if len(absent) > 1:
        raise UnrecoverableError(f"缺失了 {len(absent)} 条流 {sorted(absent)}, 最多只能恢复一条")

    if excluded is None:
        excluded = next(iter(absent)) if absent else get_settings().DEFAULT_EXCLUDED_STREAM
    elif absent and excluded not in absent:
        raise UnrecoverableError(f"流 {sorted(absent)} 缺失, 不能排除流 {excluded} 恢复")

    logger.debug("fail-stop恢复", excluded=excluded)
    return disentangle_excluding(partial, excluded, counter)
