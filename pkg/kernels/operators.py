#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
LSB算子执行与动态范围认证
=========================

同一个算子既可作用于明文流块，也可不加修改地作用于纠缠流块（加减常数除外，
其操作数需先与自身纠缠 g ← (g << l) + g）。作用于纠缠块之前必须先通过最坏情况的范围认证。
"""

from typing import List, Optional, Sequence

import numpy as np

from core.entanglement import dynamic_range
from core.errors import CertificationError, ShapeError
from core.types import EntangledBlock, EntanglementConfig, StreamBlock, as_word_array, shift_left
from kernels.kernel import KernelKind, LsbKernel, RangeCertificate
from utils.logger import get_logger


logger = get_logger("entangle.kernels")


def _circulant(taps: np.ndarray, length: int, correlate: bool) -> np.ndarray:
    """
    构造 N×N 循环矩阵 G，使 d = c · G

    卷积: G[j, n] = g[(n - j) mod N]；互相关: G[i, n] = g[(i - n) mod N]
    """
    padded = np.zeros(length, dtype=taps.dtype)
    padded[: taps.size] = taps
    j = np.arange(length)[:, None]
    n = np.arange(length)[None, :]
    index = (j - n) % length if correlate else (n - j) % length
    return padded[index]


def apply_rows(data: np.ndarray, kernel: LsbKernel, operand: Optional[np.ndarray] = None) -> np.ndarray:
    """
    把算子逐行作用于 R×N 矩阵

    Args:
        data: 每行一条流
        kernel: LSB算子
        operand: 覆盖 kernel.operand 的操作数（用于纠缠后的加减常数）

    Returns:
        np.ndarray: R×N_out 结果，数据类型与data一致
    """
    if data.ndim != 2:
        raise ShapeError(f"需要二维数据, 实际维度为 {data.ndim}")
    rows, length = data.shape
    out_length = kernel.output_length(length)
    g = kernel.operand if operand is None else operand
    g = g.astype(object) if data.dtype == object else g.astype(np.int64)
    kind = kernel.op_kind

    if kind is KernelKind.ADD_CONST:
        return data + g
    if kind is KernelKind.SUB_CONST:
        return data - g
    if kind is KernelKind.SCALE:
        return data * g
    if kind is KernelKind.PERMUTATION:
        return data[:, kernel.operand.astype(np.int64)]
    if kind is KernelKind.INNER_PRODUCT:
        return (data @ g).reshape(rows, 1)
    if kind is KernelKind.CIRCULAR_CONVOLUTION:
        return data @ _circulant(g, length, correlate=False)
    if kind is KernelKind.CROSS_CORRELATION:
        return data @ _circulant(g, length, correlate=True)

    k_dim = g.shape[0]
    blocks = data.reshape(rows, length // k_dim, k_dim)
    return (blocks @ g).reshape(rows, out_length)


def output_bound(kernel: LsbKernel, input_bound: int) -> int:
    """
    最坏情况下的输出最大绝对值

    Args:
        kernel: LSB算子
        input_bound: 输入最大绝对值 (>= 0)
    """
    if input_bound < 0:
        raise ValueError(f"input_bound 必须非负, 实际为 {input_bound}")
    if kernel.op_kind in (KernelKind.ADD_CONST, KernelKind.SUB_CONST):
        return input_bound + kernel.max_abs
    return input_bound * kernel.gain


def certify_range(config: EntanglementConfig, kernel: LsbKernel, input_bound: int) -> RangeCertificate:
    """
    认证算子在给定输入上界下不会让纠缠表示溢出

    Args:
        config: 纠缠参数
        kernel: LSB算子
        input_bound: 输入最大绝对值

    Returns:
        RangeCertificate: admissible 当且仅当 output_bound 不超过动态范围上限
    """
    _, hi = dynamic_range(config)
    bound = output_bound(kernel, int(input_bound))
    return RangeCertificate(int(input_bound), bound, hi, bound <= hi)


def certify_chain(
    config: EntanglementConfig,
    kernels: Sequence[LsbKernel],
    input_bound: int,
) -> List[RangeCertificate]:
    """
    逐级认证算子链，每一级的输出上界作为下一级的输入上界

    Returns:
        List[RangeCertificate]: 每一级的认证结果
    """
    certificates = []
    bound = int(input_bound)
    for kernel in kernels:
        certificate = certify_range(config, kernel, bound)
        certificates.append(certificate)
        bound = certificate.output_bound
    return certificates


def max_input_bound(kernel: LsbKernel, limit: int) -> int:
    """
    输出不超过limit时算子可以接受的最大输入幅度

    Args:
        kernel: LSB算子
        limit: 允许的输出最大绝对值

    Returns:
        int: 最大输入幅度（不超过limit；无可行输入时为0）
    """
    if kernel.op_kind in (KernelKind.ADD_CONST, KernelKind.SUB_CONST):
        return max(limit - kernel.max_abs, 0)
    gain = kernel.gain
    if gain == 0:
        return limit
    return limit // gain


def apply_plain(block: StreamBlock, kernel: LsbKernel) -> StreamBlock:
    """
    无容错的参考计算 d_m = c_m op g

    Raises:
        ShapeError: 操作数与流长度不兼容
    """
    return StreamBlock(apply_rows(block.data, kernel), block.word_bits)


def _entangled_operand(kernel: LsbKernel, config: EntanglementConfig) -> Optional[np.ndarray]:
    if not kernel.self_entangle_required:
        return None
    g = as_word_array(kernel.operand, config.word_bits)
    return shift_left(g, config.shift_bits) + g


def apply_entangled(block: EntangledBlock, kernel: LsbKernel) -> EntangledBlock:
    """
    直接在纠缠流上执行算子

    Args:
        block: 纠缠流块，其 magnitude_bound 作为认证的输入上界
        kernel: LSB算子

    Returns:
        EntangledBlock: 处理后的纠缠流，缺失流保持缺失

    Raises:
        CertificationError: 算子未通过范围认证
        ShapeError: 操作数与流长度不兼容
    """
    certificate = certify_range(block.config, kernel, block.magnitude_bound)
    if not certificate.admissible:
        raise CertificationError(
            f"{kernel.describe()} 在输入上界 {certificate.input_bound} 下输出上界为 "
            f"{certificate.output_bound}, 超过动态范围 {certificate.limit}",
            certificate,
        )

    data = apply_rows(block.data, kernel, _entangled_operand(kernel, block.config))
    logger.debug(
        "纠缠域算子执行完成",
        kernel=kernel.op_kind.value,
        output_bound=certificate.output_bound,
    )
    return EntangledBlock(data, block.config, block.absent, certificate.output_bound)


def apply_plain_chain(block: StreamBlock, kernels: Sequence[LsbKernel]) -> StreamBlock:
    """依次执行算子链"""
    for kernel in kernels:
        block = apply_plain(block, kernel)
    return block


def apply_entangled_chain(block: EntangledBlock, kernels: Sequence[LsbKernel]) -> EntangledBlock:
    """
    在纠缠流上依次执行算子链

    执行前先整体认证，任何一级不通过都不会开始计算。
    """
    certificates = certify_chain(block.config, kernels, block.magnitude_bound)
    for index, certificate in enumerate(certificates):
        if not certificate.admissible:
            raise CertificationError(
                f"算子链第 {index} 级输出上界 {certificate.output_bound} 超过动态范围 {certificate.limit}",
                certificate,
            )
    for kernel in kernels:
        block = apply_entangled(block, kernel)
    return block
