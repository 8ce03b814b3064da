#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
LSB算子描述
===========

线性、半双线性与双射（LSB）算子 d_m = c_m op g 的类型及其动态范围认证结果
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from core.errors import ShapeError


class KernelKind(str, Enum):
    """LSB算子种类"""

    ADD_CONST = "add_const"
    SUB_CONST = "sub_const"
    SCALE = "scale"
    INNER_PRODUCT = "inner_product"
    PERMUTATION = "permutation"
    CIRCULAR_CONVOLUTION = "circular_convolution"
    CROSS_CORRELATION = "cross_correlation"
    MATRIX_MULTIPLY = "matrix_multiply"


ELEMENTWISE_KINDS = (KernelKind.ADD_CONST, KernelKind.SUB_CONST, KernelKind.SCALE)
FILTER_KINDS = (KernelKind.CIRCULAR_CONVOLUTION, KernelKind.CROSS_CORRELATION)


@dataclass(frozen=True, eq=False)
class LsbKernel:
    """
    LSB算子及其操作数g

    Attributes:
        op_kind: 算子种类
        operand: 操作数；逐元素算子可以是标量或长度N的向量，置换为 [0, N) 上的双射，
            矩阵乘为 K×P 矩阵，其余为一维向量（卷积核短于N时补零）
    """

    op_kind: KernelKind
    operand: np.ndarray

    def __post_init__(self):
        kind = KernelKind(self.op_kind)
        operand = np.asarray(self.operand)
        if operand.dtype == object:
            operand = np.array([int(v) for v in operand.flat], dtype=object).reshape(operand.shape)
        elif operand.dtype.kind not in "iub":
            raise ShapeError(f"算子操作数必须是整数, 实际类型为 {operand.dtype}")
        else:
            operand = operand.astype(np.int64)

        if kind in ELEMENTWISE_KINDS:
            if operand.ndim > 1:
                raise ShapeError(f"{kind.value} 的操作数必须是标量或向量")
        elif kind is KernelKind.MATRIX_MULTIPLY:
            if operand.ndim != 2 or 0 in operand.shape:
                raise ShapeError("matrix_multiply 的操作数必须是非空矩阵")
        else:
            if operand.ndim != 1 or operand.size == 0:
                raise ShapeError(f"{kind.value} 的操作数必须是非空向量")
            if kind is KernelKind.PERMUTATION:
                if not np.array_equal(np.sort(operand), np.arange(operand.size)):
                    raise ShapeError("置换操作数必须是 [0, N) 上的双射")

        object.__setattr__(self, "op_kind", kind)
        object.__setattr__(self, "operand", operand)

    @property
    def self_entangle_required(self) -> bool:
        """加减常数时操作数自身也需要纠缠"""
        return self.op_kind in (KernelKind.ADD_CONST, KernelKind.SUB_CONST)

    @property
    def max_abs(self) -> int:
        """操作数的最大绝对值"""
        return int(np.max(np.abs(self.operand)))

    @property
    def gain(self) -> int:
        """
        最坏情况下的输出/输入幅度比

        滤波类与内积为 ‖g‖₁，矩阵乘为列 ℓ1 范数的最大值，缩放为 max|g|，其余为1。
        """
        kind = self.op_kind
        if kind in FILTER_KINDS or kind is KernelKind.INNER_PRODUCT:
            return int(np.sum(np.abs(self.operand)))
        if kind is KernelKind.MATRIX_MULTIPLY:
            return int(np.max(np.sum(np.abs(self.operand), axis=0)))
        if kind is KernelKind.SCALE:
            return self.max_abs
        return 1

    def output_length(self, length: int) -> int:
        """
        输入长度为N时的输出长度

        Raises:
            ShapeError: 操作数与N不兼容
        """
        kind = self.op_kind
        size = self.operand.size
        if kind in ELEMENTWISE_KINDS:
            if self.operand.ndim == 1 and size != length:
                raise ShapeError(f"{kind.value} 的操作数长度 {size} 与流长度 {length} 不一致")
            return length
        if kind in (KernelKind.PERMUTATION, KernelKind.INNER_PRODUCT):
            if size != length:
                raise ShapeError(f"{kind.value} 的操作数长度 {size} 与流长度 {length} 不一致")
            return 1 if kind is KernelKind.INNER_PRODUCT else length
        if kind in FILTER_KINDS:
            if size > length:
                raise ShapeError(f"滤波核长度 {size} 超过流长度 {length}")
            return length
        rows, cols = self.operand.shape
        if length % rows:
            raise ShapeError(f"流长度 {length} 不能按 {rows} 列划分为矩阵")
        return (length // rows) * cols

    def describe(self) -> str:
        return f"{self.op_kind.value}{list(self.operand.shape) or ''}"


@dataclass(frozen=True)
class RangeCertificate:
    """
    动态范围认证结果

    Attributes:
        input_bound: 输入最大绝对值
        output_bound: 最坏情况下输出的最大绝对值
        limit: 允许的最大绝对值
        admissible: output_bound 是否不超过 limit
    """

    input_bound: int
    output_bound: int
    limit: int
    admissible: bool
