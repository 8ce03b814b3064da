#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
算子工厂
========

按名称和随机数生成器构造实验用的LSB算子
"""

import math
from typing import Callable, Dict

import numpy as np

from kernels.kernel import KernelKind, LsbKernel


def _identity(length: int, rng: np.random.Generator) -> LsbKernel:
    return LsbKernel(KernelKind.SCALE, np.array(1))


def _add(length: int, rng: np.random.Generator) -> LsbKernel:
    return LsbKernel(KernelKind.ADD_CONST, rng.integers(-8, 9, size=length))


def _sub(length: int, rng: np.random.Generator) -> LsbKernel:
    return LsbKernel(KernelKind.SUB_CONST, rng.integers(-8, 9, size=length))


def _scale(length: int, rng: np.random.Generator) -> LsbKernel:
    return LsbKernel(KernelKind.SCALE, rng.integers(-4, 5, size=length))


def _inner(length: int, rng: np.random.Generator) -> LsbKernel:
    return LsbKernel(KernelKind.INNER_PRODUCT, rng.integers(-3, 4, size=length))


def _perm(length: int, rng: np.random.Generator) -> LsbKernel:
    return LsbKernel(KernelKind.PERMUTATION, rng.permutation(length))


def _conv(length: int, rng: np.random.Generator) -> LsbKernel:
    return LsbKernel(KernelKind.CIRCULAR_CONVOLUTION, rng.integers(-2, 3, size=length))


def _xcorr(length: int, rng: np.random.Generator) -> LsbKernel:
    return LsbKernel(KernelKind.CROSS_CORRELATION, rng.integers(-2, 3, size=length))


def _gemm(length: int, rng: np.random.Generator) -> LsbKernel:
    # N为完全平方数时每条流视为 √N×√N 子块，否则视为 1×N 行向量
    side = math.isqrt(length)
    k_dim = side if side * side == length else length
    p_dim = k_dim
    return LsbKernel(KernelKind.MATRIX_MULTIPLY, rng.integers(-1, 2, size=(k_dim, p_dim)))


KERNEL_BUILDERS: Dict[str, Callable[[int, np.random.Generator], LsbKernel]] = {
    "identity": _identity,
    "add": _add,
    "sub": _sub,
    "scale": _scale,
    "inner": _inner,
    "perm": _perm,
    "conv": _conv,
    "xcorr": _xcorr,
    "gemm": _gemm,
}

KERNEL_NAMES = tuple(KERNEL_BUILDERS)


def make_kernel(name: str, length: int, rng: np.random.Generator) -> LsbKernel:
    """
    构造命名算子

    Args:
        name: 算子名称，见 KERNEL_NAMES
        length: 流长度N
        rng: 随机数生成器

    Returns:
        LsbKernel: 与长度N兼容的算子

    Raises:
        KeyError: 未知的算子名称
    """
    try:
        builder = KERNEL_BUILDERS[name]
    except KeyError:
        raise KeyError(f"未知的算子: {name}, 可选: {', '.join(KERNEL_NAMES)}") from None
    return builder(length, rng)
