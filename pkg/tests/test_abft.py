#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
ABFT校验和基线测试
==================
"""

import numpy as np
import pytest

from abft import (
    AbftBlock,
    abft_apply,
    abft_check,
    abft_dynamic_range,
    abft_encode,
    abft_recover,
    certify_abft,
)
from core import DynamicRangeError, StreamBlock, StreamUnavailableError, UnrecoverableError
from kernels import KERNEL_NAMES, KernelKind, LsbKernel, apply_plain, make_kernel, max_input_bound
from lab.injection import flip_bit


def test_encode_examples():
    assert abft_encode(StreamBlock.from_rows([[1], [2], [3]])).checksum.tolist() == [6]
    assert abft_encode(StreamBlock.from_rows([[0], [0], [0]])).checksum.tolist() == [0]
    assert abft_encode(StreamBlock.from_rows([[1], [-1], [2], [-2]])).checksum.tolist() == [0]


def test_encode_keeps_data_unchanged():
    block = StreamBlock.from_rows([[1, 2], [3, 4], [5, 6]])
    encoded = abft_encode(block)
    assert encoded.data.tolist() == block.to_lists()
    assert encoded.checksum.tolist() == [9, 12]


def test_dynamic_range():
    assert abft_dynamic_range(3, 32) == (-(2 ** 29 - 1), 2 ** 29 - 1)
    assert abft_dynamic_range(8, 32)[1] == 2 ** 28 - 1
    assert abft_dynamic_range(32, 64)[1] == 2 ** 58 - 1


def test_encode_rejects_out_of_range():
    _, hi = abft_dynamic_range(3, 32)
    with pytest.raises(DynamicRangeError) as info:
        abft_encode(StreamBlock.from_rows([[0, 0], [0, hi + 1], [0, 0]]))
    assert (info.value.stream, info.value.position) == (1, 1)


def test_apply_examples():
    encoded = abft_encode(StreamBlock.from_rows([[1], [2], [3]]))
    scaled = abft_apply(encoded, LsbKernel(KernelKind.SCALE, np.array(2)))
    assert scaled.checksum.tolist() == [12]
    assert abft_check(scaled).clean

    delta = abft_encode(StreamBlock.from_rows([[1, 2, 3], [4, 5, 6], [7, 8, 9]]))
    out = abft_apply(delta, LsbKernel(KernelKind.CIRCULAR_CONVOLUTION, np.array([1, 0, 0])))
    assert out.data.tolist() == delta.data.tolist()
    assert out.checksum.tolist() == delta.checksum.tolist()


def test_add_const_scales_checksum_operand():
    encoded = abft_encode(StreamBlock.from_rows([[1, 2], [3, 4], [5, 6]]))
    out = abft_apply(encoded, LsbKernel(KernelKind.ADD_CONST, np.array([10, -10])))
    assert out.checksum.tolist() == [9 + 30, 12 - 30]
    assert abft_check(out).clean


@pytest.mark.parametrize("name", KERNEL_NAMES)
def test_checksum_survives_every_kernel(name):
    rng = np.random.default_rng(KERNEL_NAMES.index(name))
    _, hi = abft_dynamic_range(5, 32)
    for _ in range(50):
        kernel = make_kernel(name, 16, rng)
        bound = max_input_bound(kernel, hi)
        block = StreamBlock(rng.integers(-bound, bound + 1, size=(5, 16)))
        assert certify_abft(5, 32, kernel, bound).admissible
        out = abft_apply(abft_encode(block), kernel)
        assert abft_check(out).clean
        assert out.data.tolist() == apply_plain(block, kernel).to_lists()


def test_check_flags_single_flip_and_misses_compensating_pair():
    encoded = abft_encode(StreamBlock.from_rows([[1, 5], [2, 6], [3, 7]]))
    assert abft_check(encoded).clean

    data = encoded.data.copy()
    data[0, 1] = flip_bit(int(data[0, 1]), 1 << 4, 32)
    assert abft_check(AbftBlock(data, encoded.checksum)).fault_positions == (1,)

    checksum = encoded.checksum.copy()
    checksum[0] = flip_bit(int(checksum[0]), 1 << 31, 32)
    assert abft_check(AbftBlock(encoded.data, checksum)).fault_positions == (0,)

    data = encoded.data.copy()
    data[0, 0] += 4
    data[1, 0] -= 4
    assert abft_check(AbftBlock(data, encoded.checksum)).clean


def test_recover_examples():
    encoded = abft_encode(StreamBlock.from_rows([[1], [2], [3]]))
    assert abft_recover(encoded.mark_absent(1)).to_lists() == [[1], [2], [3]]
    # 只丢失校验和时数据原样返回
    assert abft_recover(encoded.mark_absent(3)).to_lists() == [[1], [2], [3]]
    assert abft_recover(encoded).to_lists() == [[1], [2], [3]]


def test_recover_rejects_two_absent_streams():
    encoded = abft_encode(StreamBlock.from_rows([[1], [2], [3]]))
    with pytest.raises(UnrecoverableError):
        abft_recover(encoded.mark_absent(0).mark_absent(3))


def test_check_rejects_absent_stream():
    encoded = abft_encode(StreamBlock.from_rows([[1], [2], [3]]))
    with pytest.raises(StreamUnavailableError):
        abft_check(encoded.mark_absent(0))


def test_64_bit_words():
    _, hi = abft_dynamic_range(4, 64)
    block = StreamBlock.from_rows([[hi], [hi], [-hi], [hi]], 64)
    encoded = abft_encode(block)
    assert encoded.checksum.tolist() == [2 * hi]
    assert abft_recover(encoded.mark_absent(2)).equals(block)
