#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
ABFT校验和容错方法
==================
"""

from abft.checksum import (
    AbftBlock,
    abft_apply,
    abft_check,
    abft_dynamic_range,
    abft_encode,
    abft_recover,
    certify_abft,
)
from core.types import FaultCheckResult, StreamBlock
from kernels.kernel import LsbKernel, RangeCertificate
from methods.base import ProtectionMethod


class AbftMethod(ProtectionMethod):
    """附加一条校验和流的单校验和ABFT"""

    name = "abft"

    def __init__(self, m_streams: int, word_bits: int):
        super().__init__(m_streams, word_bits, "单校验和ABFT")

    @property
    def carried_streams(self) -> int:
        return self.m_streams + 1

    def input_limit(self) -> int:
        return abft_dynamic_range(self.m_streams, self.word_bits)[1]

    def certify(self, kernel: LsbKernel, input_bound: int) -> RangeCertificate:
        return certify_abft(self.m_streams, self.word_bits, kernel, input_bound)

    def encode(self, block: StreamBlock) -> AbftBlock:
        return abft_encode(block, self.word_bits)

    def apply(self, protected: AbftBlock, kernel: LsbKernel) -> AbftBlock:
        return abft_apply(protected, kernel)

    def check(self, protected: AbftBlock) -> FaultCheckResult:
        return abft_check(protected)

    def extract(self, protected: AbftBlock) -> StreamBlock:
        return StreamBlock(protected.data, protected.word_bits)

    def recover(self, protected: AbftBlock) -> StreamBlock:
        return abft_recover(protected)
