#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
数值纠缠容错方法
================
"""

from typing import Optional

from config import get_settings
from core.entanglement import (
    config_for,
    disentangle_excluding,
    dynamic_range,
    entangle,
    recover_failstop,
    verify,
)
from core.errors import ConfigurationError
from core.types import EntangledBlock, EntanglementConfig, FaultCheckResult, StreamBlock
from kernels.kernel import LsbKernel, RangeCertificate
from kernels.operators import apply_entangled, certify_range
from methods.base import ProtectionMethod


class EntanglementMethod(ProtectionMethod):
    """M条流两两移位叠加，不增加额外的流"""

    name = "entangle"

    def __init__(
        self,
        m_streams: int,
        word_bits: int,
        config: Optional[EntanglementConfig] = None,
        excluded: Optional[int] = None,
    ):
        """
        Args:
            m_streams: 数据流数M
            word_bits: 字长w
            config: 纠缠参数，默认由 config_for 选择
            excluded: 校验和提取时排除的流，默认取配置 DEFAULT_EXCLUDED_STREAM
        """
        super().__init__(m_streams, word_bits, "数值纠缠")
        self.config = config or config_for(m_streams, word_bits)
        if (self.config.m_streams, self.config.word_bits) != (m_streams, word_bits):
            raise ConfigurationError("纠缠参数与方法的 (M, w) 不一致")
        self.excluded = get_settings().DEFAULT_EXCLUDED_STREAM if excluded is None else excluded
        if not 0 <= self.excluded < m_streams:
            raise ConfigurationError(f"排除流编号 {self.excluded} 越界 (M={m_streams})")

    @property
    def carried_streams(self) -> int:
        return self.m_streams

    def input_limit(self) -> int:
        return dynamic_range(self.config)[1]

    def certify(self, kernel: LsbKernel, input_bound: int) -> RangeCertificate:
        return certify_range(self.config, kernel, input_bound)

    def encode(self, block: StreamBlock) -> EntangledBlock:
        return entangle(block, self.config)

    def apply(self, protected: EntangledBlock, kernel: LsbKernel) -> EntangledBlock:
        return apply_entangled(protected, kernel)

    def check(self, protected: EntangledBlock) -> FaultCheckResult:
        return verify(protected, self.excluded)

    def extract(self, protected: EntangledBlock) -> StreamBlock:
        return disentangle_excluding(protected, self.excluded)

    def recover(self, protected: EntangledBlock) -> StreamBlock:
        return recover_failstop(protected)

    def get_info(self):
        info = super().get_info()
        info.update(
            shift_bits=self.config.shift_bits,
            guard_bits=self.config.guard_bits,
            excluded=self.excluded,
        )
        return info
