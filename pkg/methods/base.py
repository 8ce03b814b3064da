#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
容错方法基类
============

定义实验框架中所有容错方法（数值纠缠、ABFT校验和）的统一接口
"""

from abc import ABC, abstractmethod
from typing import Any, Dict

from core.types import FaultCheckResult, StreamBlock
from kernels.kernel import LsbKernel, RangeCertificate
from utils.logger import get_logger


class ProtectionMethod(ABC):
    """
    容错方法基类

    一个方法把M条明文流编码为受保护的块，在受保护的块上执行LSB算子，
    检查瞬时故障，并在单条流fail-stop后恢复全部输出。
    """

    name: str = "base"

    def __init__(self, m_streams: int, word_bits: int, description: str = ""):
        """
        初始化容错方法

        Args:
            m_streams: 数据流数M
            word_bits: 字长w
            description: 方法描述
        """
        self.m_streams = m_streams
        self.word_bits = word_bits
        self.description = description
        self.logger = get_logger(f"entangle.method.{self.name}")

    @property
    @abstractmethod
    def carried_streams(self) -> int:
        """受保护的块中实际计算的流数"""

    @abstractmethod
    def input_limit(self) -> int:
        """输入/输出允许的最大绝对值"""

    @abstractmethod
    def certify(self, kernel: LsbKernel, input_bound: int) -> RangeCertificate:
        """
        认证算子在给定输入上界下是否安全

        Args:
            kernel: LSB算子
            input_bound: 输入最大绝对值

        Returns:
            RangeCertificate: 认证结果
        """

    @abstractmethod
    def encode(self, block: StreamBlock) -> Any:
        """把明文流编码为受保护的块"""

    @abstractmethod
    def apply(self, protected: Any, kernel: LsbKernel) -> Any:
        """在受保护的块上执行算子"""

    @abstractmethod
    def check(self, protected: Any) -> FaultCheckResult:
        """检查瞬时故障"""

    @abstractmethod
    def extract(self, protected: Any) -> StreamBlock:
        """从完整的受保护块中取出明文输出"""

    @abstractmethod
    def recover(self, protected: Any) -> StreamBlock:
        """单条流缺失后恢复全部明文输出"""

    def get_info(self) -> Dict[str, Any]:
        """
        获取方法信息

        Returns:
            Dict[str, Any]: 方法信息
        """
        return {
            "name": self.name,
            "description": self.description,
            "m_streams": self.m_streams,
            "word_bits": self.word_bits,
            "carried_streams": self.carried_streams,
            "input_limit": self.input_limit(),
            "type": self.__class__.__name__,
        }

    def __str__(self) -> str:
        return f"{self.__class__.__name__}(M={self.m_streams}, w={self.word_bits})"

    def __repr__(self) -> str:
        return self.__str__()
