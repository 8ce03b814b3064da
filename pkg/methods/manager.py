#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
容错方法管理器
==============

负责容错方法的注册与实例化
"""

from typing import Any, Dict, List, Type

from methods.base import ProtectionMethod
from utils.logger import get_logger


class MethodManager:
    """
    容错方法管理器

    按名称注册方法类，按 (名称, M, w) 创建并缓存实例
    """

    def __init__(self):
        """初始化方法管理器"""
        self.logger = get_logger("entangle.method_manager")

        # 注册的方法类
        self.registered_methods: Dict[str, Type[ProtectionMethod]] = {}

        # 已创建的方法实例
        self.active_methods: Dict[tuple, ProtectionMethod] = {}

    def register_method(self, method_class: Type[ProtectionMethod], method_type: str = None):
        """
        注册方法类

        Args:
            method_class: 方法类
            method_type: 方法类型标识符（可选，默认使用类的name属性）
        """
        if method_type is None:
            method_type = method_class.name

        self.registered_methods[method_type] = method_class
        self.logger.debug("已注册容错方法", method=method_type, cls=method_class.__name__)

    def create_method(self, method_type: str, m_streams: int, word_bits: int, **kwargs: Any) -> ProtectionMethod:
        """
        创建（或取回已缓存的）方法实例

        Args:
            method_type: 方法类型
            m_streams: 数据流数M
            word_bits: 字长w
            **kwargs: 传给方法构造函数的其他参数；提供时不使用缓存

        Returns:
            ProtectionMethod: 方法实例

        Raises:
            ValueError: 未注册的方法类型
        """
        if method_type not in self.registered_methods:
            raise ValueError(f"未注册的容错方法: {method_type}")

        key = (method_type, m_streams, word_bits)
        if not kwargs and key in self.active_methods:
            return self.active_methods[key]

        method = self.registered_methods[method_type](m_streams, word_bits, **kwargs)
        if not kwargs:
            self.active_methods[key] = method
        self.logger.debug("已创建容错方法", method=method_type, m_streams=m_streams, word_bits=word_bits)
        return method

    def get_registered_methods(self) -> List[str]:
        """
        获取已注册的方法类型列表

        Returns:
            List[str]: 方法类型列表
        """
        return list(self.registered_methods.keys())

    def get_status(self) -> Dict[str, Any]:
        """
        获取管理器状态

        Returns:
            Dict[str, Any]: 状态信息
        """
        return {
            "registered_methods": self.get_registered_methods(),
            "active_methods": [method.get_info() for method in self.active_methods.values()],
        }


def create_default_manager() -> MethodManager:
    """创建注册了纠缠与ABFT两种方法的管理器"""
    from methods.abft_method import AbftMethod
    from methods.entanglement_method import EntanglementMethod

    manager = MethodManager()
    manager.register_method(EntanglementMethod)
    manager.register_method(AbftMethod)
    return manager
