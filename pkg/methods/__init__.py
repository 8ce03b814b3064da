#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
容错方法层
==========
"""

from .abft_method import AbftMethod
from .base import ProtectionMethod
from .entanglement_method import EntanglementMethod
from .manager import MethodManager, create_default_manager

METHOD_NAMES = (EntanglementMethod.name, AbftMethod.name)

__all__ = [
    "AbftMethod",
    "ProtectionMethod",
    "EntanglementMethod",
    "MethodManager",
    "create_default_manager",
    "METHOD_NAMES",
]
