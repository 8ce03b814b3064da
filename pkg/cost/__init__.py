#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
运算量模型层
============
"""

from .model import (
    ABFT_RC_CHECK_OVERHEAD,
    CostQuery,
    CurvePoint,
    OverheadEstimate,
    Workload,
    abft_overhead,
    base_cost,
    curves,
    entangle_overhead,
)

__all__ = [
    "ABFT_RC_CHECK_OVERHEAD",
    "CostQuery",
    "CurvePoint",
    "OverheadEstimate",
    "Workload",
    "abft_overhead",
    "base_cost",
    "curves",
    "entangle_overhead",
]
