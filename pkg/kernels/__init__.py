#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
LSB算子层
=========
"""

from .factory import KERNEL_NAMES, make_kernel
from .kernel import KernelKind, LsbKernel, RangeCertificate
from .operators import (
    apply_entangled,
    apply_entangled_chain,
    apply_plain,
    apply_plain_chain,
    apply_rows,
    certify_chain,
    certify_range,
    max_input_bound,
    output_bound,
)

__all__ = [
    "KERNEL_NAMES",
    "make_kernel",
    "KernelKind",
    "LsbKernel",
    "RangeCertificate",
    "apply_entangled",
    "apply_entangled_chain",
    "apply_plain",
    "apply_plain_chain",
    "apply_rows",
    "certify_chain",
    "certify_range",
    "max_input_bound",
    "output_bound",
]
