#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
ABFT基线层
==========
"""

from .checksum import (
    AbftBlock,
    abft_apply,
    abft_check,
    abft_dynamic_range,
    abft_encode,
    abft_recover,
    certify_abft,
)

__all__ = [
    "AbftBlock",
    "abft_apply",
    "abft_check",
    "abft_dynamic_range",
    "abft_encode",
    "abft_recover",
    "certify_abft",
]
