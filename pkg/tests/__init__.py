#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Entangle Lab测试模块
====================

纠缠核心、LSB算子、ABFT基线、故障注入实验、运算量模型与命令行的pytest测试
"""
