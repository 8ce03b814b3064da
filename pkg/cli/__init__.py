#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
命令行层
========
"""

from .commands import COMMANDS, cmd_bench, cmd_curves, cmd_run, cmd_table, table_rows
from .spec import RunSpec, UsageError

__all__ = [
    "COMMANDS",
    "cmd_bench",
    "cmd_curves",
    "cmd_run",
    "cmd_table",
    "table_rows",
    "RunSpec",
    "UsageError",
]
