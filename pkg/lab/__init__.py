#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
故障注入实验层
==============

故障场景、注入、单次试验、参数扫描与基准测试
"""

from .bench import BENCH_WORKLOADS, BenchResult, BenchRow, bench, bench_point
from .injection import flip_bit, inject
from .scenarios import SCENARIO_FAMILIES, FaultKind, FaultScenario, scenario_family
from .sweep import (
    GridPoint,
    SweepGrid,
    SweepResult,
    SweepRow,
    SweepSummary,
    find_evading_double_fault,
    sweep,
)
from .trials import PreparedPipeline, TrialOutcome, evaluate, prepare, run_trial

__all__ = [
    "BENCH_WORKLOADS",
    "BenchResult",
    "BenchRow",
    "bench",
    "bench_point",
    "flip_bit",
    "inject",
    "SCENARIO_FAMILIES",
    "FaultKind",
    "FaultScenario",
    "scenario_family",
    "GridPoint",
    "SweepGrid",
    "SweepResult",
    "SweepRow",
    "SweepSummary",
    "find_evading_double_fault",
    "sweep",
    "PreparedPipeline",
    "TrialOutcome",
    "evaluate",
    "prepare",
    "run_trial",
]
