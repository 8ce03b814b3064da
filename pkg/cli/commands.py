#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
子命令实现
==========

table   重新生成 (l, k) 参数表
run     故障注入扫描，每次试验一行
bench   相对开销基准测试
curves  解析运算量比例曲线

每个子命令返回进程退出码：0 成功，2 出现违反保证的试验。
"""

import sys
from typing import List, Sequence, Tuple

from abft.checksum import checksum_bits
from core.entanglement import config_for
from cost.model import ABFT_RC_CHECK_OVERHEAD, CostQuery, Workload, abft_overhead, curves, entangle_overhead
from lab.bench import bench
from lab.sweep import SweepResult, sweep
from cli.output import write_csv, write_text_table
from cli.spec import RunSpec
from utils.logger import get_logger


logger = get_logger("entangle.cli")

TABLE_M_VALUES = (3, 4, 5, 8, 11, 16, 32)
TABLE_WORD_BITS = (32, 64)

TABLE_HEADER = ("w", "M", "l", "k", "proposed_bits", "abft_bits")
RUN_HEADER = (
    "method", "M", "w", "N", "kernel", "scenario",
    "detected", "recovered", "correct", "ns_encode", "ns_apply", "ns_check",
)
BENCH_HEADER = ("workload", "method", "M", "N", "median_ns", "overhead_pct_vs_plain")
CURVES_HEADER = ("workload", "M", "N", "entangle_ratio", "abft_ratio")

# 诊断输出中最多列出的违反保证的试验数
MAX_REPORTED_VIOLATIONS = 10


def table_rows(word_bits: Sequence[int], m_values: Sequence[int]) -> List[Tuple[int, ...]]:
    """
    参数表的行 (w, M, l, k, (M-2)l+k, w-⌈log₂M⌉)

    Args:
        word_bits: 字长列表
        m_values: 流数列表
    """
    rows = []
    for w in word_bits:
        for m in m_values:
            config = config_for(m, w)
            rows.append((w, m, config.shift_bits, config.guard_bits, config.usable_bits, w - checksum_bits(m)))
    return rows


def cmd_table(spec: RunSpec) -> int:
    rows = table_rows(spec.word_bits, spec.m_values)
    if spec.output_format == "text":
        write_text_table(spec.output, TABLE_HEADER, rows)
    else:
        write_csv(spec.output, TABLE_HEADER, rows)
    return 0


def run_rows(result: SweepResult) -> List[Tuple]:
    rows = []
    for row in result.rows:
        point, outcome = row.point, row.outcome
        rows.append((
            point.method, point.m_streams, point.word_bits, point.length, point.kernel,
            outcome.scenario.label, outcome.detected, outcome.recovered, outcome.outputs_correct,
            outcome.ns_encode, outcome.ns_apply, outcome.ns_check,
        ))
    return rows


def cmd_run(spec: RunSpec) -> int:
    grid = spec.to_grid()
    result = sweep(grid)
    write_csv(spec.output, RUN_HEADER, run_rows(result))

    for summary in result.summaries:
        point = summary.point
        logger.info(
            "网格点汇总",
            method=point.method,
            m_streams=point.m_streams,
            scenario=point.scenario,
            trials=summary.trials,
            detection_rate=round(summary.detection_rate, 6),
            correct_rate=round(summary.correct_rate, 6),
        )

    violations = result.violations
    if violations:
        for row in violations[:MAX_REPORTED_VIOLATIONS]:
            logger.error(
                "违反单故障保证",
                method=row.point.method,
                m_streams=row.point.m_streams,
                scenario=row.outcome.scenario.label,
                detected=row.outcome.detected,
                correct=row.outcome.outputs_correct,
            )
        print(f"❌ {len(violations)} 次试验违反了单故障保证", file=sys.stderr)
        return 2
    return 0


def cmd_bench(spec: RunSpec) -> int:
    word_bits = spec.word_bits[0]
    result = bench(spec.workloads, spec.m_values, spec.lengths, spec.repetitions, spec.seed, word_bits)
    write_csv(
        spec.output,
        BENCH_HEADER,
        ((r.workload, r.method, r.m_streams, r.length, r.median_ns, r.overhead_pct) for r in result.rows),
    )

    print("📊 基准测试汇总", file=sys.stderr)
    for (workload, m_streams), threshold in result.thresholds.items():
        if threshold is None:
            print(f"   {workload} M={m_streams}: ABFT开销未在网格内持续超过纠缠开销", file=sys.stderr)
        else:
            print(f"   {workload} M={m_streams}: N >= {threshold} 时ABFT开销高于纠缠开销", file=sys.stderr)
        model = Workload.GEMM if workload == "gemm" else Workload.CONV_TIME
        for length in spec.lengths:
            q = CostQuery(model, m_streams, length)
            print(
                f"      模型 N={length}: entangle={entangle_overhead(q).ratio:.4%} "
                f"abft={abft_overhead(q).ratio:.4%}",
                file=sys.stderr,
            )
    lo, hi = ABFT_RC_CHECK_OVERHEAD
    print(f"   参考: 行列双校验和ABFT在GEMM上的开销约为 {lo:.1%} - {hi:.1%}", file=sys.stderr)
    return 0


def cmd_curves(spec: RunSpec) -> int:
    rows = []
    for workload in spec.workloads:
        for point in curves(workload, spec.m_values, spec.lengths):
            rows.append((point.workload.value, point.m_streams, point.dimension, point.entangle_ratio, point.abft_ratio))
    write_csv(spec.output, CURVES_HEADER, rows)
    return 0


COMMANDS = {
    "table": cmd_table,
    "run": cmd_run,
    "bench": cmd_bench,
    "curves": cmd_curves,
}
