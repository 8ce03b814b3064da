#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
运算计数器
==========

插桩模式下统计纠缠各阶段实际执行的加减法次数，移位与掩码操作不计入。
"""

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, Iterable, Optional


ENTANGLE_STAGE = "entangle"
EXTRACT_STAGE = "extract"
VALIDATE_STAGE = "validate"


@dataclass
class OpCounter:
    """按阶段累计的加减法次数"""

    counts: Dict[str, int] = field(default_factory=lambda: defaultdict(int))

    def tally(self, stage: str, ops: int) -> None:
        self.counts[stage] += int(ops)

    def total(self, stages: Optional[Iterable[str]] = None) -> int:
        """
        汇总计数

        Args:
            stages: 需要汇总的阶段，None表示全部

        Returns:
            int: 运算次数
        """
        if stages is None:
            return sum(self.counts.values())
        return sum(self.counts.get(stage, 0) for stage in stages)

    def reset(self) -> None:
        self.counts.clear()

    def snapshot(self) -> Dict[str, int]:
        return dict(self.counts)
