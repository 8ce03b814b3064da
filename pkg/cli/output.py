#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
CSV输出
=======

UTF-8编码、LF换行，路径 "-" 表示stdout
"""

import csv
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Iterable, Iterator, Sequence, TextIO


@contextmanager
def open_output(path: str) -> Iterator[TextIO]:
    """打开输出目标；"-" 时返回stdout且不关闭"""
    if path == "-":
        yield sys.stdout
        sys.stdout.flush()
        return
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with open(target, "w", encoding="utf-8", newline="") as f:
        yield f


def format_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".12g")
    return str(value)


def write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence]) -> int:
    """
    写出带表头的CSV

    Returns:
        int: 写出的数据行数
    """
    count = 0
    with open_output(path) as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_cell(v) for v in row])
            count += 1
    return count


def write_text_table(path: str, header: Sequence[str], rows: Iterable[Sequence]) -> int:
    """写出右对齐的纯文本表格"""
    cells = [[format_cell(v) for v in row] for row in rows]
    widths = [max(len(h), *(len(r[i]) for r in cells)) if cells else len(h) for i, h in enumerate(header)]
    with open_output(path) as f:
        f.write("  ".join(h.rjust(w) for h, w in zip(header, widths)) + "\n")
        for row in cells:
            f.write("  ".join(c.rjust(w) for c, w in zip(row, widths)) + "\n")
    return len(cells)
