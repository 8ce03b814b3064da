#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
命令行测试
==========

通过 main(argv) 直接调用，检查CSV输出与退出码
"""

import csv
import io

import pytest

from cli import RunSpec
from cli import commands
from config import get_settings, update_settings
from lab import FaultScenario
from lab.sweep import GridPoint, SweepResult, SweepRow, SweepSummary
from lab.trials import TrialOutcome
from main import main


def read_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_table_reproduces_parameters(capsys):
    assert main(["table"]) == 0
    out = capsys.readouterr().out
    lines = out.splitlines()
    assert lines[0] == "w,M,l,k,proposed_bits,abft_bits"
    assert len(lines) == 1 + 14
    assert "32,3,11,10,21,30" in lines
    assert "32,4,8,8,24,30" in lines
    assert "32,8,4,4,28,29" in lines
    assert "32,16,2,2,30,28" in lines
    assert "32,32,1,1,31,27" in lines
    assert "64,3,22,20,42,62" in lines


def test_table_text_format(capsys):
    assert main(["table", "--w", "32", "--M", "3,4", "--format", "text"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].split() == ["w", "M", "l", "k", "proposed_bits", "abft_bits"]
    assert lines[1].split() == ["32", "3", "11", "10", "21", "30"]


def test_table_writes_file_with_lf_endings(tmp_path, capsys):
    path = tmp_path / "out" / "table.csv"
    assert main(["table", "-o", str(path)]) == 0
    raw = path.read_bytes()
    assert b"\r" not in raw
    assert main(["table"]) == 0
    assert raw.decode("utf-8") == capsys.readouterr().out


def test_run_exhaustive_single_bit_flips(capsys):
    assert main(["run", "--method", "entangle", "--M", "3", "--N", "16", "--kernel", "conv",
                 "--scenario", "all-bitflips", "--seed", "1"]) == 0
    rows = read_csv(capsys.readouterr().out)
    assert len(rows) == 1536
    assert all(row["detected"] == "true" for row in rows)
    assert rows[0]["scenario"] == "bit_flip:s0:n0:x1"
    assert set(rows[0]) == set(commands.RUN_HEADER)


def test_run_both_methods_stream_drop(capsys):
    assert main(["run", "--method", "both", "--M", "3,4", "--scenario", "stream-drop"]) == 0
    rows = read_csv(capsys.readouterr().out)
    assert len(rows) == 3 + 4 + 4 + 5
    assert all(row["recovered"] == "true" and row["correct"] == "true" for row in rows)
    assert [row["method"] for row in rows[:7]] == ["entangle"] * 3 + ["abft"] * 4


def test_run_is_deterministic_for_fixed_seed(capsys):
    argv = ["run", "--method", "both", "--scenario", "random-bitflips", "--trials", "25", "--seed", "9"]
    assert main(argv) == 0
    first = [row[:-3] for row in csv.reader(io.StringIO(capsys.readouterr().out))]
    assert main(argv) == 0
    second = [row[:-3] for row in csv.reader(io.StringIO(capsys.readouterr().out))]
    assert first == second


def test_run_from_grid_file(tmp_path, capsys):
    grid = tmp_path / "grid.yaml"
    grid.write_text("methods: [abft]\nm_values: [5]\nlengths: [4]\nkernels: [perm]\nscenarios: [none]\ntrials: 3\n",
                    encoding="utf-8")
    assert main(["run", "--grid", str(grid)]) == 0
    rows = read_csv(capsys.readouterr().out)
    assert [(r["method"], r["M"], r["kernel"], r["detected"]) for r in rows] == [("abft", "5", "perm", "false")] * 3


@pytest.mark.parametrize(
    "argv",
    [
        ["run", "--M", "2"],
        ["run", "--M", "40"],
        ["run", "--kernel", "fft"],
        ["run", "--method", "tmr"],
        ["run", "--w", "16"],
        ["run", "--N", "0"],
        ["bench", "--repetitions", "3"],
        ["bench", "--workload", "sort"],
        ["bench", "--w", "32,64"],
        ["curves", "--workload", "fft"],
        ["launch"],
        ["table", "--M", "three"],
        [],
    ],
)
def test_usage_errors_exit_with_one(argv, capsys):
    assert main(argv) == 1


def test_bench_spec_takes_one_word_size():
    assert RunSpec(subcommand="bench", word_bits=[64]).word_bits == [64]
    with pytest.raises(ValueError):
        RunSpec(subcommand="bench", word_bits=[32, 64])


def test_help_exits_cleanly(capsys):
    assert main(["--help"]) == 0
    assert "table" in capsys.readouterr().out


def test_violations_exit_with_two(monkeypatch, capsys):
    point = GridPoint("entangle", 3, 32, 16, "conv", "none")
    bad = TrialOutcome("entangle", FaultScenario.none(), detected=True, recovered=False,
                       outputs_correct=True, effective=False)
    summary = SweepSummary(point, trials=1, detected=1, recovered=0, correct=1, guaranteed=1, violations=1)
    monkeypatch.setattr(commands, "sweep", lambda grid: SweepResult([SweepRow(point, bad)], [summary]))
    assert main(["run", "--scenario", "none"]) == 2
    captured = capsys.readouterr()
    assert len(read_csv(captured.out)) == 1
    assert "1" in captured.err


def test_curves_values(capsys):
    assert main(["curves", "--workload", "gemm,conv_time", "--M", "3,8", "--N", "1000"]) == 0
    rows = read_csv(capsys.readouterr().out)
    assert len(rows) == 4
    by_key = {(r["workload"], r["M"], r["N"]): r for r in rows}
    assert float(by_key[("gemm", "3", "1000")]["entangle_ratio"]) == pytest.approx(0.002)
    assert float(by_key[("gemm", "3", "1000")]["abft_ratio"]) == pytest.approx(0.002 + 1 / 3)
    assert float(by_key[("conv_time", "8", "1000")]["entangle_ratio"]) == pytest.approx(0.0005)


def test_bench_small_grid(capsys):
    assert main(["bench", "--workload", "identity,conv", "--M", "3", "--N", "8,16", "--repetitions", "5"]) == 0
    captured = capsys.readouterr()
    rows = read_csv(captured.out)
    assert len(rows) == 2 * 2 * 3
    plain = [r for r in rows if r["method"] == "plain"]
    assert all(float(r["overhead_pct_vs_plain"]) == 0.0 for r in plain)
    assert all(int(r["median_ns"]) >= 0 for r in rows)
    assert "identity" in captured.err


def test_seed_defaults_to_settings():
    settings = get_settings()
    original = settings.ENTANGLE_SEED
    try:
        update_settings(ENTANGLE_SEED=77)
        assert RunSpec(subcommand="run").seed == 77
        assert RunSpec(subcommand="run").to_grid().seed == 77
    finally:
        update_settings(ENTANGLE_SEED=original)
