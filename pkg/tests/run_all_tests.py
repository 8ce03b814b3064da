#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Entangle Lab测试套件
====================

逐个测试文件运行pytest并汇总结果
"""

import os
import subprocess
import sys
from pathlib import Path


def run_test_file(test_file: Path) -> bool:
    """用pytest运行单个测试文件"""
    try:
        print(f"🧪 运行测试: {test_file.name}")

        env = os.environ.copy()
        env['PYTHONIOENCODING'] = 'utf-8'

        result = subprocess.run(
            [sys.executable, "-m", "pytest", "-q", str(test_file)],
            capture_output=True,
            text=True,
            cwd=Path(__file__).parent.parent,
            env=env,
            encoding='utf-8'
        )

        summary = result.stdout.strip().split('\n')[-1] if result.stdout.strip() else ""
        if result.returncode == 0:
            print(f"✅ {test_file.name} - {summary}")
            return True
        print(f"❌ {test_file.name} - {summary or '运行失败'}")
        return False

    except Exception as e:
        print(f"❌ {test_file.name} - 运行出错: {e}")
        return False


def main():
    """运行所有测试"""
    print("🚀 Entangle Lab测试套件")
    print("=" * 50)

    test_dir = Path(__file__).parent
    test_files = sorted(test_dir.glob("test_*.py"))

    if not test_files:
        print("⚠️  未找到测试文件")
        return

    print(f"📋 找到 {len(test_files)} 个测试文件:")
    for test_file in test_files:
        print(f"   • {test_file.name}")

    if os.environ.get("ENTANGLE_RUN_BENCH") != "1":
        print("ℹ️  未设置 ENTANGLE_RUN_BENCH=1, 计时趋势测试将被跳过")

    print("\n🧪 开始执行测试...")
    print("-" * 30)

    passed = 0
    failed = 0
    for test_file in test_files:
        if run_test_file(test_file):
            passed += 1
        else:
            failed += 1

    print("=" * 50)
    print("📊 测试结果总结:")
    print(f"   ✅ 通过: {passed}")
    print(f"   ❌ 失败: {failed}")
    print(f"   📈 总计: {passed + failed}")

    if failed == 0:
        print("\n🎉 所有测试都通过了！")
        sys.exit(0)
    else:
        print(f"\n⚠️  有 {failed} 个测试文件失败")
        sys.exit(1)


if __name__ == "__main__":
    main()
