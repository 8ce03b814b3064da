#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
容错方法与方法管理器测试
========================
"""

import pytest

from core import ConfigurationError, StreamBlock, config_for
from methods import (
    METHOD_NAMES,
    AbftMethod,
    EntanglementMethod,
    MethodManager,
    ProtectionMethod,
    create_default_manager,
)


def test_method_names():
    assert METHOD_NAMES == ("entangle", "abft")


def test_base_class_is_abstract():
    with pytest.raises(TypeError):
        ProtectionMethod(3, 32)


def test_entanglement_method_info():
    method = EntanglementMethod(3, 32)
    info = method.get_info()
    assert info["name"] == "entangle"
    assert info["carried_streams"] == 3
    assert (info["shift_bits"], info["guard_bits"]) == (11, 10)
    assert info["input_limit"] == 1046528
    assert str(method) == "EntanglementMethod(M=3, w=32)"


def test_abft_method_carries_extra_stream():
    method = AbftMethod(4, 32)
    assert method.carried_streams == 5
    assert method.input_limit() == 2 ** 29 - 1


def test_entanglement_method_rejects_mismatched_config():
    with pytest.raises(ConfigurationError):
        EntanglementMethod(4, 32, config=config_for(3, 32))
    with pytest.raises(ConfigurationError):
        EntanglementMethod(3, 32, excluded=3)


@pytest.mark.parametrize("excluded", [0, 1, 2])
def test_entanglement_method_pipeline(excluded):
    method = EntanglementMethod(3, 32, excluded=excluded)
    block = StreamBlock.from_rows([[1, -7], [2, 8], [3, 0]])
    encoded = method.encode(block)
    assert method.check(encoded).clean
    assert method.extract(encoded).equals(block)
    assert method.recover(encoded.mark_absent(excluded)).equals(block)


def test_default_manager_registers_both_methods():
    manager = create_default_manager()
    assert manager.get_registered_methods() == ["entangle", "abft"]
    first = manager.create_method("entangle", 3, 32)
    assert manager.create_method("entangle", 3, 32) is first
    assert manager.create_method("entangle", 4, 32) is not first
    fresh = manager.create_method("entangle", 3, 32, excluded=1)
    assert fresh is not first and fresh.excluded == 1
    status = manager.get_status()
    assert len(status["active_methods"]) == 2


def test_manager_rejects_unknown_method():
    with pytest.raises(ValueError):
        MethodManager().create_method("entangle", 3, 32)
