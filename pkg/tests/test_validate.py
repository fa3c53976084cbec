from __future__ import annotations

import pytest

from adtprobe import parse_specification, validate_module
from adtprobe.errors import SpecValidationError
from adtprobe.specast import OpKind

from conftest import read_module


def test_sortedset_core_and_parameter(sortedset_vm):
    assert sortedset_vm.core == "SortedSet"
    assert sortedset_vm.params == ("Orderable",)
    kinds = {o.name: o.kind for o in sortedset_vm.module.ops}
    assert kinds == {
        "empty": OpKind.CREATOR,
        "insert": OpKind.TRANSFORMER,
        "isEmpty": OpKind.OBSERVER,
        "isIn": OpKind.OBSERVER,
        "largest": OpKind.OBSERVER,
        "geq": OpKind.OBSERVER,
    }


def test_mapchain_core_and_parameters(mapchain_vm):
    assert mapchain_vm.core == "MapChain"
    assert mapchain_vm.params == ("Key", "Value")
    assert {o.name for o in mapchain_vm.transformers()} == {"put", "remove"}


def test_classification_is_total(sortedset_vm, mapchain_vm):
    for vm in (sortedset_vm, mapchain_vm):
        assert all(o.kind is not None for o in vm.module.ops)


def test_three_op_classifier():
    # two creators and one transformer, classified by self-argument presence
    m = parse_specification(
        "spec Pile sorts Pile\n"
        "constructors\n"
        "  new: -> Pile;\n"
        "  unit: -> Pile;\n"
        "  push: Pile -> Pile;\n"
        "observers\n"
        "  depth_odd: Pile -> Boolean;\n"
        "end")
    vm = validate_module(m)
    kinds = [vm.op(n).kind for n in ("new", "unit", "push")]
    assert kinds == [OpKind.CREATOR, OpKind.CREATOR, OpKind.TRANSFORMER]


def test_observer_without_self_argument_rejected():
    m = parse_specification(
        "spec T sorts T Other\n"
        "constructors mk: -> T;\n"
        "observers lonely: Other -> Boolean;\n"
        "end")
    with pytest.raises(SpecValidationError) as exc:
        validate_module(m)
    assert any("self argument" in v for v in exc.value.violations)


def test_partial_without_domain_rejected():
    m = parse_specification(
        "spec T sorts T\nconstructors mk: -> T;\n"
        "observers peek: T ->? T;\nend")
    with pytest.raises(SpecValidationError) as exc:
        validate_module(m)
    assert any("domain clause" in v for v in exc.value.violations)


def test_ill_sorted_axiom_rejected():
    m = parse_specification(
        "spec S sorts S Elem\n"
        "constructors mk: -> S; add: S Elem -> S;\n"
        "observers holds: S Elem -> Boolean;\n"
        "axioms forall X: S;\n  holds(X, X);\nend")
    with pytest.raises(SpecValidationError) as exc:
        validate_module(m)
    assert any("sort" in v for v in exc.value.violations)


def test_unknown_operation_rejected():
    m = parse_specification(
        "spec T sorts T\nconstructors mk: -> T;\n"
        "axioms forall X: T;\n  ghost(X) = X;\nend")
    with pytest.raises(SpecValidationError) as exc:
        validate_module(m)
    assert any("unknown operation 'ghost'" in v for v in exc.value.violations)


def test_duplicate_operation_rejected():
    m = parse_specification(
        "spec T sorts T\nconstructors mk: -> T; mk: -> T;\nend")
    with pytest.raises(SpecValidationError) as exc:
        validate_module(m)
    assert any("duplicate operation" in v for v in exc.value.violations)


def test_violations_are_collected_not_first_only():
    m = parse_specification(
        "spec T sorts T\n"
        "constructors mk: -> T;\n"
        "observers bad: T ->? Boolean; worse: Ghost -> Boolean;\n"
        "end")
    with pytest.raises(SpecValidationError) as exc:
        validate_module(m)
    assert len(exc.value.violations) >= 2


def test_validated_module_is_reusable(sortedset_vm):
    text_round = parse_specification(read_module("sortedset.spec", "totalorder.spec"))
    assert validate_module(text_round).core == sortedset_vm.core
