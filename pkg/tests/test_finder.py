from __future__ import annotations

import pytest

from adtprobe import (NoModelError, Scope, check_structure, find_structure,
                      parse_specification, structure_to_json, validate_module)
from adtprobe.errors import BudgetExhaustedError
from adtprobe.finder import structure_from_dict, structure_to_dict


def test_sortedset_structure_satisfies_module(sortedset_vm, sortedset_structure):
    ok, violations = check_structure(sortedset_vm, sortedset_structure)
    assert ok, violations


def test_sortedset_structure_realizes_expected_sets(sortedset_structure):
    st = sortedset_structure
    empties = [e for e in st.elements("SortedSet") if st.lookup("isEmpty", (e,))]
    assert len(empties) == 1
    full = [e for e in st.elements("SortedSet")
            if st.lookup("isIn", (e, 0)) and st.lookup("isIn", (e, 1))]
    assert len(full) == 1
    # largest is undefined exactly on the empty set
    assert not st.defined("largest", (empties[0],))
    for e in st.elements("SortedSet"):
        if e != empties[0]:
            assert st.defined("largest", (e,))


def test_single_creator_scope_one_unique_structure():
    vm = validate_module(parse_specification(
        "spec T sorts T constructors mk: -> T end"))
    st = find_structure(vm, Scope({"T": 1}), seed=0)
    assert st.carriers == {"T": 1}
    assert st.tables == {"mk": {(): 0}}


def test_contradictory_axioms_exhaust_to_no_model():
    vm = validate_module(parse_specification(
        "spec T sorts T\nconstructors mk: -> T;\n"
        "observers flag: T -> Boolean;\n"
        "axioms forall X: T;\n  flag(mk());\n  not flag(mk());\nend"))
    for scope in (1, 2, 3):
        with pytest.raises(NoModelError):
            find_structure(vm, Scope({"T": scope}), seed=0)


def test_determinism_byte_identical(sortedset_vm):
    scope = Scope({"SortedSet": 4, "Orderable": 2})
    blobs = {structure_to_json(find_structure(sortedset_vm, scope, seed=11))
             for _ in range(3)}
    assert len(blobs) == 1


def test_different_seeds_still_satisfy(sortedset_vm):
    scope = Scope({"SortedSet": 4, "Orderable": 2})
    for seed in range(5):
        st = find_structure(sortedset_vm, scope, seed=seed)
        ok, violations = check_structure(sortedset_vm, st)
        assert ok, (seed, violations)


def test_budget_exhaustion_is_distinct_from_no_model(mapchain_vm):
    with pytest.raises(BudgetExhaustedError):
        find_structure(mapchain_vm, Scope({"MapChain": 9, "Key": 2, "Value": 2}),
                       seed=0, budget=3)


def test_scope_counts_must_be_positive(sortedset_vm):
    with pytest.raises(ValueError):
        find_structure(sortedset_vm, Scope({"SortedSet": 0, "Orderable": 2}))


def test_mapchain_structure_satisfies_module(mapchain_vm, mapchain_structure):
    ok, violations = check_structure(mapchain_vm, mapchain_structure)
    assert ok, violations


def test_structure_serialization_round_trips(sortedset_structure):
    data = structure_to_dict(sortedset_structure)
    again = structure_from_dict(data)
    assert again == sortedset_structure
