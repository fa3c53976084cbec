from __future__ import annotations

from dataclasses import replace

from adtprobe import check_structure
from adtprobe.finder import Structure


def test_finder_output_passes(sortedset_vm, sortedset_structure):
    ok, violations = check_structure(sortedset_vm, sortedset_structure)
    assert ok and violations == []


def test_hand_transcribed_structure_passes(sortedset_vm, paper_structure):
    ok, violations = check_structure(sortedset_vm, paper_structure)
    assert ok, violations


def test_flipped_is_empty_names_the_violated_axiom(sortedset_vm, paper_structure):
    tables = {op: dict(tbl) for op, tbl in paper_structure.tables.items()}
    tables["isEmpty"][(2,)] = True  # element 2 holds both orderables
    broken = Structure(dict(paper_structure.carriers), tables)
    ok, violations = check_structure(sortedset_vm, broken)
    assert not ok
    texts = [str(v) for v in violations]
    assert any("not isEmpty(insert(S, E));" in t for t in texts), texts


def test_missing_total_entry_is_a_violation(sortedset_vm, paper_structure):
    tables = {op: dict(tbl) for op, tbl in paper_structure.tables.items()}
    del tables["insert"][(0, 0)]
    broken = Structure(dict(paper_structure.carriers), tables)
    ok, violations = check_structure(sortedset_vm, broken)
    assert not ok
    assert any(v.what == "totality" for v in violations)


def test_wrong_definedness_is_a_violation(sortedset_vm, paper_structure):
    tables = {op: dict(tbl) for op, tbl in paper_structure.tables.items()}
    tables["largest"][(3,)] = 0  # element 3 is the empty set
    broken = Structure(dict(paper_structure.carriers), tables)
    ok, violations = check_structure(sortedset_vm, broken)
    assert not ok
    assert any(v.what == "definedness" for v in violations)


def test_out_of_range_result_is_a_violation(sortedset_vm, paper_structure):
    tables = {op: dict(tbl) for op, tbl in paper_structure.tables.items()}
    tables["insert"][(0, 0)] = 9
    broken = Structure(dict(paper_structure.carriers), tables)
    ok, violations = check_structure(sortedset_vm, broken)
    assert not ok
    assert any(v.what == "table" for v in violations)
