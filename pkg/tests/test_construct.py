from __future__ import annotations

import itertools

from adtprobe import derive_construction_terms
from adtprobe.construct import (ConstructorTerm, ElemRef, term_depth, term_eval,
                                term_key)
from adtprobe.finder import UNDEF, Structure


def enumerate_terms(vm, st, max_depth):
    """All constructor terms of the core sort up to max_depth (oracle)."""
    core = vm.core
    by_depth = {0: []}
    for d in range(1, max_depth + 1):
        terms = []
        for op in vm.creators():
            if d == 1 and op.result_sort == core:
                pools = [[ElemRef(s, e) for e in st.elements(s)]
                         for s in op.arg_sorts]
                terms += [ConstructorTerm(op.name, c)
                          for c in itertools.product(*pools)]
        for op in vm.transformers():
            if op.result_sort != core or d < 2:
                continue
            pools = []
            for s in op.arg_sorts:
                if s == core:
                    pools.append([t for k in range(1, d) for t in by_depth[k]])
                else:
                    pools.append([ElemRef(s, e) for e in st.elements(s)])
            for combo in itertools.product(*pools):
                t = ConstructorTerm(op.name, combo)
                if term_depth(t) == d:
                    terms.append(t)
        by_depth[d] = terms
    return [t for ts in by_depth.values() for t in ts]


def test_paper_structure_terms(sortedset_vm, paper_structure):
    derived = derive_construction_terms(sortedset_vm, paper_structure)
    assert derived.unreachable == ()
    # the empty set comes straight from the creator
    assert str(derived.terms[3]) == "empty()"
    assert derived.depth(3) == 1
    # the set holding only orderable1 takes creator plus one insert
    assert str(derived.terms[0]) == "insert(empty(), orderable1)"
    assert derived.depth(0) == 2


def test_equal_depth_tie_breaks_lexicographically(sortedset_vm, paper_structure):
    derived = derive_construction_terms(sortedset_vm, paper_structure)
    st = paper_structure
    full = 2  # holds both orderables; reachable two ways at depth 3
    candidates = [t for t in enumerate_terms(sortedset_vm, st, 3)
                  if term_eval(t, st) == full and term_depth(t) == 3]
    assert len(candidates) >= 2
    assert derived.terms[full] == min(candidates, key=term_key)


def test_terms_are_depth_minimal(sortedset_vm, sortedset_structure):
    derived = derive_construction_terms(sortedset_vm, sortedset_structure)
    st = sortedset_structure
    best: dict[int, int] = {}
    for t in enumerate_terms(sortedset_vm, st, 4):
        v = term_eval(t, st)
        if v is not UNDEF:
            best[v] = min(best.get(v, 99), term_depth(t))
    for elem, term in derived.terms.items():
        assert term_depth(term) == best[elem]


def test_terms_evaluate_to_their_elements(mapchain_vm, mapchain_structure):
    derived = derive_construction_terms(mapchain_vm, mapchain_structure)
    assert derived.unreachable == ()
    for elem, term in derived.terms.items():
        assert term_eval(term, mapchain_structure) == elem


def test_unreachable_elements_are_reported(sortedset_vm, paper_structure):
    # cut the empty set off from the constructors: make every insert loop
    # back onto element 3 unreachable by rerouting the creator
    tables = {op: dict(tbl) for op, tbl in paper_structure.tables.items()}
    tables["empty"][()] = 0
    tables["insert"] = {args: (r if r != 3 else 0)
                        for args, r in tables["insert"].items()}
    tables["isEmpty"][(3,)] = False
    tables["largest"][(3,)] = 0
    st = Structure(dict(paper_structure.carriers), tables)
    derived = derive_construction_terms(sortedset_vm, st)
    assert 3 in derived.unreachable
