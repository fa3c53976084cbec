from __future__ import annotations

import pytest

from adtprobe import parse_specification, pretty_print
from adtprobe.errors import SpecSyntaxError
from adtprobe.specast import App, Not, OpKind, Section, Var

from conftest import read_module

MINIMAL = "spec T sorts T constructors mk: -> T end"


def test_minimal_module():
    m = parse_specification(MINIMAL)
    assert [s.name for s in m.sorts] == ["T"]
    assert len(m.ops) == 1
    op = m.ops[0]
    assert op.name == "mk" and op.arg_sorts == () and op.result_sort == "T"
    assert op.section is Section.CONSTRUCTORS
    assert m.axioms == ()


def test_sortedset_module_shape():
    m = parse_specification(read_module("sortedset.spec", "totalorder.spec"))
    assert m.name == "SortedSet"
    assert m.sort("SortedSet").param_sorts == ("Orderable",)
    largest = m.op("largest")
    assert largest.partial and largest.domain is not None
    assert str(largest.domain.cond) == "not isEmpty(S)"
    assert not m.op("insert").partial
    assert len(m.axioms) == 14  # 10 sorted-set + 4 total-order


def test_axiom_forms():
    m = parse_specification(read_module("sortedset.spec", "totalorder.spec"))
    bare = m.axioms[0]
    assert bare.rhs is None and bare.hypothesis is None
    assert bare.lhs == App("isEmpty", (App("empty", ()),))
    negated = m.axioms[1]
    assert isinstance(negated.lhs, Not)
    conditional = next(ax for ax in m.axioms if ax.hypothesis is not None)
    assert conditional.rhs is not None or conditional.lhs is not None


def test_variables_only_from_universals():
    m = parse_specification(read_module("sortedset.spec", "totalorder.spec"))
    for ax in m.axioms:
        declared = {v for v, _ in ax.universals}
        from adtprobe.specast import term_vars
        used = term_vars(ax.lhs)
        if ax.rhs is not None:
            used |= term_vars(ax.rhs)
        if ax.hypothesis is not None:
            used |= term_vars(ax.hypothesis)
        assert used == declared


@pytest.mark.parametrize("names", [
    ("sortedset.spec", "totalorder.spec"),
    ("mapchain.spec", "key.spec", "value.spec"),
])
def test_round_trip(names):
    first = parse_specification(read_module(*names))
    again = parse_specification(pretty_print(first))
    assert again == first
    assert parse_specification(pretty_print(again)) == again


def test_round_trip_minimal():
    m = parse_specification(MINIMAL)
    assert parse_specification(pretty_print(m)) == m


def test_syntax_error_carries_location():
    with pytest.raises(SpecSyntaxError) as exc:
        parse_specification("spec T\nsorts T\nconstructors\n  mk -> T;\nend")
    assert exc.value.line == 4
    assert "expected" in str(exc.value)


def test_unexpected_character():
    with pytest.raises(SpecSyntaxError) as exc:
        parse_specification("spec T sorts T % end")
    assert exc.value.line == 1


def test_comments_are_ignored():
    m = parse_specification("-- heading\nspec T -- trailing\nsorts T\n"
                            "constructors mk: -> T;\nend")
    assert m.op("mk").name == "mk"


def test_term_parsing_is_structural():
    m = parse_specification(
        "spec T sorts T constructors mk: -> T; grow: T -> T;\n"
        "observers flag: T -> Boolean;\n"
        "axioms forall X: T;\n"
        "  grow(grow(X)) = grow(X) if flag(X) and not flag(grow(X));\nend")
    ax = m.axioms[0]
    assert ax.lhs == App("grow", (App("grow", (Var("X"),)),))
    assert ax.hypothesis is not None


def test_domain_for_unknown_operation_rejected():
    with pytest.raises(SpecSyntaxError):
        parse_specification(
            "spec T sorts T constructors mk: -> T;\n"
            "domains forall X: T;\n  gone(X) if true;\nend")
