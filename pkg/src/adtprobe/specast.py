"""Syntax tree for the specification language.

A module is a set of sort declarations, operation signatures and axioms.
Values are immutable; source locations are excluded from equality so that
a module compares equal to its pretty-printed-and-reparsed self.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Union

BOOLEAN = "Boolean"


class OpKind(Enum):
    CREATOR = "creator"
    TRANSFORMER = "transformer"
    OBSERVER = "observer"
    OTHER = "other"


class Section(Enum):
    CONSTRUCTORS = "constructors"
    OBSERVERS = "observers"
    OTHERS = "others"


# ---------------------------------------------------------------------------
# Terms

@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class App:
    op: str
    args: tuple["Term", ...] = ()

    def __str__(self) -> str:
        return f"{self.op}({', '.join(str(a) for a in self.args)})"


@dataclass(frozen=True)
class BoolLit:
    value: bool

    def __str__(self) -> str:
        return "true" if self.value else "false"


@dataclass(frozen=True)
class Not:
    arg: "Term"

    def __str__(self) -> str:
        return f"not {_paren(self.arg, (And, Or))}"


@dataclass(frozen=True)
class And:
    left: "Term"
    right: "Term"

    def __str__(self) -> str:
        return f"{_paren(self.left, (Or,))} and {_paren(self.right, (Or, And))}"


@dataclass(frozen=True)
class Or:
    left: "Term"
    right: "Term"

    def __str__(self) -> str:
        return f"{self.left} or {_paren(self.right, (Or,))}"


Term = Union[Var, App, BoolLit, Not, And, Or]


def _paren(t: Term, wrap: tuple[type, ...]) -> str:
    s = str(t)
    return f"({s})" if isinstance(t, wrap) else s


def term_vars(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, App):
        out: set[str] = set()
        for a in t.args:
            out |= term_vars(a)
        return out
    if isinstance(t, Not):
        return term_vars(t.arg)
    if isinstance(t, (And, Or)):
        return term_vars(t.left) | term_vars(t.right)
    return set()


# ---------------------------------------------------------------------------
# Declarations

@dataclass(frozen=True)
class SortDecl:
    name: str
    param_sorts: tuple[str, ...] = ()
    # Assigned during validation: "core", "parameter" or "plain".
    kind: str = "plain"
    line: int = field(default=0, compare=False)

    def __str__(self) -> str:
        if self.param_sorts:
            return f"{self.name}[{', '.join(self.param_sorts)}]"
        return self.name


@dataclass(frozen=True)
class Domain:
    """Definedness condition of a partial operation: op(arg_vars) if cond."""

    arg_vars: tuple[str, ...]
    cond: Term

    def __str__(self) -> str:
        return str(self.cond)


@dataclass(frozen=True)
class OpSig:
    name: str
    arg_sorts: tuple[str, ...]
    result_sort: str
    section: Section
    partial: bool = False
    domain: Domain | None = None
    owner: str = ""  # sort the declaring block specifies
    kind: OpKind | None = None  # assigned by validation
    line: int = field(default=0, compare=False)

    def with_kind(self, kind: OpKind) -> "OpSig":
        return OpSig(self.name, self.arg_sorts, self.result_sort, self.section,
                     self.partial, self.domain, self.owner, kind, self.line)

    def __str__(self) -> str:
        args = " ".join(self.arg_sorts)
        arrow = "->?" if self.partial else "->"
        return f"{self.name}: {args}{' ' if args else ''}{arrow} {self.result_sort}"


@dataclass(frozen=True)
class Axiom:
    """Equation lhs = rhs, or a boolean assertion when rhs is None.

    An optional hypothesis makes the axiom conditional.
    """

    universals: tuple[tuple[str, str], ...]
    lhs: Term
    rhs: Term | None = None
    hypothesis: Term | None = None
    line: int = field(default=0, compare=False)

    def __str__(self) -> str:
        body = str(self.lhs) if self.rhs is None else f"{self.lhs} = {self.rhs}"
        if self.hypothesis is not None:
            body += f" if {self.hypothesis}"
        return body + ";"


@dataclass(frozen=True)
class SpecBlock:
    """One `spec ... end` block; its first sort is the block's own sort."""

    name: str
    sorts: tuple[SortDecl, ...]
    ops: tuple[OpSig, ...]
    axioms: tuple[Axiom, ...]
    axiom_universals: tuple[tuple[str, str], ...] = ()


@dataclass(frozen=True)
class SpecModule:
    name: str
    sorts: tuple[SortDecl, ...]
    ops: tuple[OpSig, ...]
    axioms: tuple[Axiom, ...]
    blocks: tuple[SpecBlock, ...] = field(default=(), compare=False)

    def sort(self, name: str) -> SortDecl:
        for s in self.sorts:
            if s.name == name:
                return s
        raise KeyError(name)

    def op(self, name: str) -> OpSig:
        for o in self.ops:
            if o.name == name:
                return o
        raise KeyError(name)

    def sort_names(self) -> list[str]:
        return [s.name for s in self.sorts]


# ---------------------------------------------------------------------------
# Pretty printer

def pretty_print(module: SpecModule) -> str:
    """Render a module back to canonical source text (round-trips)."""
    out: list[str] = []
    for block in module.blocks or _single_block(module):
        out.append(f"spec {block.name}")
        out.append("sorts")
        for s in block.sorts:
            out.append(f"  {s}")
        for section, label in ((Section.CONSTRUCTORS, "constructors"),
                               (Section.OBSERVERS, "observers"),
                               (Section.OTHERS, "others")):
            ops = [o for o in block.ops if o.section is section]
            if ops:
                out.append(label)
                for o in ops:
                    out.append(f"  {o};")
        partials = [o for o in block.ops if o.partial and o.domain is not None]
        if partials:
            out.append("domains")
            seen_vars = _domain_universals(partials, block)
            if seen_vars:
                out.append("  forall " + ", ".join(f"{v}: {s}" for v, s in seen_vars) + ";")
            for o in partials:
                head = f"{o.name}({', '.join(o.domain.arg_vars)})"
                out.append(f"  {head} if {o.domain.cond};")
        if block.axioms:
            out.append("axioms")
            if block.axiom_universals:
                decls = ", ".join(f"{v}: {s}" for v, s in block.axiom_universals)
                out.append(f"  forall {decls};")
            for ax in block.axioms:
                out.append(f"  {ax}")
        out.append("end")
        out.append("")
    return "\n".join(out)


def _single_block(module: SpecModule) -> tuple[SpecBlock, ...]:
    return (SpecBlock(module.name, module.sorts, module.ops, module.axioms,
                      _collect_universals(module.axioms)),)


def _collect_universals(axioms: tuple[Axiom, ...]) -> tuple[tuple[str, str], ...]:
    seen: dict[str, str] = {}
    for ax in axioms:
        for v, s in ax.universals:
            seen.setdefault(v, s)
    return tuple(seen.items())


def _domain_universals(partials: list[OpSig], block: SpecBlock) -> list[tuple[str, str]]:
    seen: dict[str, str] = {}
    for o in partials:
        assert o.domain is not None
        for v, s in zip(o.domain.arg_vars, o.arg_sorts):
            seen.setdefault(v, s)
    return list(seen.items())
