"""Shortest constructor terms for the core elements of a structure.

Breadth-first over constructor applications: creators seed the frontier,
transformers extend it. The first term reaching an element wins; within a
level candidates are visited in a fixed lexicographic order, so equal-depth
ties break deterministically.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Union

from .finder import UNDEF, Structure
from .specast import OpKind
from .validate import ValidatedModule


@dataclass(frozen=True)
class ElemRef:
    """A non-core argument, denoted directly by its carrier element."""

    sort: str
    elem: int

    def __str__(self) -> str:
        return f"{self.sort[:1].lower()}{self.sort[1:]}{self.elem}"


@dataclass(frozen=True)
class ConstructorTerm:
    op: str
    args: tuple[Union["ConstructorTerm", ElemRef], ...] = ()

    def __str__(self) -> str:
        return f"{self.op}({', '.join(str(a) for a in self.args)})"


TermArg = Union[ConstructorTerm, ElemRef]


def term_depth(t: TermArg) -> int:
    if isinstance(t, ElemRef):
        return 0
    return 1 + max((term_depth(a) for a in t.args), default=0)


def term_key(t: TermArg):
    if isinstance(t, ElemRef):
        return (0, t.elem, ())
    return (1, t.op, tuple(term_key(a) for a in t.args))


def term_eval(t: ConstructorTerm, st: Structure):
    args = []
    for a in t.args:
        if isinstance(a, ElemRef):
            args.append(a.elem)
        else:
            v = term_eval(a, st)
            if v is UNDEF:
                return UNDEF
            args.append(v)
    return st.lookup(t.op, tuple(args))


def constructors_used(t: ConstructorTerm, vm: ValidatedModule
                      ) -> tuple[frozenset[str], frozenset[str]]:
    """(creators, transformers) appearing anywhere in the term."""
    creators: set[str] = set()
    transformers: set[str] = set()

    def walk(node: TermArg) -> None:
        if isinstance(node, ElemRef):
            return
        kind = vm.op(node.op).kind
        if kind is OpKind.CREATOR:
            creators.add(node.op)
        else:
            transformers.add(node.op)
        for a in node.args:
            walk(a)

    walk(t)
    return frozenset(creators), frozenset(transformers)


@dataclass(frozen=True)
class DerivedTerms:
    terms: dict[int, ConstructorTerm]
    unreachable: tuple[int, ...]

    def depth(self, elem: int) -> int:
        return term_depth(self.terms[elem])


def derive_construction_terms(vm: ValidatedModule, st: Structure) -> DerivedTerms:
    core = vm.core
    reached: dict[int, ConstructorTerm] = {}
    depth_of: dict[int, int] = {}

    def non_core_args(op, positions):
        """Cartesian product of ElemRefs for the given argument positions."""
        pools = []
        for i in positions:
            sort = op.arg_sorts[i]
            pools.append([ElemRef(sort, e) for e in st.elements(sort)])
        return itertools.product(*pools)

    def try_claim(candidates: list[ConstructorTerm], depth: int) -> list[int]:
        fresh = []
        for term in sorted(candidates, key=term_key):
            result = term_eval(term, st)
            if result is UNDEF or result in reached:
                continue
            reached[result] = term
            depth_of[result] = depth
            fresh.append(result)
        return fresh

    creators = [o for o in vm.creators() if o.result_sort == core]
    level: list[ConstructorTerm] = []
    for op in creators:
        for combo in non_core_args(op, range(len(op.arg_sorts))):
            level.append(ConstructorTerm(op.name, tuple(combo)))
    frontier = try_claim(level, 1)

    transformers = [o for o in vm.transformers() if o.result_sort == core]
    depth = 1
    while frontier:
        depth += 1
        candidates: list[ConstructorTerm] = []
        for op in transformers:
            core_pos = [i for i, s in enumerate(op.arg_sorts) if s == core]
            other_pos = [i for i, s in enumerate(op.arg_sorts) if s != core]
            for core_elems in itertools.product(*(reached.keys() for _ in core_pos)):
                # at least one child at the previous depth, else seen earlier
                if max(depth_of[e] for e in core_elems) != depth - 1:
                    continue
                for others in non_core_args(op, other_pos):
                    args: list[TermArg] = [None] * len(op.arg_sorts)  # type: ignore
                    for i, e in zip(core_pos, core_elems):
                        args[i] = reached[e]
                    for i, ref in zip(other_pos, others):
                        args[i] = ref
                    candidates.append(ConstructorTerm(op.name, tuple(args)))
        frontier = try_claim(candidates, depth)

    unreachable = tuple(e for e in st.elements(core) if e not in reached)
    return DerivedTerms(reached, unreachable)
