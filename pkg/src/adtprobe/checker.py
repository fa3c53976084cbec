"""Brute-force satisfaction check for structures.

Deliberately independent of the finder: a plain evaluator over complete
tables, applied to every axiom instance and every definedness condition.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .finder import UNDEF, Structure, arg_space
from .specast import (BOOLEAN, And, App, Axiom, BoolLit, Not, Or, Term, Var)
from .validate import ValidatedModule


@dataclass(frozen=True)
class Violation:
    what: str
    detail: str

    def __str__(self) -> str:
        return f"{self.what}: {self.detail}"


def eval_ground(t: Term, env: dict[str, int], st: Structure):
    """Evaluate a term in a complete structure; UNDEF is strict."""
    if isinstance(t, Var):
        return env[t.name]
    if isinstance(t, BoolLit):
        return t.value
    if isinstance(t, Not):
        v = eval_ground(t.arg, env, st)
        return UNDEF if v is UNDEF else not v
    if isinstance(t, (And, Or)):
        left = eval_ground(t.left, env, st)
        right = eval_ground(t.right, env, st)
        if left is UNDEF or right is UNDEF:
            return UNDEF
        return (left and right) if isinstance(t, And) else (left or right)
    assert isinstance(t, App)
    args = []
    for a in t.args:
        v = eval_ground(a, env, st)
        if v is UNDEF:
            return UNDEF
        args.append(v)
    return st.lookup(t.op, tuple(args))


def axiom_holds(ax: Axiom, env: dict[str, int], st: Structure) -> bool:
    if ax.hypothesis is not None:
        h = eval_ground(ax.hypothesis, env, st)
        if h is UNDEF or h is False:
            return True
    if ax.rhs is None:
        v = eval_ground(ax.lhs, env, st)
        return v is UNDEF or v is True
    left = eval_ground(ax.lhs, env, st)
    right = eval_ground(ax.rhs, env, st)
    if left is UNDEF or right is UNDEF:
        return True
    return left == right


def check_structure(vm: ValidatedModule, st: Structure) -> tuple[bool, list[Violation]]:
    """True plus an empty list iff the structure satisfies the module."""
    violations: list[Violation] = []
    module = vm.module

    for s in module.sorts:
        if st.carriers.get(s.name, 0) < 1:
            violations.append(Violation("carrier", f"sort {s.name} is empty"))

    for op in module.ops:
        table = st.tables.get(op.name)
        if table is None:
            violations.append(Violation("table", f"no table for {op.name}"))
            continue
        space = set(arg_space(op, st.carriers))
        for args in table:
            if args not in space:
                violations.append(Violation(
                    "table", f"{op.name}{args} outside the carriers"))
        for args, result in table.items():
            if op.result_sort == BOOLEAN:
                if not isinstance(result, bool):
                    violations.append(Violation(
                        "table", f"{op.name}{args} is not boolean"))
            elif not (isinstance(result, int)
                      and 0 <= result < st.carriers.get(op.result_sort, 0)):
                violations.append(Violation(
                    "table", f"{op.name}{args} result {result!r} outside "
                             f"carrier of {op.result_sort}"))
        if not op.partial:
            missing = space - set(table)
            for args in sorted(missing):
                violations.append(Violation(
                    "totality", f"{op.name}{args} has no entry"))

    for op in module.ops:
        if not op.partial or op.name not in st.tables:
            continue
        for args in arg_space(op, st.carriers):
            env = dict(zip(op.domain.arg_vars, args))
            cond = eval_ground(op.domain.cond, env, st)
            should = cond is True  # an undefined condition means undefined
            if should != st.defined(op.name, args):
                violations.append(Violation(
                    "definedness",
                    f"{op.name}{args}: domain condition is {cond} but entry "
                    f"{'present' if st.defined(op.name, args) else 'absent'}"))

    for ax in module.axioms:
        spaces = [range(st.carriers.get(s, 0)) for _, s in ax.universals]
        names = [v for v, _ in ax.universals]
        for combo in itertools.product(*spaces):
            env = dict(zip(names, combo))
            if not axiom_holds(ax, env, st):
                assignment = ", ".join(f"{n}={v}" for n, v in env.items())
                violations.append(Violation(f"axiom {ax}", assignment or "ground"))

    return not violations, violations
