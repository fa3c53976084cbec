"""Semantic validation: name resolution, sort checking, kind assignment.

Violations are collected and reported together rather than one at a time.
"""

from __future__ import annotations

from .errors import SpecValidationError
from .specast import (BOOLEAN, And, App, Axiom, BoolLit, Not, OpKind, OpSig,
                      Or, Section, SortDecl, SpecModule, Term, Var)


class ValidatedModule:
    """A checked module with operation kinds and the core sort identified."""

    def __init__(self, module: SpecModule, core: str, params: tuple[str, ...],
                 self_pos: dict[str, int | None]):
        self.module = module
        self.core = core
        self.params = params
        self.self_pos = self_pos
        self.ops = {o.name: o for o in module.ops}

    @property
    def name(self) -> str:
        return self.module.name

    def op(self, name: str) -> OpSig:
        return self.ops[name]

    def creators(self) -> list[OpSig]:
        return [o for o in self.module.ops if o.kind is OpKind.CREATOR]

    def transformers(self) -> list[OpSig]:
        return [o for o in self.module.ops if o.kind is OpKind.TRANSFORMER]

    def observers(self) -> list[OpSig]:
        """Non-constructor operations; `other`-kind ops are treated alike."""
        return [o for o in self.module.ops
                if o.kind in (OpKind.OBSERVER, OpKind.OTHER)]

    def sorts(self) -> list[SortDecl]:
        return list(self.module.sorts)


def sort_of_term(t: Term, env: dict[str, str], module: SpecModule,
                 errors: list[str], where: str) -> str | None:
    """Infer the sort of a term; None when inference already failed."""
    if isinstance(t, Var):
        if t.name not in env:
            errors.append(f"{where}: unknown variable {t.name!r}")
            return None
        return env[t.name]
    if isinstance(t, BoolLit):
        return BOOLEAN
    if isinstance(t, Not):
        inner = sort_of_term(t.arg, env, module, errors, where)
        if inner not in (None, BOOLEAN):
            errors.append(f"{where}: 'not' applied to non-boolean term {t.arg}")
        return BOOLEAN
    if isinstance(t, (And, Or)):
        for side in (t.left, t.right):
            s = sort_of_term(side, env, module, errors, where)
            if s not in (None, BOOLEAN):
                errors.append(f"{where}: boolean connective over non-boolean term {side}")
        return BOOLEAN
    assert isinstance(t, App)
    try:
        op = module.op(t.op)
    except KeyError:
        errors.append(f"{where}: unknown operation {t.op!r}")
        return None
    if len(t.args) != len(op.arg_sorts):
        errors.append(f"{where}: {op.name} expects {len(op.arg_sorts)} argument(s), "
                      f"got {len(t.args)}")
        return op.result_sort
    for arg, expected in zip(t.args, op.arg_sorts):
        actual = sort_of_term(arg, env, module, errors, where)
        if actual is not None and actual != expected:
            errors.append(f"{where}: argument {arg} of {op.name} has sort {actual}, "
                          f"expected {expected}")
    return op.result_sort


def validate_module(module: SpecModule) -> ValidatedModule:
    errors: list[str] = []

    sort_names = [s.name for s in module.sorts]
    for name in sorted({n for n in sort_names if sort_names.count(n) > 1}):
        errors.append(f"duplicate sort declaration {name!r}")
    known_sorts = set(sort_names)

    op_names = [o.name for o in module.ops]
    for name in sorted({n for n in op_names if op_names.count(n) > 1}):
        errors.append(f"duplicate operation {name!r}")

    for s in module.sorts:
        for p in s.param_sorts:
            if p not in known_sorts:
                errors.append(f"sort {s.name}: unknown parameter sort {p!r}")

    # Signatures and kinds.
    kinds: dict[str, OpKind] = {}
    self_pos: dict[str, int | None] = {}
    for op in module.ops:
        where = f"line {op.line}: operation {op.name}"
        if not op.owner:
            errors.append(f"{where}: declared before any sort")
            continue
        for a in op.arg_sorts:
            if a == BOOLEAN:
                errors.append(f"{where}: Boolean is a result sort only")
            elif a not in known_sorts:
                errors.append(f"{where}: unknown argument sort {a!r}")
        if op.result_sort != BOOLEAN and op.result_sort not in known_sorts:
            errors.append(f"{where}: unknown result sort {op.result_sort!r}")

        has_self = op.owner in op.arg_sorts
        pos = op.arg_sorts.index(op.owner) if has_self else None
        if op.section is Section.CONSTRUCTORS:
            if op.result_sort != op.owner:
                errors.append(f"{where}: constructor must return {op.owner}")
            kinds[op.name] = OpKind.TRANSFORMER if has_self else OpKind.CREATOR
        else:
            if not has_self:
                errors.append(f"{where}: every operation that is not a constructor "
                              f"must have a self argument of sort {op.owner}")
            kinds[op.name] = (OpKind.OBSERVER if op.section is Section.OBSERVERS
                              else OpKind.OTHER)
        self_pos[op.name] = pos

        if op.partial and op.domain is None:
            errors.append(f"{where}: partial operation lacks a domain clause")
        if not op.partial and op.domain is not None:
            errors.append(f"{where}: domain clause on a total operation")
        if op.domain is not None:
            if len(op.domain.arg_vars) != len(op.arg_sorts):
                errors.append(f"{where}: domain clause arity mismatch")
            else:
                env = dict(zip(op.domain.arg_vars, op.arg_sorts))
                s = sort_of_term(op.domain.cond, env, module, errors,
                                 f"{where} domain")
                if s not in (None, BOOLEAN):
                    errors.append(f"{where}: domain condition is not boolean")

    # Axioms.
    for ax in module.axioms:
        where = f"line {ax.line}: axiom {ax}"
        env = dict(ax.universals)
        for v, s in ax.universals:
            if s not in known_sorts:
                errors.append(f"{where}: variable {v} has unknown sort {s!r}")
        lhs_sort = sort_of_term(ax.lhs, env, module, errors, where)
        if ax.rhs is None:
            if lhs_sort not in (None, BOOLEAN):
                errors.append(f"{where}: bare axiom must be boolean")
        else:
            rhs_sort = sort_of_term(ax.rhs, env, module, errors, where)
            if lhs_sort is not None and rhs_sort is not None and lhs_sort != rhs_sort:
                errors.append(f"{where}: equation sides have different sorts "
                              f"({lhs_sort} vs {rhs_sort})")
        if ax.hypothesis is not None:
            s = sort_of_term(ax.hypothesis, env, module, errors, where)
            if s not in (None, BOOLEAN):
                errors.append(f"{where}: hypothesis is not boolean")

    core, params = _identify_core(module, errors)

    if errors:
        raise SpecValidationError(errors)

    new_sorts = tuple(
        SortDecl(s.name, s.param_sorts,
                 "core" if s.name == core else
                 "parameter" if s.name in params else "plain",
                 s.line)
        for s in module.sorts)
    new_ops = tuple(o.with_kind(kinds[o.name]) for o in module.ops)
    checked = SpecModule(module.name, new_sorts, new_ops, module.axioms,
                         module.blocks)
    return ValidatedModule(checked, core, tuple(sorted(params)), self_pos)


def _identify_core(module: SpecModule, errors: list[str]) -> tuple[str, set[str]]:
    params: set[str] = set()
    for s in module.sorts:
        params.update(s.param_sorts)

    # Edges: a sort depends on every sort mentioned by the operations it owns.
    edges: dict[str, set[str]] = {s.name: set() for s in module.sorts}
    for op in module.ops:
        if op.owner not in edges:
            continue
        for other in (*op.arg_sorts, op.result_sort):
            if other != BOOLEAN and other in edges:
                edges[op.owner].add(other)
    for s in module.sorts:
        edges.setdefault(s.name, set()).update(s.param_sorts)

    def reaches_all(start: str) -> bool:
        seen = {start}
        stack = [start]
        while stack:
            for nxt in edges.get(stack.pop(), ()):
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return seen == set(edges)

    candidates = [s.name for s in module.sorts
                  if s.name not in params and reaches_all(s.name)]
    if len(candidates) == 1:
        return candidates[0], params
    if not candidates:
        errors.append("no core sort: no sort reaches every other sort in the "
                      "dependency graph")
    else:
        errors.append(f"ambiguous core sort: {', '.join(sorted(candidates))}")
    return module.sorts[0].name if module.sorts else "", params
