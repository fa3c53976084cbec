"""Refinement mapping: spec sorts and operations onto implementation names.

File format (`.map`), line oriented, `--` comments:

    refinement NAME
    refine SORT as class TYPENAME
      OP is constructor CTORNAME
      OP is method METHODNAME [self K]
    refine OTHERSORT as class TYPENAME
      ...
    end

`self K` gives the receiver position among the spec operation's arguments;
it defaults to the first argument of the refined sort. Creators map to
constructors and take no self position.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MappingError
from .specast import OpKind
from .validate import ValidatedModule


@dataclass(frozen=True)
class OpMapping:
    op: str
    target: str
    is_constructor: bool
    self_pos: int | None


@dataclass(frozen=True)
class SortMapping:
    sort: str
    type_name: str
    ops: dict[str, OpMapping]


@dataclass(frozen=True)
class RefinementMapping:
    name: str
    sorts: dict[str, SortMapping]

    def op_mapping(self, op: str) -> OpMapping:
        for sm in self.sorts.values():
            if op in sm.ops:
                return sm.ops[op]
        raise MappingError(f"operation {op!r} is not mapped")

    def target(self, op: str) -> str:
        return self.op_mapping(op).target

    def method_names(self) -> dict[tuple[str, str], str]:
        return {(sm.sort, om.op): om.target
                for sm in self.sorts.values() for om in sm.ops.values()}


def parse_mapping(text: str) -> RefinementMapping:
    name = ""
    sorts: dict[str, SortMapping] = {}
    current: SortMapping | None = None
    saw_end = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("--", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        if words[0] == "refinement":
            if len(words) != 2:
                raise MappingError(f"line {lineno}: refinement header needs a name")
            name = words[1]
        elif words[0] == "refine":
            if len(words) != 5 or words[2] != "as" or words[3] != "class":
                raise MappingError(f"line {lineno}: expected "
                                   f"'refine SORT as class TYPE'")
            current = SortMapping(words[1], words[4], {})
            if words[1] in sorts:
                raise MappingError(f"line {lineno}: sort {words[1]!r} refined twice")
            sorts[words[1]] = current
        elif words[0] == "end":
            saw_end = True
        else:
            if current is None:
                raise MappingError(f"line {lineno}: operation mapping outside "
                                   f"a refine block")
            if len(words) < 3 or words[1] != "is":
                raise MappingError(f"line {lineno}: expected 'OP is ...'")
            op = words[0]
            if words[2] == "constructor":
                if len(words) != 4:
                    raise MappingError(f"line {lineno}: expected "
                                       f"'{op} is constructor NAME'")
                om = OpMapping(op, words[3], True, None)
            elif words[2] == "method":
                if len(words) == 4:
                    om = OpMapping(op, words[3], False, None)
                elif len(words) == 6 and words[4] == "self":
                    try:
                        om = OpMapping(op, words[3], False, int(words[5]))
                    except ValueError:
                        raise MappingError(f"line {lineno}: self position must "
                                           f"be an integer") from None
                else:
                    raise MappingError(f"line {lineno}: expected "
                                       f"'{op} is method NAME [self K]'")
            else:
                raise MappingError(f"line {lineno}: unknown mapping form "
                                   f"{words[2]!r}")
            if op in current.ops:
                raise MappingError(f"line {lineno}: operation {op!r} mapped twice")
            current.ops[op] = om
    if not name:
        raise MappingError("missing 'refinement NAME' header")
    if not saw_end:
        raise MappingError("missing 'end'")
    return RefinementMapping(name, sorts)


def bind_mapping(mapping: RefinementMapping, vm: ValidatedModule
                 ) -> RefinementMapping:
    """Check the mapping against a module; resolve default self positions.

    Every operation of every refined sort must be mapped exactly once, and
    the mapped form must agree with the operation's kind.
    """
    problems: list[str] = []
    new_sorts: dict[str, SortMapping] = {}
    known = {s.name for s in vm.module.sorts}
    for sm in mapping.sorts.values():
        if sm.sort not in known:
            problems.append(f"refined sort {sm.sort!r} is not in the module")
            continue
        module_ops = {o.name: o for o in vm.module.ops if o.owner == sm.sort}
        missing = sorted(set(module_ops) - set(sm.ops))
        extra = sorted(set(sm.ops) - set(module_ops))
        for m in missing:
            problems.append(f"sort {sm.sort}: operation {m!r} is not mapped")
        for x in extra:
            problems.append(f"sort {sm.sort}: mapping for unknown operation {x!r}")
        new_ops: dict[str, OpMapping] = {}
        for op_name, om in sm.ops.items():
            if op_name in extra:
                continue
            op = module_ops[op_name]
            if om.is_constructor != (op.kind is OpKind.CREATOR):
                want = "constructor" if op.kind is OpKind.CREATOR else "method"
                problems.append(f"operation {op_name!r} must map to a {want}")
                continue
            pos = om.self_pos
            if not om.is_constructor:
                default = vm.self_pos[op_name]
                if pos is None:
                    pos = default
                elif not (0 <= pos < len(op.arg_sorts)
                          and op.arg_sorts[pos] == sm.sort):
                    problems.append(f"operation {op_name!r}: self position {pos} "
                                    f"is not an argument of sort {sm.sort}")
                    continue
            new_ops[op_name] = OpMapping(op_name, om.target, om.is_constructor, pos)
        new_sorts[sm.sort] = SortMapping(sm.sort, sm.type_name, new_ops)
    for s in vm.module.sorts:
        owned = [o for o in vm.module.ops if o.owner == s.name]
        if owned and s.name not in mapping.sorts:
            problems.append(f"sort {s.name!r} is not refined")
    if problems:
        raise MappingError("; ".join(problems))
    return RefinementMapping(mapping.name, new_sorts)
