"""Abstract objects: per-element lookup tables taken from a structure.

An abstract object answers, for every operation where it is the self
argument, exactly what the structure prescribes. Parameter-sort objects are
materialized as ParameterMock instances that are shared between the
abstract and concrete sides, so implementations receive them as opaque
values answering their observer tables.

Operations whose result is of the core sort cannot be answered with a table
value alone; their entries hold the expected result element and gain a
concrete handle once fill_expected_concrete runs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .errors import MissingBindingError
from .finder import Structure
from .specast import BOOLEAN, OpKind
from .validate import ValidatedModule


class ParameterMock:
    """Shared stand-in for one parameter-sort element."""

    def __init__(self, sort: str, elem: int):
        self.sort = sort
        self.elem = elem

    def __repr__(self) -> str:
        return f"{self.sort[:1].lower()}{self.sort[1:]}{self.elem}"

    def _bind(self, name: str, table: dict, resolve) -> None:
        def method(*args):
            key = tuple(a.elem if isinstance(a, ParameterMock) else a for a in args)
            return resolve(table[key])
        setattr(self, name, method)


@dataclass(frozen=True)
class AbstractObject:
    sort: str
    elem: int
    # op -> argument tuple with the self position removed -> structure value
    tables: Mapping[str, Mapping[tuple[int, ...], object]]
    # (op, argument tuple) -> concrete handle, filled for core-result ops
    expected_concrete: Mapping[tuple[str, tuple[int, ...]], object] = \
        field(default_factory=dict)

    def defined_at(self, op: str) -> list[tuple[int, ...]]:
        return sorted(self.tables.get(op, {}))


@dataclass(frozen=True)
class AbstractWorld:
    structure: Structure
    core_sort: str
    objects: Mapping[tuple[str, int], AbstractObject]
    param_mocks: Mapping[tuple[str, int], ParameterMock]

    def core_objects(self) -> list[AbstractObject]:
        return [self.objects[(self.core_sort, e)]
                for e in self.structure.elements(self.core_sort)]

    def mock(self, sort: str, elem: int) -> ParameterMock:
        return self.param_mocks[(sort, elem)]


def _self_entries(vm: ValidatedModule, st: Structure, sort: str, elem: int
                  ) -> dict[str, dict[tuple[int, ...], object]]:
    tables: dict[str, dict[tuple[int, ...], object]] = {}
    for op in vm.module.ops:
        if op.owner != sort or op.kind is OpKind.CREATOR:
            continue
        pos = vm.self_pos[op.name]
        rows = {}
        for args, result in st.tables[op.name].items():
            if args[pos] == elem:
                rows[args[:pos] + args[pos + 1:]] = result
        tables[op.name] = rows
    return tables


def build_abstract_objects(vm: ValidatedModule, st: Structure,
                           method_names: Mapping[tuple[str, str], str] | None = None
                           ) -> AbstractWorld:
    """One abstract object per core and parameter element.

    method_names optionally renames the attributes bound onto the parameter
    mocks (the refinement mapping's method names); defaults to the spec
    operation names.
    """
    objects: dict[tuple[str, int], AbstractObject] = {}
    mocks: dict[tuple[str, int], ParameterMock] = {}

    for sort in vm.params:
        for elem in st.elements(sort):
            mocks[(sort, elem)] = ParameterMock(sort, elem)

    def resolve_for(result_sort: str):
        if result_sort in vm.params:
            return lambda v: mocks[(result_sort, v)]
        return lambda v: v

    for sort in (vm.core, *vm.params):
        for elem in st.elements(sort):
            tables = _self_entries(vm, st, sort, elem)
            objects[(sort, elem)] = AbstractObject(sort, elem, tables)
            if sort in vm.params:
                mock = mocks[(sort, elem)]
                for op_name, table in tables.items():
                    op = vm.op(op_name)
                    name = op_name
                    if method_names is not None:
                        name = method_names.get((sort, op_name), op_name)
                    mock._bind(name, table, resolve_for(op.result_sort))

    return AbstractWorld(st, vm.core, objects, mocks)


def core_result_ops(vm: ValidatedModule) -> list[str]:
    return [o.name for o in vm.module.ops
            if o.owner == vm.core and o.kind is not OpKind.CREATOR
            and o.result_sort == vm.core]


def fill_expected_concrete(vm: ValidatedModule, world: AbstractWorld,
                           bindings: Mapping[int, object],
                           skip_elements: frozenset[int] = frozenset()
                           ) -> AbstractWorld:
    """Attach concrete handles to every core-result entry.

    bindings maps reachable core elements to their concrete handles. An
    entry whose expected result element is in skip_elements (construction
    failed) stays unfilled; any other unbound result raises
    MissingBindingError.
    """
    targets = core_result_ops(vm)
    new_objects = dict(world.objects)
    for elem, handle in sorted(bindings.items()):
        ao = world.objects[(vm.core, elem)]
        slots: dict[tuple[str, tuple[int, ...]], object] = {}
        for op_name in targets:
            for args, result in ao.tables.get(op_name, {}).items():
                if result in bindings:
                    slots[(op_name, args)] = bindings[result]
                elif result not in skip_elements:
                    raise MissingBindingError(
                        f"{op_name} on element {elem} expects element {result}, "
                        f"which has no concrete binding")
        new_objects[(vm.core, elem)] = AbstractObject(
            ao.sort, ao.elem, ao.tables, slots)
    return AbstractWorld(world.structure, world.core_sort, new_objects,
                         world.param_mocks)
