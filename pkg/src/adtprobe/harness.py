"""Materialize concrete objects and compare them against abstract ones.

Every planned operation application gets its own fresh copy of the concrete
object, built by replaying the element's constructor term, so side effects
cannot leak between comparisons. Comparison failures never abort the run;
they are collected into the three evidence sets:

    L1  (observer, element)     direct observation differed
    L2  (transformer, element)  transformed state differed
    L3  creator -> count        failed observations on creator-only elements

In equals mode a transformer comparison uses the implementation's own
equality against the expected concrete object. In observers-only mode it
instead probes every non-core-result observer on the transformed copy and
checks the outcomes against the expected element's abstract tables; the
terms, copies and schedule stay the same, only the oracle changes.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .construct import ConstructorTerm, DerivedTerms, ElemRef, constructors_used
from .mapping import RefinementMapping
from .mocks import AbstractWorld
from .specast import BOOLEAN, OpKind
from .validate import ValidatedModule


class Mode(enum.Enum):
    EQUALS = "equals"
    OBSERVERS_ONLY = "observers"


@dataclass(frozen=True)
class Provenance:
    creators: frozenset[str]
    transformers: frozenset[str]

    @property
    def creator_only(self) -> bool:
        return not self.transformers

    def built_from_only(self, transformer: str) -> bool:
        """Term uses exactly this transformer plus a single creator."""
        return self.transformers == frozenset((transformer,)) \
            and len(self.creators) == 1


@dataclass
class ConcreteBinding:
    elem: int
    term: ConstructorTerm
    base: object
    copies: list[object] = field(default_factory=list)
    used: int = 0

    def next_copy(self) -> object:
        copy = self.copies[self.used]
        self.used += 1
        return copy


@dataclass
class FailureLog:
    l1: set[tuple[str, int]] = field(default_factory=set)
    l2: set[tuple[str, int]] = field(default_factory=set)
    l3: dict[str, int] = field(default_factory=dict)
    provenance: dict[int, Provenance] = field(default_factory=dict)
    construction_failures: list[tuple[int, str, str]] = field(default_factory=list)
    attempts: int = 0

    def record_observation_failure(self, op: str, elem: int) -> None:
        self.l1.add((op, elem))
        prov = self.provenance.get(elem)
        if prov is not None and prov.creator_only:
            creator = next(iter(prov.creators))
            self.l3[creator] = self.l3.get(creator, 0) + 1

    def is_clean(self) -> bool:
        return (not self.l1 and not self.l2 and not self.construction_failures
                and all(n == 0 for n in self.l3.values()))

    def op_names(self) -> set[str]:
        return {op for op, _ in self.l1} | {op for op, _ in self.l2}


def planned_comparisons(vm: ValidatedModule, world: AbstractWorld,
                        elem: int) -> int:
    """Defined observer and transformer entries with this element as self."""
    ao = world.objects[(vm.core, elem)]
    return sum(len(rows) for rows in ao.tables.values())


def _new_log(vm: ValidatedModule, derived: DerivedTerms) -> FailureLog:
    log = FailureLog()
    log.l3 = {c.name: 0 for c in vm.creators()}
    for elem, term in derived.terms.items():
        creators, transformers = constructors_used(term, vm)
        log.provenance[elem] = Provenance(creators, transformers)
    return log


class _ReplayFailure(Exception):
    def __init__(self, op: str, cause: Exception):
        super().__init__(repr(cause))
        self.op = op
        self.cause = cause


class _Replayer:
    def __init__(self, vm: ValidatedModule, world: AbstractWorld,
                 mapping: RefinementMapping, adapter):
        self.vm = vm
        self.world = world
        self.mapping = mapping
        self.adapter = adapter

    def arg_value(self, node):
        if isinstance(node, ElemRef):
            return self.world.mock(node.sort, node.elem)
        return self.replay(node)

    def replay(self, term: ConstructorTerm):
        om = self.mapping.op_mapping(term.op)
        if om.is_constructor:
            args = [self.arg_value(a) for a in term.args]
            try:
                return self.adapter.create(om.target, args)
            except Exception as exc:  # noqa: BLE001
                raise _ReplayFailure(term.op, exc) from exc
        receiver = self.arg_value(term.args[om.self_pos])
        rest = [self.arg_value(a) for i, a in enumerate(term.args)
                if i != om.self_pos]
        try:
            return self.adapter.apply_transformer(receiver, om.target, rest)
        except _ReplayFailure:
            raise
        except Exception as exc:  # noqa: BLE001
            raise _ReplayFailure(term.op, exc) from exc


def materialize_concretes(vm: ValidatedModule, world: AbstractWorld,
                          derived: DerivedTerms, adapter,
                          mapping: RefinementMapping
                          ) -> tuple[dict[int, ConcreteBinding], FailureLog]:
    """Replay every reachable element's term; one extra copy per comparison.

    A constructor raising during replay is charged to the operation being
    applied when it threw, the element is excluded from observation, and
    the failure feeds L2 (transformer) or L3 (creator on a creator-only
    term) like an observation failure.
    """
    log = _new_log(vm, derived)
    replayer = _Replayer(vm, world, mapping, adapter)
    bindings: dict[int, ConcreteBinding] = {}
    for elem in sorted(derived.terms):
        term = derived.terms[elem]
        try:
            base = replayer.replay(term)
            copies = [replayer.replay(term)
                      for _ in range(planned_comparisons(vm, world, elem))]
        except Exception as exc:  # noqa: BLE001 - adapter code is untrusted
            op = _charged_operation(exc, term, vm)
            prov = log.provenance[elem]
            if vm.op(op).kind is OpKind.CREATOR:
                if prov.creator_only:
                    log.l3[op] = log.l3.get(op, 0) + 1
            else:
                log.l2.add((op, elem))
            log.construction_failures.append((elem, op, repr(exc)))
            continue
        bindings[elem] = ConcreteBinding(elem, term, base, copies)
    return bindings, log


def _charged_operation(exc: Exception, term: ConstructorTerm,
                       vm: ValidatedModule) -> str:
    if isinstance(exc, _ReplayFailure):
        return exc.op
    return term.op


def run_comparisons(vm: ValidatedModule, world: AbstractWorld,
                    bindings: dict[int, ConcreteBinding], adapter,
                    mapping: RefinementMapping, mode: Mode,
                    log: FailureLog | None = None) -> FailureLog:
    """Compare every defined table entry of every bound element."""
    if log is None:
        log = FailureLog()
        log.l3 = {c.name: 0 for c in vm.creators()}
        for elem, binding in bindings.items():
            creators, transformers = constructors_used(binding.term, vm)
            log.provenance[elem] = Provenance(creators, transformers)
    runner = _ComparisonRunner(vm, world, bindings, adapter, mapping, mode, log)
    for elem in sorted(bindings):
        runner.compare_element(elem)
    return log


class _ComparisonRunner:
    def __init__(self, vm, world, bindings, adapter, mapping, mode, log):
        self.vm = vm
        self.world = world
        self.bindings = bindings
        self.adapter = adapter
        self.mapping = mapping
        self.mode = mode
        self.log = log
        self.probe_ops = [o for o in vm.observers()
                          if o.owner == vm.core and o.result_sort != vm.core]

    # -- helpers --------------------------------------------------------------

    def actual_args(self, op_name: str, args: tuple[int, ...]) -> list[object]:
        """Turn structure element ids into runtime argument values."""
        op = self.vm.op(op_name)
        pos = self.vm.self_pos[op_name]
        out = []
        for i, sort in enumerate(op.arg_sorts):
            if i == pos:
                continue
            offset = i if i < pos else i - 1
            elem = args[offset]
            if sort in self.vm.params:
                out.append(self.world.mock(sort, elem))
            elif sort == self.vm.core:
                out.append(self.bindings[elem].base)
            else:
                out.append(elem)
        return out

    def value_matches(self, op_name: str, expected, actual) -> bool:
        op = self.vm.op(op_name)
        if op.result_sort == BOOLEAN:
            return isinstance(actual, bool) and actual == expected
        if op.result_sort in self.vm.params:
            return actual is self.world.mock(op.result_sort, expected)
        return actual == expected

    # -- element loop ----------------------------------------------------------

    def compare_element(self, elem: int) -> None:
        ao = self.world.objects[(self.vm.core, elem)]
        binding = self.bindings[elem]
        for op in self.vm.module.ops:
            if op.owner != self.vm.core or op.kind is OpKind.CREATOR:
                continue
            rows = ao.tables.get(op.name, {})
            for args in sorted(rows):
                if op.kind is OpKind.TRANSFORMER:
                    self.compare_transformer(ao, binding, op.name, args)
                else:
                    self.compare_observer(ao, binding, op.name, args)

    def compare_observer(self, ao, binding, op_name: str,
                         args: tuple[int, ...]) -> None:
        op = self.vm.op(op_name)
        expected = ao.tables[op_name][args]
        if op.result_sort == self.vm.core:
            if self.mode is Mode.OBSERVERS_ONLY:
                return  # outcomes of core-result observers are not used
            slot = ao.expected_concrete.get((op_name, args))
            if slot is None:
                return  # expected element's construction failed; recorded
            copy = binding.next_copy()
            self.log.attempts += 1
            try:
                actual = self.adapter.observe(copy, self.mapping.target(op_name),
                                              self.actual_args(op_name, args))
                ok = self.adapter.concrete_equals(actual, slot)
            except Exception:  # noqa: BLE001
                ok = False
            if not ok:
                self.log.record_observation_failure(op_name, ao.elem)
            return
        copy = binding.next_copy()
        self.log.attempts += 1
        try:
            actual = self.adapter.observe(copy, self.mapping.target(op_name),
                                          self.actual_args(op_name, args))
            ok = self.value_matches(op_name, expected, actual)
        except Exception:  # noqa: BLE001
            ok = False
        if not ok:
            self.log.record_observation_failure(op_name, ao.elem)

    def compare_transformer(self, ao, binding, op_name: str,
                            args: tuple[int, ...]) -> None:
        expected_elem = ao.tables[op_name][args]
        if self.mode is Mode.EQUALS:
            slot = ao.expected_concrete.get((op_name, args))
            if slot is None:
                return  # expected element's construction failed; recorded
        copy = binding.next_copy()
        self.log.attempts += 1
        try:
            transformed = self.adapter.apply_transformer(
                copy, self.mapping.target(op_name),
                self.actual_args(op_name, args))
        except Exception:  # noqa: BLE001
            self.log.l2.add((op_name, ao.elem))
            return
        if self.mode is Mode.EQUALS:
            try:
                ok = self.adapter.concrete_equals(transformed, slot)
            except Exception:  # noqa: BLE001
                ok = False
        else:
            ok = self.probe_matches(transformed, expected_elem)
        if not ok:
            self.log.l2.add((op_name, ao.elem))

    def probe_matches(self, transformed, expected_elem: int) -> bool:
        """Check non-core-result observers against the expected element."""
        expected_ao = self.world.objects[(self.vm.core, expected_elem)]
        for op in self.probe_ops:
            for args in expected_ao.defined_at(op.name):
                expected = expected_ao.tables[op.name][args]
                try:
                    actual = self.adapter.observe(
                        transformed, self.mapping.target(op.name),
                        self.actual_args(op.name, args))
                except Exception:  # noqa: BLE001
                    return False
                if not self.value_matches(op.name, expected, actual):
                    return False
        return True
