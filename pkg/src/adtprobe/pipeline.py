"""End-to-end run: model search, mocks, comparisons, diagnosis."""

from __future__ import annotations

from dataclasses import dataclass

from .construct import DerivedTerms, derive_construction_terms
from .finder import DEFAULT_BUDGET, Scope, Structure, find_structure
from .harness import (ConcreteBinding, FailureLog, Mode, materialize_concretes,
                      run_comparisons)
from .localizer import Diagnosis, ObserverScope, diagnose
from .mapping import RefinementMapping
from .mocks import AbstractWorld, build_abstract_objects, fill_expected_concrete
from .validate import ValidatedModule


@dataclass(frozen=True)
class PipelineResult:
    vm: ValidatedModule
    scope: Scope
    seed: int
    mode: Mode
    structure: Structure
    derived: DerivedTerms
    world: AbstractWorld
    bindings: dict[int, ConcreteBinding]
    log: FailureLog
    diagnosis: Diagnosis

    @property
    def exit_status(self) -> int:
        if self.diagnosis.guilty is not None:
            return 1
        return 0 if self.log.is_clean() else 2


def observer_scope_for(mode: Mode) -> ObserverScope:
    """Observers-only runs count direct observer evidence; see localizer."""
    return (ObserverScope.L1_ONLY if mode is Mode.OBSERVERS_ONLY
            else ObserverScope.UNION)


def run_pipeline(vm: ValidatedModule, mapping: RefinementMapping, adapter,
                 scope: Scope, mode: Mode = Mode.EQUALS, seed: int = 0,
                 budget: int = DEFAULT_BUDGET,
                 structure: Structure | None = None) -> PipelineResult:
    """Run every stage; a precomputed structure skips the model search."""
    if structure is None:
        structure = find_structure(vm, scope, seed, budget)
    derived = derive_construction_terms(vm, structure)
    world = build_abstract_objects(vm, structure, mapping.method_names())
    bindings, log = materialize_concretes(vm, world, derived, adapter, mapping)
    failed = frozenset(elem for elem, _, _ in log.construction_failures)
    world = fill_expected_concrete(
        vm, world, {e: b.base for e, b in bindings.items()}, failed)
    log = run_comparisons(vm, world, bindings, adapter, mapping, mode, log)
    diagnosis = diagnose(log, vm, observer_scope_for(mode))
    return PipelineResult(vm, scope, seed, mode, structure, derived, world,
                          bindings, log, diagnosis)
