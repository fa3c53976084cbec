"""Interpret a failure log into a verdict and a set of suspects.

The interpretation follows a fixed decision procedure. When failures spread
over more than one operation, the evidence against the objects' builders is
weighed: a creator whose freshly created objects already misbehave is
blamed first; otherwise each transformer is tested against the failures on
objects built by that transformer alone. When failures concentrate on a
single operation, that operation is blamed directly.

`observer_scope` picks what the "more than one" test counts: all operation
names across L1 and L2 (the default), or only the observers appearing in
L1. The comparison front end selects the latter in observers-only mode,
where transformer entries in L2 are themselves produced by observer probes
and would otherwise drown the direct evidence.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .harness import FailureLog
from .validate import ValidatedModule


class ObserverScope(enum.Enum):
    UNION = "union"
    L1_ONLY = "l1"


@dataclass(frozen=True)
class Diagnosis:
    guilty: str | None
    fss: frozenset[str]
    branch: str
    narrative: tuple[str, ...]

    @property
    def inconclusive(self) -> bool:
        return self.guilty is None


def diagnose(log: FailureLog, vm: ValidatedModule,
             observer_scope: ObserverScope = ObserverScope.UNION) -> Diagnosis:
    """Pure function of the log (and the module's operation kinds)."""
    notes: list[str] = []
    l1_names = {op for op, _ in log.l1}
    union_names = l1_names | {op for op, _ in log.l2}
    counted = union_names if observer_scope is ObserverScope.UNION else l1_names
    notes.append(f"failing operations: {sorted(union_names) or 'none'} "
                 f"(counting {sorted(counted) or 'none'})")

    if len(counted) > 1:
        return _spread_branch(log, vm, notes)
    return _single_branch(log, vm, observer_scope, l1_names, union_names, notes)


def _spread_branch(log: FailureLog, vm: ValidatedModule,
                   notes: list[str]) -> Diagnosis:
    notes.append("failures spread over several operations; suspecting the "
                 "constructors")
    positives = sorted(cc for cc, n in log.l3.items() if n > 0)
    if positives:
        notes.append(f"creators with failed observations on creator-only "
                     f"objects: {positives}")
        if len(positives) == 1:
            notes.append(f"unique positive creator: {positives[0]} is guilty")
            return Diagnosis(positives[0], frozenset(positives),
                             "creator", tuple(notes))
        notes.append("several positive creators: inconclusive")
        return Diagnosis(None, frozenset(positives), "creator", tuple(notes))

    survivors: list[str] = []
    for ncc in sorted(o.name for o in vm.transformers()):
        kept = [e for op, e in log.l2
                if op == ncc
                and (prov := log.provenance.get(e)) is not None
                and prov.built_from_only(ncc)]
        if kept:
            survivors.append(ncc)
            notes.append(f"{ncc}: failures on objects built by {ncc} and a "
                         f"creator alone (elements {sorted(set(kept))})")
        else:
            notes.append(f"{ncc}: no failures survive the provenance filter")
    fss = frozenset(survivors)
    if len(survivors) == 1:
        notes.append(f"final set of suspects has one element: "
                     f"{survivors[0]} is guilty")
        return Diagnosis(survivors[0], fss, "transformer", tuple(notes))
    notes.append(f"final set of suspects: {sorted(fss) or 'empty'}; inconclusive")
    return Diagnosis(None, fss, "transformer", tuple(notes))


def _single_branch(log: FailureLog, vm: ValidatedModule,
                   observer_scope: ObserverScope, l1_names: set[str],
                   union_names: set[str], notes: list[str]) -> Diagnosis:
    if not log.l1 and not log.l2:
        notes.append("no comparison failures: inconclusive")
        return Diagnosis(None, frozenset(), "empty", tuple(notes))
    if observer_scope is ObserverScope.UNION:
        sole = next(iter(union_names))
        notes.append(f"all failures involve {sole}: guilty")
        return Diagnosis(sole, frozenset(), "observer", tuple(notes))
    if l1_names:
        sole = next(iter(l1_names))
        notes.append(f"sole failing observer {sole} is guilty; remaining "
                     f"failing operations are the other suspects")
        return Diagnosis(sole, frozenset(union_names - {sole}),
                         "observer", tuple(notes))
    notes.append("no direct observer failures; the failing transformers are "
                 "the suspects but none can be singled out")
    return Diagnosis(None, frozenset(union_names), "observer", tuple(notes))
