from __future__ import annotations

import random

import pytest

from adtprobe import parse_specification, validate_module
from adtprobe.harness import FailureLog, Provenance
from adtprobe.localizer import Diagnosis, ObserverScope, diagnose

from oracle_diagnose import oracle_diagnose

FUZZ_MODULE = """
spec F
sorts F[P]
constructors
  c0: -> F;
  c1: P -> F;
  t0: F -> F;
  t1: F P -> F;
  t2: F -> F;
observers
  o0: F -> Boolean;
  o1: F P -> Boolean;
end

spec P
sorts P
end
"""


@pytest.fixture(scope="module")
def fuzz_vm():
    return validate_module(parse_specification(FUZZ_MODULE))


def make_log(l1=(), l2=(), l3=None, provenance=None) -> FailureLog:
    log = FailureLog()
    log.l1 = set(l1)
    log.l2 = set(l2)
    log.l3 = dict(l3 or {"c0": 0, "c1": 0})
    log.provenance = provenance or {}
    return log


def prov(creator: str, *transformers: str) -> Provenance:
    return Provenance(frozenset((creator,)), frozenset(transformers))


def test_single_observer_guilty(fuzz_vm):
    log = make_log(l1=[("o0", 1), ("o0", 2)])
    d = diagnose(log, fuzz_vm)
    assert d.guilty == "o0" and not d.inconclusive


def test_empty_log_inconclusive(fuzz_vm):
    d = diagnose(make_log(), fuzz_vm)
    assert d.inconclusive and d.fss == frozenset()


def test_transformer_branch_hand_executed(fuzz_vm):
    # failures on two observers, no creator evidence, t0 failures only on
    # objects built by t0 and a creator alone: t0 is guilty
    log = make_log(
        l1=[("o0", 1), ("o1", 2)],
        l2=[("t0", 1), ("t1", 3)],
        provenance={
            1: prov("c0", "t0"),
            2: prov("c0", "t0"),
            3: prov("c0", "t0", "t1"),  # t1 pair filtered out
        })
    d = diagnose(log, fuzz_vm)
    assert d.guilty == "t0"
    assert d.fss == frozenset({"t0"})
    assert d.branch == "transformer"


def test_unique_positive_creator_guilty(fuzz_vm):
    log = make_log(l1=[("o0", 0), ("o1", 1)], l3={"c0": 2, "c1": 0})
    d = diagnose(log, fuzz_vm)
    assert d.guilty == "c0" and d.branch == "creator"


def test_several_positive_creators_inconclusive(fuzz_vm):
    log = make_log(l1=[("o0", 0), ("o1", 1)], l3={"c0": 2, "c1": 1})
    d = diagnose(log, fuzz_vm)
    assert d.inconclusive and d.fss == frozenset({"c0", "c1"})


def test_l1_only_scope_blames_the_sole_observer(fuzz_vm):
    log = make_log(
        l1=[("o0", 1)],
        l2=[("t0", 1), ("t2", 2)],
        provenance={1: prov("c0", "t0"), 2: prov("c0", "t2")})
    union = diagnose(log, fuzz_vm, ObserverScope.UNION)
    restricted = diagnose(log, fuzz_vm, ObserverScope.L1_ONLY)
    assert union.branch == "transformer"  # three names spread the blame
    assert restricted.guilty == "o0"
    assert restricted.fss == frozenset({"t0", "t2"})


def test_l1_only_scope_without_direct_observations(fuzz_vm):
    log = make_log(l2=[("t0", 1)], provenance={1: prov("c0", "t0")})
    d = diagnose(log, fuzz_vm, ObserverScope.L1_ONLY)
    assert d.inconclusive and d.fss == frozenset({"t0"})
    # under the default reading the sole failing operation is blamed
    assert diagnose(log, fuzz_vm, ObserverScope.UNION).guilty == "t0"


def random_log(rng: random.Random) -> FailureLog:
    observers = ["o0", "o1"]
    transformers = ["t0", "t1", "t2"]
    creators = ["c0", "c1"]
    elements = range(6)
    provenance = {}
    for e in elements:
        creator = rng.choice(creators)
        used = rng.sample(transformers, k=rng.randint(0, 2))
        provenance[e] = Provenance(frozenset((creator,)), frozenset(used))
    l1 = {(rng.choice(observers), rng.choice(elements))
          for _ in range(rng.randint(0, 4))}
    l2 = {(rng.choice(transformers), rng.choice(elements))
          for _ in range(rng.randint(0, 4))}
    l3 = {c: (rng.randint(0, 2) if rng.random() < 0.3 else 0)
          for c in creators}
    return make_log(l1, l2, l3, provenance)


@pytest.mark.parametrize("scope", [ObserverScope.UNION, ObserverScope.L1_ONLY])
def test_agrees_with_transcription_on_fuzzed_logs(fuzz_vm, scope):
    rng = random.Random(20240809)
    transformer_names = [o.name for o in fuzz_vm.transformers()]
    for _ in range(2000):
        log = random_log(rng)
        got = diagnose(log, fuzz_vm, scope)
        want_guilty, want_fss = oracle_diagnose(
            log.l1, log.l2, log.l3,
            {e: (p.creators, p.transformers) for e, p in log.provenance.items()},
            transformer_names,
            "union" if scope is ObserverScope.UNION else "l1")
        assert got.guilty == want_guilty
        assert got.fss == want_fss


def test_verdict_fss_consistency_on_fuzzed_logs(fuzz_vm):
    rng = random.Random(7)
    for _ in range(2000):
        log = random_log(rng)
        d = diagnose(log, fuzz_vm)
        names = log.op_names()
        if d.branch == "observer" and d.guilty is not None:
            assert names == {d.guilty}
        if d.branch == "creator" and d.guilty is not None:
            positives = {c for c, n in log.l3.items() if n > 0}
            assert positives == {d.guilty}
        if d.branch == "transformer" and d.guilty is not None:
            assert d.fss == frozenset({d.guilty})


def test_diagnose_is_pure(fuzz_vm):
    log = make_log(l1=[("o0", 1)], l2=[("t0", 2)],
                   provenance={1: prov("c0"), 2: prov("c0", "t0")})
    first = diagnose(log, fuzz_vm)
    second = diagnose(log, fuzz_vm)
    assert first == second
    assert isinstance(first, Diagnosis)
