"""Executable case studies: specs, mappings, implementations, seeded faults.

Each variant records the diagnosis it should produce per comparison mode,
so the test suite (and anyone experimenting) can run the whole pipeline
against known outcomes.
"""

from __future__ import annotations

import pathlib
from dataclasses import dataclass, field

from ..adapter import ClassAdapter
from ..errors import UnknownFixtureError
from ..mapping import RefinementMapping, bind_mapping, parse_mapping
from ..parser import parse_specification
from ..validate import ValidatedModule, validate_module
from . import mapchain as _mc
from . import sortedset as _ss

SPEC_DIR = pathlib.Path(__file__).parent / "specs"


@dataclass(frozen=True)
class ModeExpectation:
    guilty: str | None = None
    fss_contains: tuple[str, ...] = ()
    clean: bool = False  # an empty failure log is expected


@dataclass(frozen=True)
class FaultVariant:
    case: str
    variant: str
    target: str | None  # seeded spec operation; None for the correct variant
    description: str
    cls: type
    equals: ModeExpectation
    observers: ModeExpectation | None = None  # None: no pinned expectation


def _ss_variant(variant, target, description, cls, equals, observers=None):
    return FaultVariant("sortedset", variant, target, description, cls,
                        equals, observers)


def _mc_variant(variant, target, description, cls, equals, observers=None):
    return FaultVariant("mapchain", variant, target, description, cls,
                        equals, observers)


def _ss_variants() -> dict[str, FaultVariant]:
    return {v.variant: v for v in [
        _ss_variant("correct", None, "reference implementation", _ss.TreeSet,
                    ModeExpectation(clean=True), ModeExpectation(clean=True)),
        _ss_variant("isEmpty-1", "isEmpty",
                    "isEmpty answers true on non-empty sets",
                    _ss.TreeSetIsEmptyBroad, ModeExpectation(guilty="isEmpty")),
        _ss_variant("isEmpty-2", "isEmpty",
                    "isEmpty answers false on the empty set",
                    _ss.TreeSetIsEmptyNarrow, ModeExpectation(guilty="isEmpty")),
        _ss_variant("isIn-1", "isIn",
                    "membership test only ever finds the largest element",
                    _ss.TreeSetContainsLastOnly, ModeExpectation(guilty="isIn")),
        _ss_variant("largest-1", "largest",
                    "largest returns the smallest element",
                    _ss.TreeSetLargestReturnsSmallest,
                    ModeExpectation(guilty="largest")),
        _ss_variant("largest-2", "largest",
                    "largest returns nothing on singletons",
                    _ss.TreeSetLargestNoneOnSingleton,
                    ModeExpectation(guilty="largest")),
        _ss_variant("insert-private", "insert",
                    "private helper drops the duplicate check; reached only "
                    "through the public insert",
                    _ss.TreeSetPrivateInsertDuplicates,
                    ModeExpectation(guilty="insert")),
        _ss_variant("insert-public", "insert",
                    "public insert inlined without the duplicate check",
                    _ss.TreeSetPublicInsertDuplicates,
                    ModeExpectation(guilty="insert")),
    ]}


def _mc_variants() -> dict[str, FaultVariant]:
    return {v.variant: v for v in [
        _mc_variant("correct", None, "reference implementation", _mc.MapChain,
                    ModeExpectation(clean=True), ModeExpectation(clean=True)),
        _mc_variant("isEmpty-1", "isEmpty",
                    "isEmpty answers true on non-empty maps",
                    _mc.MapChainIsEmptyBroad, ModeExpectation(guilty="isEmpty")),
        _mc_variant("isEmpty-2", "isEmpty",
                    "isEmpty answers false on the empty map",
                    _mc.MapChainIsEmptyNarrow, ModeExpectation(guilty="isEmpty")),
        _mc_variant("put-1", "put", "put never updates an existing entry",
                    _mc.MapChainPutKeepsOldValue, ModeExpectation(guilty="put")),
        _mc_variant("put-2", "put", "put blindly prepends, duplicating keys",
                    _mc.MapChainPutDuplicatesKeys, ModeExpectation(guilty="put")),
        _mc_variant("put-3", "put",
                    "put fails to count insertions (counts overwrites "
                    "instead), so isEmpty misreports",
                    _mc.MapChainPutCountsOverwrites,
                    ModeExpectation(guilty="put"),
                    ModeExpectation(guilty="isEmpty", fss_contains=("put",))),
        _mc_variant("remove-1", "remove",
                    "remove never decrements the element count, so isEmpty "
                    "misreports", _mc.MapChainRemoveKeepsCount,
                    ModeExpectation(guilty="remove"),
                    ModeExpectation(guilty=None, fss_contains=("remove",))),
        _mc_variant("remove-2", "remove", "remove never locates the entry",
                    _mc.MapChainRemoveDoesNothing,
                    ModeExpectation(guilty="remove")),
        _mc_variant("get-1", "get",
                    "lookup stops at deletion markers and returns the key "
                    "object for the value", _mc.MapChainGetStopsAtTombstone,
                    ModeExpectation(guilty=None),
                    ModeExpectation(guilty="get")),
        _mc_variant("get-2", "get",
                    "lookup stops at deletion markers and confuses keys with "
                    "values on crowded maps", _mc.MapChainGetConfusedByCrowd,
                    ModeExpectation(guilty=None),
                    ModeExpectation(guilty="get")),
        _mc_variant("get-3", "get",
                    "lookup returns stale data behind deletion markers and "
                    "keys for values", _mc.MapChainGetStaleTombstone,
                    ModeExpectation(guilty=None),
                    ModeExpectation(guilty="get")),
    ]}


@dataclass(frozen=True)
class Case:
    name: str
    spec_files: tuple[str, ...]
    map_file: str
    default_scope: dict[str, int]
    variants: dict[str, FaultVariant] = field(default_factory=dict)


CASES: dict[str, Case] = {
    "sortedset": Case("sortedset", ("sortedset.spec", "totalorder.spec"),
                      "sortedset.map", {"SortedSet": 4, "Orderable": 2},
                      _ss_variants()),
    "mapchain": Case("mapchain", ("mapchain.spec", "key.spec", "value.spec"),
                     "mapchain.map", {"MapChain": 9, "Key": 2, "Value": 2},
                     _mc_variants()),
}


@dataclass(frozen=True)
class LoadedFixture:
    case: str
    variant: str
    vm: ValidatedModule
    mapping: RefinementMapping
    adapter: ClassAdapter
    scope_counts: dict[str, int]
    info: FaultVariant


def spec_text(case: str) -> str:
    c = _case(case)
    return "\n".join((SPEC_DIR / f).read_text() for f in c.spec_files)


def map_text(case: str) -> str:
    return (SPEC_DIR / _case(case).map_file).read_text()


def _case(case: str) -> Case:
    try:
        return CASES[case]
    except KeyError:
        raise UnknownFixtureError(f"unknown case study {case!r}; expected one "
                                  f"of {sorted(CASES)}") from None


def variant_names(case: str) -> list[str]:
    return list(_case(case).variants)


def fixture_ids() -> list[str]:
    return [f"{c}:{v}" for c in CASES for v in CASES[c].variants]


def load_fixture(case: str, variant: str) -> LoadedFixture:
    c = _case(case)
    if variant not in c.variants:
        raise UnknownFixtureError(f"unknown variant {variant!r} for {case}; "
                                  f"expected one of {list(c.variants)}")
    info = c.variants[variant]
    vm = validate_module(parse_specification(spec_text(case)))
    mapping = bind_mapping(parse_mapping(map_text(case)), vm)
    return LoadedFixture(case, variant, vm, mapping, ClassAdapter(info.cls),
                         dict(c.default_scope), info)
