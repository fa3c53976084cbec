from __future__ import annotations

import pathlib

import pytest

from adtprobe import Scope, find_structure, parse_specification, validate_module
from adtprobe.finder import Structure

SPEC_DIR = pathlib.Path(__file__).resolve().parents[1] / "src/adtprobe/fixtures/specs"


def read_module(*names: str) -> str:
    return "\n".join((SPEC_DIR / n).read_text() for n in names)


@pytest.fixture(scope="session")
def sortedset_vm():
    return validate_module(parse_specification(
        read_module("sortedset.spec", "totalorder.spec")))


@pytest.fixture(scope="session")
def mapchain_vm():
    return validate_module(parse_specification(
        read_module("mapchain.spec", "key.spec", "value.spec")))


@pytest.fixture(scope="session")
def sortedset_structure(sortedset_vm):
    return find_structure(sortedset_vm, Scope({"SortedSet": 4, "Orderable": 2}), seed=0)


@pytest.fixture(scope="session")
def mapchain_structure(mapchain_vm):
    return find_structure(mapchain_vm, Scope({"MapChain": 9, "Key": 2, "Value": 2}),
                          seed=0)


@pytest.fixture(scope="session")
def paper_structure():
    """Hand transcription of the published example structure.

    Elements: 0 = {o1}, 1 = {o0}, 2 = {o0, o1}, 3 = {} with o1 above o0.
    """
    return Structure(
        {"SortedSet": 4, "Orderable": 2},
        {
            "empty": {(): 3},
            "insert": {(3, 0): 1, (3, 1): 0, (0, 0): 2, (0, 1): 0,
                       (1, 0): 1, (1, 1): 2, (2, 0): 2, (2, 1): 2},
            "isEmpty": {(0,): False, (1,): False, (2,): False, (3,): True},
            "isIn": {(0, 0): False, (0, 1): True, (1, 0): True, (1, 1): False,
                     (2, 0): True, (2, 1): True, (3, 0): False, (3, 1): False},
            "largest": {(0,): 1, (1,): 0, (2,): 1},
            "geq": {(0, 0): True, (0, 1): False, (1, 0): True, (1, 1): True},
        })
