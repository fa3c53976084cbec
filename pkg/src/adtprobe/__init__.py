"""Model-based conformance testing and fault localization for ADT implementations."""

from .checker import check_structure
from .construct import ConstructorTerm, derive_construction_terms
from .errors import (AdtProbeError, BudgetExhaustedError, MappingError,
                     MissingBindingError, NoModelError, SpecSyntaxError,
                     SpecValidationError, UnknownFixtureError)
from .finder import Scope, Structure, UNDEF, find_structure, structure_to_json
from .parser import parse_specification
from .specast import SpecModule, pretty_print
from .validate import ValidatedModule, validate_module

__version__ = "0.1.0"

__all__ = [
    "AdtProbeError", "BudgetExhaustedError", "ConstructorTerm", "MappingError",
    "MissingBindingError", "NoModelError", "Scope", "SpecModule",
    "SpecSyntaxError", "SpecValidationError", "Structure", "UNDEF",
    "UnknownFixtureError", "ValidatedModule", "check_structure",
    "derive_construction_terms", "find_structure", "parse_specification",
    "pretty_print", "structure_to_json", "validate_module",
]
