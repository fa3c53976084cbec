"""Exception types shared across the pipeline."""

from __future__ import annotations


class AdtProbeError(Exception):
    """Base class for all errors raised by this package."""


class SpecSyntaxError(AdtProbeError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


class SpecValidationError(AdtProbeError):
    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = list(violations)


class NoModelError(AdtProbeError):
    """The search space for the given scope was exhausted without a model."""


class BudgetExhaustedError(AdtProbeError):
    """The node budget ran out before the search finished."""


class MissingBindingError(AdtProbeError):
    """An expected result element has no concrete handle bound to it."""


class MappingError(AdtProbeError):
    """A refinement mapping file is malformed or inconsistent with the module."""


class UnknownFixtureError(AdtProbeError):
    pass
