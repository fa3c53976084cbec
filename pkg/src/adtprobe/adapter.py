"""Implementation adapters: how the harness drives the class under test.

Adapters speak the implementation's vocabulary; the harness translates spec
operation names through the refinement mapping before calling in.
"""

from __future__ import annotations

from typing import Protocol, Sequence, runtime_checkable


@runtime_checkable
class ImplementationAdapter(Protocol):
    def create(self, constructor: str, args: Sequence[object]) -> object:
        """Build a fresh instance via the named constructor."""

    def apply_transformer(self, handle: object, method: str,
                          args: Sequence[object]) -> object:
        """Apply a state-changing method; in-place mutation is permitted and
        the mutated handle is the result when the method returns None."""

    def observe(self, handle: object, method: str,
                args: Sequence[object]) -> object:
        """Apply an inspection method and return its value."""

    def concrete_equals(self, a: object, b: object) -> bool:
        """The implementation's own notion of equality."""


class ClassAdapter:
    """Reflection adapter around a plain Python class.

    A constructor name matching the class name calls the class itself;
    any other constructor name resolves to a class attribute.
    """

    def __init__(self, cls: type):
        self.cls = cls

    def _is_type_name(self, name: str) -> bool:
        return any(name == c.__name__ for c in self.cls.__mro__)

    def create(self, constructor: str, args: Sequence[object]) -> object:
        if self._is_type_name(constructor):
            return self.cls(*args)
        return getattr(self.cls, constructor)(*args)

    def apply_transformer(self, handle: object, method: str,
                          args: Sequence[object]) -> object:
        result = getattr(handle, method)(*args)
        return handle if result is None else result

    def observe(self, handle: object, method: str,
                args: Sequence[object]) -> object:
        return getattr(handle, method)(*args)

    def concrete_equals(self, a: object, b: object) -> bool:
        return bool(a == b)

    def provides(self, name: str) -> bool:
        return self._is_type_name(name) or hasattr(self.cls, name)

    def __repr__(self) -> str:
        return f"ClassAdapter({self.cls.__name__})"
