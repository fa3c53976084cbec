"""Sorted-set case study: reference implementation and seeded faults.

TreeSet keeps its elements in an ascending list, ordered and deduplicated
through the elements' own greater_eq method, so it works for any element
type satisfying the total-order contract. Each fault variant overrides
exactly one method body of the reference class.
"""

from __future__ import annotations


class TreeSet:
    def __init__(self):
        self._items = []

    def insert(self, e) -> None:
        self._insert_sorted(e)

    def _insert_sorted(self, e) -> None:
        for i, x in enumerate(self._items):
            if x.greater_eq(e):
                if e.greater_eq(x):
                    return  # already present
                self._items.insert(i, e)
                return
        self._items.append(e)

    def is_empty(self) -> bool:
        return not self._items

    def contains(self, e) -> bool:
        return any(x.greater_eq(e) and e.greater_eq(x) for x in self._items)

    def largest(self):
        if not self._items:
            raise LookupError("largest() on an empty set")
        return self._items[-1]

    def __eq__(self, other):
        if not isinstance(other, TreeSet):
            return NotImplemented
        return len(self._items) == len(other._items) and \
            all(a is b for a, b in zip(self._items, other._items))

    def __repr__(self):
        return f"TreeSet({self._items!r})"


class TreeSetIsEmptyBroad(TreeSet):
    def is_empty(self) -> bool:  # wrong on every non-empty set
        return True


class TreeSetIsEmptyNarrow(TreeSet):
    def is_empty(self) -> bool:  # wrong on the empty set only
        return False


class TreeSetContainsLastOnly(TreeSet):
    def contains(self, e) -> bool:  # only ever finds the largest element
        return bool(self._items) and \
            self._items[-1].greater_eq(e) and e.greater_eq(self._items[-1])


class TreeSetLargestReturnsSmallest(TreeSet):
    def largest(self):
        if not self._items:
            raise LookupError("largest() on an empty set")
        return self._items[0]


class TreeSetLargestNoneOnSingleton(TreeSet):
    def largest(self):
        if not self._items:
            raise LookupError("largest() on an empty set")
        return self._items[-1] if len(self._items) > 1 else None


class TreeSetPublicInsertDuplicates(TreeSet):
    def insert(self, e) -> None:  # inlined insert that forgot the duplicate check
        for i, x in enumerate(self._items):
            if x.greater_eq(e):
                self._items.insert(i, e)
                return
        self._items.append(e)


class TreeSetPrivateInsertDuplicates(TreeSet):
    def _insert_sorted(self, e) -> None:  # helper forgot the duplicate check
        for i, x in enumerate(self._items):
            if x.greater_eq(e):
                self._items.insert(i, e)
                return
        self._items.append(e)
