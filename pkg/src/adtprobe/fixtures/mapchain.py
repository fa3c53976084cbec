"""Map case study: chained entries with lazy deletion, plus seeded faults.

MapChain stores entries newest-first in a single chain; remove marks an
entry deleted and leaves it in place, and a count field tracks the number
of live entries. Equality deliberately goes through lookup on both sides,
which is what makes it unreliable whenever lookup itself is broken.
Each fault variant overrides exactly one method body.
"""

from __future__ import annotations


class _Entry:
    __slots__ = ("key", "value", "deleted")

    def __init__(self, key, value):
        self.key = key
        self.value = value
        self.deleted = False


class MapChain:
    def __init__(self):
        self._entries: list[_Entry] = []
        self._count = 0

    def put(self, k, v) -> None:
        for e in self._entries:
            if not e.deleted and e.key.same_key(k):
                e.value = v
                return
        self._entries.insert(0, _Entry(k, v))
        self._count += 1

    def remove(self, k) -> None:
        for e in self._entries:
            if not e.deleted and e.key.same_key(k):
                e.deleted = True
                self._count -= 1
                return

    def is_empty(self) -> bool:
        return self._count == 0

    def contains_key(self, k) -> bool:
        return any(not e.deleted and e.key.same_key(k) for e in self._entries)

    def lookup(self, k):
        for e in self._entries:
            if not e.deleted and e.key.same_key(k):
                return e.value
        raise KeyError(repr(k))

    def live_keys(self):
        return [e.key for e in self._entries if not e.deleted]

    def __eq__(self, other):
        if not isinstance(other, MapChain):
            return NotImplemented
        if self._count != other._count:
            return False
        return all(self.lookup(k) is other.lookup(k) for k in self.live_keys())

    def __repr__(self):
        live = {repr(e.key): e.value for e in self._entries if not e.deleted}
        return f"MapChain({live!r})"


class MapChainIsEmptyBroad(MapChain):
    def is_empty(self) -> bool:  # wrong on every non-empty map
        return True


class MapChainIsEmptyNarrow(MapChain):
    def is_empty(self) -> bool:  # wrong on the empty map only
        return False


class MapChainPutKeepsOldValue(MapChain):
    def put(self, k, v) -> None:  # an existing entry is never updated
        for e in self._entries:
            if not e.deleted and e.key.same_key(k):
                return
        self._entries.insert(0, _Entry(k, v))
        self._count += 1


class MapChainPutDuplicatesKeys(MapChain):
    def put(self, k, v) -> None:  # never looks for an existing entry
        self._entries.insert(0, _Entry(k, v))
        self._count += 1


class MapChainPutCountsOverwrites(MapChain):
    def put(self, k, v) -> None:  # bumps the count on overwrite, not insertion
        for e in self._entries:
            if not e.deleted and e.key.same_key(k):
                e.value = v
                self._count += 1
                return
        self._entries.insert(0, _Entry(k, v))


class MapChainRemoveKeepsCount(MapChain):
    def remove(self, k) -> None:  # the element count is left unchanged
        for e in self._entries:
            if not e.deleted and e.key.same_key(k):
                e.deleted = True
                return


class MapChainRemoveDoesNothing(MapChain):
    def remove(self, k) -> None:  # the entry is never located
        return


class MapChainGetStopsAtTombstone(MapChain):
    def lookup(self, k):  # halts at deletion markers; hands back the key
        for e in self._entries:
            if e.deleted:
                return None
            if e.key.same_key(k):
                return e.key
        return None


class MapChainGetConfusedByCrowd(MapChain):
    def lookup(self, k):  # halts at deletion markers; keys for crowded maps
        for e in self._entries:
            if e.deleted:
                return None
            if e.key.same_key(k):
                return e.key if self._count > 1 else e.value
        return None


class MapChainGetStaleTombstone(MapChain):
    def lookup(self, k):  # stale data behind deletion markers; keys for values
        for e in self._entries:
            if e.deleted:
                return e.value
            if e.key.same_key(k):
                return e.key
        return None
