"""Keyed bucket lists with O(1) member handles.

A :class:`BucketList` holds vertices grouped into buckets by an integer key.
Nonempty buckets form a doubly linked list in decreasing key order and every
bucket keeps its members in a doubly linked list, newest first. Moving a
member by some number of key levels walks at most that many buckets.
"""

from __future__ import annotations

from collections.abc import Iterator


class _Bucket:
    __slots__ = ("key", "head", "higher", "lower", "size")

    def __init__(self, key: int):
        self.key = key
        self.head: _Member | None = None
        self.higher: _Bucket | None = None
        self.lower: _Bucket | None = None
        self.size = 0


class _Member:
    __slots__ = ("vertex", "bucket", "prev", "next")

    def __init__(self, vertex: int, bucket: _Bucket):
        self.vertex = vertex
        self.bucket = bucket
        self.prev: _Member | None = None
        self.next: _Member | None = None


class BucketList:
    """Vertices bucketed by integer key, scanned from the highest key down."""

    __slots__ = ("_by_key", "_members", "_top", "_bottom")

    def __init__(self):
        self._by_key: dict[int, _Bucket] = {}
        self._members: dict[int, _Member] = {}
        self._top: _Bucket | None = None
        self._bottom: _Bucket | None = None

    def __len__(self) -> int:
        return len(self._members)

    def __contains__(self, vertex: int) -> bool:
        return vertex in self._members

    def __iter__(self) -> Iterator[int]:
        """Members from the highest bucket down, each bucket head first."""
        bucket = self._top
        while bucket is not None:
            node = bucket.head
            while node is not None:
                yield node.vertex
                node = node.next
            bucket = bucket.lower

    def items(self) -> Iterator[tuple[int, int]]:
        """``(key, vertex)`` pairs in scan order."""
        bucket = self._top
        while bucket is not None:
            node = bucket.head
            while node is not None:
                yield bucket.key, node.vertex
                node = node.next
            bucket = bucket.lower

    def keys(self) -> list[int]:
        """Keys of the nonempty buckets, highest first."""
        out = []
        bucket = self._top
        while bucket is not None:
            out.append(bucket.key)
            bucket = bucket.lower
        return out

    def key_of(self, vertex: int) -> int:
        return self._members[vertex].bucket.key

    def first_max(self) -> int | None:
        """Head of the highest bucket, or None when empty."""
        return None if self._top is None else self._top.head.vertex

    def first_min(self) -> int | None:
        """Head of the lowest bucket, or None when empty."""
        return None if self._bottom is None else self._bottom.head.vertex

    def max_key(self) -> int | None:
        return None if self._top is None else self._top.key

    def insert(self, vertex: int, key: int) -> None:
        if vertex in self._members:
            raise KeyError(f"vertex {vertex} already present")
        node = _Member(vertex, None)  # type: ignore[arg-type]
        self._members[vertex] = node
        self._place(node, key, None)

    def remove(self, vertex: int) -> int:
        """Remove ``vertex`` and return the key it had."""
        node = self._members.pop(vertex)
        key = node.bucket.key
        self._unlink(node)
        return key

    def move(self, vertex: int, key: int) -> int:
        """Rekey ``vertex``; returns the number of key levels moved."""
        node = self._members[vertex]
        old = node.bucket
        if old.key == key:
            return 0
        self._unlink(node)
        self._place(node, key, old)
        return abs(key - old.key)

    def next_in_bucket(self, vertex: int) -> int | None:
        nxt = self._members[vertex].next
        return None if nxt is None else nxt.vertex

    def head_below(self, key: int, anchor: int) -> int | None:
        """Head of the highest bucket with key < ``key``.

        ``anchor`` must be a member whose key is already below ``key``; the
        search walks upward from it, so it costs the number of buckets between.
        """
        bucket = self._members[anchor].bucket
        while bucket.higher is not None and bucket.higher.key < key:
            bucket = bucket.higher
        return bucket.head.vertex

    def _unlink(self, node: _Member) -> None:
        bucket = node.bucket
        if node.prev is None:
            bucket.head = node.next
        else:
            node.prev.next = node.next
        if node.next is not None:
            node.next.prev = node.prev
        node.prev = node.next = None
        bucket.size -= 1
        if bucket.size == 0:
            # The dead bucket keeps its neighbor pointers so a move can start
            # its walk from it.
            del self._by_key[bucket.key]
            if bucket.higher is None:
                self._top = bucket.lower
            else:
                bucket.higher.lower = bucket.lower
            if bucket.lower is None:
                self._bottom = bucket.higher
            else:
                bucket.lower.higher = bucket.higher

    def _place(self, node: _Member, key: int, start: _Bucket | None) -> None:
        bucket = self._by_key.get(key)
        if bucket is None:
            bucket = self._new_bucket(key, start)
        node.bucket = bucket
        node.prev = None
        node.next = bucket.head
        if bucket.head is not None:
            bucket.head.prev = node
        bucket.head = node
        bucket.size += 1

    def _new_bucket(self, key: int, start: _Bucket | None) -> _Bucket:
        # Find the live neighbors hi (key above) and lo (key below), walking
        # from ``start`` when given and from the top otherwise.
        alive = start is not None and self._by_key.get(start.key) is start
        if start is None:
            hi, lo = None, self._top
            while lo is not None and lo.key > key:
                hi, lo = lo, lo.lower
        elif start.key > key:
            hi = start if alive else start.higher
            lo = start.lower
            while lo is not None and lo.key > key:
                hi, lo = lo, lo.lower
        else:
            lo = start if alive else start.lower
            hi = start.higher
            while hi is not None and hi.key < key:
                lo, hi = hi, hi.higher
        bucket = _Bucket(key)
        bucket.higher, bucket.lower = hi, lo
        if hi is None:
            self._top = bucket
        else:
            hi.lower = bucket
        if lo is None:
            self._bottom = bucket
        else:
            lo.higher = bucket
        self._by_key[key] = bucket
        return bucket
