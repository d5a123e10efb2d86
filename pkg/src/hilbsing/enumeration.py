"""Borel-fixed monomial ideals of a given colength, streamed.

In two variables the complement rows of a Borel-fixed ideal drop by at
most one per step (ending in a row of length 1).  In three variables the
complement is a nested chain of such slices D_0 >= D_1 >= ..., closed
under (i, a, b) -> (i-1, a+1, b) and (i, a, b) -> (i-1, a, b+1).

Ideals are yielded in lexicographic order of their slice sequences, which
is deterministic and lets a run resume from the last emitted key.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Sequence

from .lattice import Staircase2, Staircase3

Rows = tuple[int, ...]


def _borel_rows_under(bound: Rows, total: int) -> Iterator[Rows]:
    """Borel row sequences of exactly `total` boxes with rows[b] <= bound[b],
    in lexicographic order."""

    def rec(prefix: list[int], left: int) -> Iterator[Rows]:
        b = len(prefix)
        if left == 0:
            if not prefix or prefix[-1] == 1:
                yield tuple(prefix)
            return
        if b >= len(bound):
            return
        prev = prefix[-1] if prefix else None
        hi = min(bound[b], left) if prev is None else min(bound[b], left, prev)
        lo = 1 if prev is None else max(1, prev - 1)
        for r in range(lo, hi + 1):
            # remaining rows can shrink by at most one each: need room to reach 1
            prefix.append(r)
            yield from rec(prefix, left - r)
            prefix.pop()

    yield from rec([], total)


def enum_borel2(l: int) -> Iterator[Staircase2]:
    """2D Borel-fixed staircases of colength l (partitions with steps <= 1)."""
    if l < 0:
        raise ValueError("colength must be nonnegative")
    if l == 0:
        yield Staircase2(())
        return
    for rows in _borel_rows_under((l,) * l, l):
        yield Staircase2(rows)


@lru_cache(maxsize=None)
def _next_bound(rows: Rows) -> Rows:
    """Row caps for the slice below: rows'[b] <= min(rows[b] - 1, rows[b+1])."""
    ext = rows + (0,)
    bound = tuple(min(ext[b] - 1, ext[b + 1]) for b in range(len(rows)))
    while bound and bound[-1] <= 0:
        bound = bound[:-1]
    return bound


@lru_cache(maxsize=None)
def _max_under(bound: Rows) -> Rows:
    """Largest Borel row sequence under `bound` (closed under max)."""
    out = []
    nxt = 0
    for cap in reversed(bound):
        nxt = min(cap, nxt + 1)
        out.append(nxt)
    res = tuple(reversed(out))
    while res and res[-1] == 0:
        res = res[:-1]
    return res


@lru_cache(maxsize=None)
def _max_tail(rows: Rows) -> int:
    """Most boxes any chain strictly below `rows` can hold."""
    m = _max_under(_next_bound(rows))
    if not m:
        return 0
    return sum(m) + _max_tail(m)


@lru_cache(maxsize=None)
def _candidates(bound: Rows, cap: int) -> tuple[Rows, ...]:
    out = []
    for s in range(1, cap + 1):
        out.extend(_borel_rows_under(bound, s))
    return tuple(sorted(out))


def _chains(prev: Rows, left: int) -> Iterator[tuple[Rows, ...]]:
    if left == 0:
        yield ()
        return
    bound = _next_bound(prev)
    for rows in _candidates(bound, min(left, sum(_max_under(bound)))):
        rest = left - sum(rows)
        if rest and _max_tail(rows) < rest:
            continue
        for tail in _chains(rows, rest):
            yield (rows,) + tail


def top_slices(l: int) -> tuple[Rows, ...]:
    """Admissible D_0 for colength l, in stream order (the shard keys)."""
    out = []
    for s in range(1, l + 1):
        for rows in _borel_rows_under((s,) * s, s):
            if s + _max_tail(rows) >= l:
                out.append(rows)
    return tuple(sorted(out))


def enum_borel3(l: int, shard: tuple[int, int] | None = None, after: Sequence | None = None) -> Iterator[Staircase3]:
    """Stream all Borel-fixed ideals of colength l in k[x,y,z].

    ``shard=(i, n)`` keeps the top slices whose index is i mod n.
    ``after`` skips every ideal whose slice key is <= the given key.
    """
    if l < 1:
        raise ValueError("colength must be at least 1")
    if shard is not None:
        i, n = shard
        if not (n >= 1 and 0 <= i < n):
            raise ValueError(f"bad shard {shard}")
    after_key = tuple(tuple(r) for r in after) if after is not None else None
    for idx, top in enumerate(top_slices(l)):
        if shard is not None and idx % shard[1] != shard[0]:
            continue
        if after_key is not None and (top,) < after_key[:1]:
            continue
        for tail in _chains(top, l - sum(top)):
            key = (top,) + tail
            if after_key is not None and key <= after_key:
                continue
            yield Staircase3(tuple(Staircase2(r) for r in key))


def slice_key(I: Staircase3) -> tuple[Rows, ...]:
    return tuple(s.rows for s in I.slices)


@lru_cache(maxsize=None)
def _count_chains(prev: Rows, left: int) -> int:
    if left == 0:
        return 1
    bound = _next_bound(prev)
    total = 0
    for rows in _candidates(bound, min(left, sum(_max_under(bound)))):
        rest = left - sum(rows)
        if rest and _max_tail(rows) < rest:
            continue
        total += _count_chains(rows, rest)
    return total


def count_borel3(l: int) -> int:
    """Number of Borel-fixed ideals of colength l, without building them."""
    if l < 1:
        raise ValueError("colength must be at least 1")
    return sum(_count_chains(top, l - sum(top)) for top in top_slices(l))


# ---------------------------------------------------------------------------
# brute-force oracle


def order_ideals3(l: int) -> set[frozenset]:
    """All downward-closed subsets of N^3 of size l (3D partitions)."""
    level = {frozenset()}
    for _ in range(l):
        nxt = set()
        for s in level:
            cand = {(0, 0, 0)} if not s else set()
            for p in s:
                for c in range(3):
                    cand.add(tuple(p[d] + (d == c) for d in range(3)))
            for q in cand:
                if q in s:
                    continue
                if all(q[c] == 0 or tuple(q[d] - (d == c) for d in range(3)) in s for c in range(3)):
                    nxt.add(s | {q})
        level = nxt
    return level


def brute_borel3(l: int) -> list[Staircase3]:
    """Borel-fixed ideals of colength l by filtering all order ideals with
    the generator-level Borel condition."""
    out = []
    for pts in order_ideals3(l):
        I = Staircase3.from_points(pts)
        if I._borel_literal():
            out.append(I)
    return sorted(out, key=slice_key)
