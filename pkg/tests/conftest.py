from __future__ import annotations

import random
from functools import lru_cache

import pytest

from hilbsing.lattice import Staircase2


@lru_cache(maxsize=None)
def partitions(n: int, cap: int | None = None) -> tuple[tuple[int, ...], ...]:
    """Weakly decreasing row sequences summing to n (every 2D staircase)."""
    cap = n if cap is None else cap
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, cap), 0, -1):
        out.extend((first,) + rest for rest in partitions(n - first, first))
    return tuple(out)


def staircases2(max_l: int, min_l: int = 1) -> list[Staircase2]:
    return [Staircase2(p) for n in range(min_l, max_l + 1) for p in partitions(n)]


def random_staircase2(rng: random.Random, n: int) -> Staircase2:
    """Grow a staircase one addable box at a time."""
    rows: list[int] = []
    for _ in range(n):
        opts = [b for b in range(len(rows) + 1) if b == 0 or rows[b - 1] > (rows[b] if b < len(rows) else 0)]
        b = rng.choice(opts)
        if b == len(rows):
            rows.append(1)
        else:
            rows[b] += 1
    return Staircase2(tuple(rows))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20261014)
