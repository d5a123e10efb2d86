from __future__ import annotations

import pytest

from hilbsing import enumeration
from hilbsing.bounds import tetrahedral_k
from hilbsing.enumeration import brute_borel3, count_borel3, enum_borel2, enum_borel3, slice_key

COUNTS = [1, 1, 2, 3, 4, 6, 9, 12, 17, 24]


def test_enum_borel2_small():
    assert [s.rows for s in enum_borel2(5)] == [(1, 1, 1, 1, 1), (2, 1, 1, 1), (2, 2, 1)]
    assert [s.rows for s in enum_borel2(0)] == [()]


def test_enum_borel2_all_borel():
    for l in range(1, 16):
        for s in enum_borel2(l):
            assert s.is_borel() and s.colength == l


@pytest.mark.parametrize("l", range(1, 11))
def test_matches_brute_force(l):
    got = list(enum_borel3(l))
    assert [slice_key(I) for I in got] == [slice_key(I) for I in brute_borel3(l)]
    assert len(got) == COUNTS[l - 1] == count_borel3(l)


def test_stream_is_sorted_and_borel():
    for l in range(1, 16):
        keys = [slice_key(I) for I in enum_borel3(l)]
        assert keys == sorted(keys) and len(set(keys)) == len(keys)
    for I in enum_borel3(15):
        assert I.is_borel() and I.colength == 15


def test_larger_counts():
    assert count_borel3(20) == 425
    assert sum(1 for _ in enum_borel3(20)) == 425


def test_shards_partition():
    full = [slice_key(I) for I in enum_borel3(14)]
    parts = [[slice_key(I) for I in enum_borel3(14, shard=(i, 3))] for i in range(3)]
    assert sorted(sum(parts, [])) == full


def test_resume_after():
    full = [slice_key(I) for I in enum_borel3(12)]
    for cut in (0, 5, len(full) - 1):
        rest = [slice_key(I) for I in enum_borel3(12, after=full[cut])]
        assert rest == full[cut + 1:]


def test_m1_lemma():
    for l in range(1, 21):
        k = tetrahedral_k(l)
        assert all(I.pure_exponents()[0] <= k for I in enum_borel3(l))


def test_bad_arguments():
    with pytest.raises(ValueError):
        list(enum_borel3(0))
    with pytest.raises(ValueError):
        list(enum_borel3(5, shard=(3, 3)))


def test_top_slices_cover_stream():
    tops = set(enumeration.top_slices(11))
    assert {slice_key(I)[0] for I in enum_borel3(11)} == tops


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_power_is_unique_cube(k):
    from math import comb
    from hilbsing.lattice import power_ideal
    cubes = [I for I in enum_borel3(comb(k + 2, 3)) if I.pure_exponents() == (k, k, k)]
    assert cubes == [power_ideal(k)]


def test_shard_union_small():
    for l in range(1, 13):
        full = [slice_key(I) for I in enum_borel3(l)]
        for n in (2, 5):
            got = sorted(slice_key(I) for i in range(n) for I in enum_borel3(l, shard=(i, n)))
            assert got == full
