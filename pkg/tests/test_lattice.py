from __future__ import annotations

import itertools
import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hilbsing import lattice
from hilbsing.lattice import (
    ColengthError,
    IdealSyntaxError,
    NonMinimalWarning,
    Staircase2,
    Staircase3,
    parse_ideal,
    power_ideal,
)

from conftest import partitions, random_staircase2, staircases2

EX_A = "x^2,y^2,z^3,xz,yz^2,xy"
EX_B = "x^3,y^4,z^6,y^3z,y^2z^3,yz^5,xy^2,xz^4,xyz^2,x^2y,x^2z"


def test_parse_canonical_order():
    gs = parse_ideal(EX_A)
    assert str(gs) == "x^2,xy,xz,y^2,yz^2,z^3"
    assert gs.pure_power(0) == 2 and gs.pure_power(2) == 3


def test_parse_accepts_parens_and_spaces():
    assert str(parse_ideal("( x , y^2 , z )")) == "x,z,y^2"


def test_parse_non_minimal_warns():
    with pytest.warns(NonMinimalWarning):
        gs = parse_ideal("x,xy,y,z^2")
    assert str(gs) == "x,y,z^2"
    assert gs.dropped == ((1, 1, 0),)


@pytest.mark.parametrize("text", ["x^", "x^2,,y", "w", "x*y", ""])
def test_parse_syntax_errors(text):
    with pytest.raises(IdealSyntaxError):
        parse_ideal(text)


def test_parse_missing_pure_power():
    with pytest.raises(ColengthError):
        parse_ideal("x^2,xy")


def test_parse_wrong_arity():
    with pytest.raises(IdealSyntaxError):
        parse_ideal("x,y", nvars=2)


def test_unit_ideal():
    assert parse_ideal("1").is_unit
    assert Staircase2.from_generators(parse_ideal("1", 2)).colength == 0


def test_example_decompositions():
    I = Staircase3.from_generators(parse_ideal(EX_A))
    assert I.colength == 6
    assert [s.rows for s in I.slices] == [(2, 2, 1), (1,)]
    assert [str(s) for s in I.decompose()] == ["y^2,yz^2,z^3", "y,z", "1"]
    J = Staircase3.from_generators(parse_ideal(EX_B))
    assert [str(s) for s in J.decompose()] == ["y^4,y^3z,y^2z^3,yz^5,z^6", "y^2,yz^2,z^4", "y,z", "1"]
    assert J.is_borel() and I.is_borel()


def test_power_ideal():
    for k in range(1, 6):
        I = power_ideal(k)
        assert I.colength == (k + 2) * (k + 1) * k // 6
        assert len(I.minimal_generators()) == (k + 2) * (k + 1) // 2
        assert I.pure_exponents() == (k, k, k)
    with pytest.raises(ValueError):
        power_ideal(0)


def test_nested_slices_validated():
    with pytest.raises(ValueError):
        Staircase3.from_rows((1,), (2,))
    with pytest.raises(ValueError):
        Staircase2((1, 2))


@pytest.mark.parametrize("rows", [p for n in range(1, 10) for p in partitions(n)])
def test_round_trip_2d(rows):
    S = Staircase2(rows)
    assert Staircase2.from_generators(S.minimal_generators()) == S
    assert Staircase2.from_points(S.points()) == S
    assert S.colength == sum(1 for _ in S.points())


def test_borel2_routes_agree_exhaustive():
    for S in staircases2(12):
        steps = all(a - b <= 1 for a, b in zip(S.rows, S.rows[1:] + (0,)))
        assert S.is_borel() == steps


def test_borel2_examples():
    assert Staircase2((2, 2, 1)).is_borel()
    assert not Staircase2((3, 1)).is_borel()
    assert not Staircase2((2,)).is_borel()


def _all_3d(l):
    from hilbsing.enumeration import order_ideals3
    return [Staircase3.from_points(p) for p in order_ideals3(l)]


@pytest.mark.parametrize("l", range(1, 8))
def test_3d_round_trips_and_borel_routes(l):
    for I in _all_3d(l):
        assert Staircase3.from_generators(I.minimal_generators()) == I
        assert I.colength == l
        assert I._borel_literal() == I._borel_closure()


def test_permuted_preserves_colength():
    I = Staircase3.from_generators(parse_ideal(EX_A))
    for perm in itertools.permutations(range(3)):
        P = I.permuted(perm)
        assert P.colength == I.colength
        moved = set()
        for p in I.points():
            q = [0, 0, 0]
            for c in range(3):
                q[perm[c]] = p[c]
            moved.add(tuple(q))
        assert set(P.points()) == moved


def test_embed2():
    J = Staircase2((2, 2, 1))
    E = lattice.embed2(J)
    assert E.colength == J.colength
    assert E.slices == (J,)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 30), st.integers(0, 2**32))
def test_random_staircase_round_trip(n, seed):
    import random
    S = random_staircase2(random.Random(seed), n)
    assert S.colength == n
    assert Staircase2.from_generators(parse_ideal(str(S), 2)) == S
