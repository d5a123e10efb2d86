from __future__ import annotations

import itertools
import random

import numpy as np
import pytest

from hilbsing import hom2d, kernels, tangent3d
from hilbsing.bounds import psi, t_of_power
from hilbsing.enumeration import enum_borel3, order_ideals3
from hilbsing.lattice import Staircase2, Staircase3, embed2, parse_ideal, power_ideal

from conftest import staircases2

EX_A = Staircase3.from_generators(parse_ideal("x^2,y^2,z^3,xz,yz^2,xy"))


def _borel_upto(l):
    return [I for n in range(1, l + 1) for I in enum_borel3(n)]


@pytest.mark.parametrize("k,T", [(1, 3), (2, 18), (3, 60), (4, 150)])
def test_power_ideals(k, T):
    I = power_ideal(k)
    assert tangent3d.tangent_dimension(I) == T == t_of_power(k)
    assert tangent3d.upper_bound_chain(I).as_list() == [T] * 4


def test_power_ideal_5():
    assert tangent3d.tangent_dimension(power_ideal(5)) == 315


def test_example_a():
    assert tangent3d.tangent_dimension(EX_A) == 24
    assert tangent3d.upper_bound_chain(EX_A).as_list() == [24, 26, 26, 28]
    assert psi(6, 2) == 28


def test_graded_piece_values():
    m = power_ideal(1)
    assert tangent3d.graded_tangent_piece(m, (-1, 0, 0)) == 1
    assert tangent3d.graded_tangent_piece(m, (-1, -1, 0)) == 0
    assert tangent3d.graded_tangent_piece(m, (5, 5, 5)) == 0


def test_linalg_route_agrees():
    rng = random.Random(7)
    pool = _borel_upto(10)
    for I in rng.sample(pool, 60) + [EX_A]:
        assert tangent3d.tangent_dimension(I) == tangent3d.tangent_dimension_linalg(I), I


def test_linalg_route_agrees_non_borel():
    for l in range(1, 6):
        for pts in order_ideals3(l):
            I = Staircase3.from_points(pts)
            assert tangent3d.tangent_dimension(I) == tangent3d.tangent_dimension_linalg(I), I


def test_candidate_shifts_suffice():
    for I in _borel_upto(7):
        box = np.asarray(list(tangent3d.shift_box(I, margin=2)))
        _, vals = tangent3d.graded_pieces(I, box)
        assert int(vals.sum()) == tangent3d.tangent_dimension(I)


@pytest.mark.parametrize("l", range(1, 9))
def test_permutation_invariance(l):
    for I in enum_borel3(l):
        T = tangent3d.tangent_dimension(I)
        for perm in itertools.permutations(range(3)):
            assert tangent3d.tangent_dimension(I.permuted(perm)) == T


def test_backends_agree():
    for I in _borel_upto(9):
        gens, comp = tangent3d.generator_array(I), tangent3d.complement_array(I)
        alphas = tangent3d.candidate_shifts(I)
        a = kernels.tangent_pieces_numba(gens, comp, alphas)
        b = kernels.tangent_pieces_numpy(gens, comp, alphas)
        assert np.array_equal(a, b)


def test_syzygy_graph_matches_kernel():
    I = EX_A
    for alpha in map(tuple, tangent3d.candidate_shifts(I).tolist()):
        assert tangent3d.syzygy_graph(I, alpha).contribution == tangent3d.graded_tangent_piece(I, alpha)


def test_embedded_2d():
    for J in staircases2(8):
        E = embed2(J)
        assert tangent3d.tangent_dimension(E) == 3 * J.colength
        alphas = [a for a in tangent3d.candidate_shifts(E).tolist() if a[0] == 0]
        _, vals = tangent3d.graded_pieces(E, alphas)
        assert int(vals.sum()) == hom2d.hom2(J, J) == 2 * J.colength


def test_x_y_z4():
    assert tangent3d.tangent_dimension(Staircase3.from_generators(parse_ideal("x,y,z^4"))) == 12


def test_lemma_alpha_on_borel():
    for I in _borel_upto(12):
        assert tangent3d.check_lemma_alpha(I)


def test_lemma_alpha_needs_borel():
    I = Staircase3.from_generators(parse_ideal("x^3,y,z"))
    assert ((3, 0, 0), (-2, 1, 0)) in tangent3d.lemma_alpha_failures(I)
    with pytest.raises(ValueError):
        tangent3d.check_lemma_alpha(I)


@pytest.mark.parametrize("m1", range(1, 51))
def test_zero_vector_budget(m1):
    from math import comb
    assert tangent3d.zero_vector_budget(m1) == comb(m1 + 2, 4)


def test_cross_hom_bounds():
    for I in _borel_upto(12):
        ch = tangent3d.cross_homs(I)
        s = ch.slices
        for i, row in enumerate(ch.entries):
            for j, h in enumerate(row):
                assert h <= s[i].colength + s[j].colength - hom2d.t_statistic(s[i], s[j])


def test_chain_for_every_borel_ideal():
    for I in _borel_upto(12):
        c = tangent3d.upper_bound_chain(I)
        assert c.holds
        assert c.b3 == psi(I.colength, I.pure_exponents()[0])


def test_trace_lines():
    lines = tangent3d.trace_lines(EX_A)
    assert sum(int(ln.rsplit("dim=", 1)[1]) for ln in lines) == 24
    assert all(ln.startswith("alpha=") for ln in lines)


@pytest.mark.parametrize("k", range(1, 6))
def test_power_slices_t_equals_ghosts(k):
    from math import comb
    s = power_ideal(k).decompose()
    for i in range(k):
        for j in range(i + 1, k):
            assert hom2d.t_statistic(s[i], s[j]) == len(hom2d.ghost_vectors(s[i], s[j])) == comb(j - i + 1, 2)


def test_t_lower_bound_on_slices():
    from math import comb
    for I in _borel_upto(20):
        s = I.decompose()
        for i in range(len(s)):
            for j in range(i + 1, len(s)):
                assert comb(j - i + 1, 2) <= hom2d.t_statistic(s[i], s[j])
