"""Exact tangent dimension T(I) = dim Hom(I, R/I) for monomial I in k[x,y,z].

A degree-a homomorphism sends each minimal generator u to c_u x^(u+a).
The pairwise lcm relations generate all syzygies of a monomial ideal, and
the relation between u and v binds (forces c_u = c_v) exactly when
lcm(u, v) + a is a complement point.  Generators with u + a outside N^3
are forced to zero.  So the degree-a piece has one dimension per
connected component of the relation graph whose vertices all satisfy
u + a in N^3 minus I~.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterator

import numpy as np

from . import hom2d, kernels
from .lattice import VARS3, Staircase2, Staircase3, render_monomial

Shift3 = tuple[int, int, int]


def generator_array(I: Staircase3) -> np.ndarray:
    return np.asarray(I.minimal_generators().gens, dtype=np.int64).reshape(-1, 3)


def complement_array(I: Staircase3) -> np.ndarray:
    comp = np.zeros(I.shape, dtype=bool)
    for p in I.points():
        comp[p] = True
    return comp


def candidate_shifts(I: Staircase3) -> np.ndarray:
    """All a = p - u with p a complement point and u a minimal generator.

    A piece with no free vertex is zero, so these are the only shifts
    that can contribute.
    """
    gens = generator_array(I)
    pts = np.asarray(list(I.points()), dtype=np.int64)
    alphas = (pts[None, :, :] - gens[:, None, :]).reshape(-1, 3)
    return np.unique(alphas, axis=0)


def shift_box(I: Staircase3, margin: int = 0) -> Iterator[Shift3]:
    """a_c in [-max gen exponent, max complement coordinate] per axis."""
    gens = generator_array(I)
    lo = -gens.max(axis=0) - margin
    hi = np.asarray(I.shape) - 1 + margin
    for ax in range(lo[0], hi[0] + 1):
        for ay in range(lo[1], hi[1] + 1):
            for az in range(lo[2], hi[2] + 1):
                yield (ax, ay, az)


@dataclass(frozen=True)
class SyzygyGraph:
    """Relation graph among minimal generators for one shift."""

    vertices: tuple[Shift3, ...]
    shift: Shift3
    free: frozenset
    edges: tuple[tuple[int, int], ...]

    def components(self) -> list[list[int]]:
        parent = list(range(len(self.vertices)))

        def find(u):
            while parent[u] != u:
                parent[u] = parent[parent[u]]
                u = parent[u]
            return u

        for u, v in self.edges:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)
        groups: dict[int, list[int]] = {}
        for u in range(len(self.vertices)):
            groups.setdefault(find(u), []).append(u)
        return list(groups.values())

    @property
    def contribution(self) -> int:
        return sum(all(u in self.free for u in g) for g in self.components())


def syzygy_graph(I: Staircase3, alpha: Shift3) -> SyzygyGraph:
    gens = I.minimal_generators().gens

    def in_comp(p):
        return all(c >= 0 for c in p) and not I.contains(p)

    def in_ideal(p):
        return all(c >= 0 for c in p) and I.contains(p)

    shifted = [tuple(g[c] + alpha[c] for c in range(3)) for g in gens]
    free = frozenset(u for u, p in enumerate(shifted) if in_comp(p))
    edges = []
    for u in range(len(gens)):
        for v in range(u + 1, len(gens)):
            lcm = tuple(max(gens[u][c], gens[v][c]) + alpha[c] for c in range(3))
            if in_comp(lcm):
                assert not in_ideal(shifted[u]) and not in_ideal(shifted[v])
                edges.append((u, v))
    return SyzygyGraph(gens, tuple(alpha), free, tuple(edges))


def graded_tangent_piece(I: Staircase3, alpha: Shift3) -> int:
    """dim Hom(I, R/I)_alpha."""
    out = kernels.tangent_pieces(generator_array(I), complement_array(I), np.asarray([alpha]))
    return int(out[0])


def graded_pieces(I: Staircase3, alphas=None) -> tuple[np.ndarray, np.ndarray]:
    if alphas is None:
        alphas = candidate_shifts(I)
    alphas = np.asarray(alphas, dtype=np.int64).reshape(-1, 3)
    return alphas, kernels.tangent_pieces(generator_array(I), complement_array(I), alphas)


@lru_cache(maxsize=4096)
def _tangent_cached(I: Staircase3) -> int:
    return int(graded_pieces(I)[1].sum())


def tangent_dimension(I: Staircase3) -> int:
    """T(I) summed over all contributing shifts."""
    return _tangent_cached(I)


def trace_lines(I: Staircase3) -> list[str]:
    """Per-shift certificate: free set, active edges, contribution."""
    gens = I.minimal_generators()
    names = [render_monomial(g, VARS3) for g in gens.gens]
    lines = []
    for alpha in map(tuple, candidate_shifts(I).tolist()):
        G = syzygy_graph(I, alpha)
        free = ",".join(names[u] for u in sorted(G.free))
        edges = ",".join(f"{names[u]}-{names[v]}" for u, v in G.edges)
        lines.append(f"alpha={alpha[0]},{alpha[1]},{alpha[2]}\tfree={free}\tedges={edges}\tdim={G.contribution}")
    return lines


# ---------------------------------------------------------------------------
# independent route: rank of the per-degree linear system


def graded_piece_linalg(I: Staircase3, alpha: Shift3) -> int:
    """Same piece via rank of the explicit constraint matrix.

    Unknowns c_u, one per generator.  Rows: c_u = 0 whenever u + a is not
    a complement point, and c_u - c_v = 0 (terms of forced-zero
    generators dropped) whenever lcm(u, v) + a is one.
    """
    gens = I.minimal_generators().gens
    n = len(gens)

    def in_comp(p):
        return all(c >= 0 for c in p) and not I.contains(p)

    free = [in_comp(tuple(g[c] + alpha[c] for c in range(3))) for g in gens]
    rows = []
    for u in range(n):
        if not free[u]:
            r = np.zeros(n)
            r[u] = 1.0
            rows.append(r)
    for u in range(n):
        for v in range(u + 1, n):
            if in_comp(tuple(max(gens[u][c], gens[v][c]) + alpha[c] for c in range(3))):
                r = np.zeros(n)
                r[u] += free[u]
                r[v] -= free[v]
                rows.append(r)
    if not rows:
        return n
    return n - int(np.linalg.matrix_rank(np.vstack(rows)))


def tangent_dimension_linalg(I: Staircase3) -> int:
    return sum(graded_piece_linalg(I, a) for a in shift_box(I))


# ---------------------------------------------------------------------------
# slice calculus used by the upper bound


@dataclass(frozen=True)
class CrossHomMatrix:
    """entries[i][j] = hom(I_i, S/I_j), i in [0, m1], j in [0, m1 - 1]."""

    slices: tuple[Staircase2, ...]
    entries: tuple[tuple[int, ...], ...]

    @property
    def colengths(self) -> tuple[int, ...]:
        return tuple(s.colength for s in self.slices)

    def total(self) -> int:
        return sum(map(sum, self.entries))


def cross_homs(I: Staircase3) -> CrossHomMatrix:
    slices = I.decompose()
    m1 = len(slices) - 1
    entries = tuple(
        tuple(hom2d.hom2(slices[i], slices[j]) for j in range(m1))
        for i in range(m1 + 1)
    )
    return CrossHomMatrix(slices, entries)


def check_lemma_alpha(I: Staircase3) -> bool:
    """gamma + a stays outside I~ for every minimal generator gamma and every
    a with a_x < 0, a_y, a_z >= 0 and a_x + a_y + a_z <= -1.

    Raises ValueError on non-Borel input; use :func:`lemma_alpha_failures`
    to inspect arbitrary ideals.
    """
    if not I.is_borel():
        raise ValueError(f"precondition violated: {I} is not Borel-fixed")
    return not lemma_alpha_failures(I)


def lemma_alpha_failures(I: Staircase3) -> list[tuple[Shift3, Shift3]]:
    bad = []
    for g in I.minimal_generators():
        for ax in range(-g[0], 0):
            for ay in range(0, -ax):
                for az in range(0, -ax - ay):
                    p = (g[0] + ax, g[1] + ay, g[2] + az)
                    if I.contains(p):
                        bad.append((g, (ax, ay, az)))
    return bad


def zero_vector_budget(m1: int) -> int:
    """binom(m1 + 2, 4), checked against the double binomial sum."""
    if m1 < 1:
        raise ValueError("m1 must be at least 1")
    closed = comb(m1 + 2, 4)
    double = sum(comb(i - j, 2) for j in range(m1) for i in range(j + 1, m1 + 1))
    single = sum(comb(m1 - j + 1, 3) for j in range(m1))
    assert closed == double == single, (m1, closed, double, single)
    return closed


@dataclass(frozen=True)
class BoundChain:
    T: int
    b1: int
    b2: int
    b3: int

    @property
    def holds(self) -> bool:
        return self.T <= self.b1 <= self.b2 <= self.b3

    def as_list(self) -> list[int]:
        return [self.T, self.b1, self.b2, self.b3]


def upper_bound_chain(I: Staircase3, T: int | None = None) -> BoundChain:
    """T <= sum hom - z <= sum (l_i + l_j - t) - z <= (2 m1 + 1) l - 2 z,
    with z = binom(m1 + 2, 4)."""
    if T is None:
        T = tangent_dimension(I)
    ch = cross_homs(I)
    slices = ch.slices
    m1 = len(slices) - 1
    z = zero_vector_budget(m1)
    b1 = ch.total() - z
    b2 = sum(
        slices[i].colength + slices[j].colength - hom2d.t_statistic(slices[i], slices[j])
        for i in range(m1 + 1)
        for j in range(m1)
    ) - z
    b3 = (2 * m1 + 1) * I.colength - 2 * z
    return BoundChain(T, b1, b2, b3)
