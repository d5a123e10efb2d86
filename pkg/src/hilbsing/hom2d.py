"""Graded pieces of Hom(J, S/J') for monomial ideals J, J' in S = k[y,z].

For a shift a, the degree-a piece of Hom(J, S/J') has a basis indexed by
the bounded connected components of (J~ + a) minus J'~ in Z^2.  The sets
used here:

* ``A_p``: bounded components with a_z >= 0,
* ``A_n``: bounded components with a_z < 0,
* ``B_n``: components with a_z < 0 lying in the closed upper half plane,
  bounded or not (so ``A_n`` is a subset of ``B_n``).

Shifts of elements of ``B_n \\ A_n`` are the ghost vectors, and
hom(J, S/J') = l + l' - #ghosts.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from . import kernels
from .lattice import Staircase2

Shift2 = tuple[int, int]

BOUNDED = "bounded"
UPPER = "unbounded-upper"
OTHER = "unbounded-other"


@dataclass(frozen=True)
class PlaneComponent:
    """One 4-connected component of (J~ + a) minus J'~.

    ``cells`` is the part visible in the analysis window
    [-1, Y) x [-1, Z); for a bounded component it is the whole set.
    """

    shift: Shift2
    cells: frozenset
    classification: str

    @property
    def bounded(self) -> bool:
        return self.classification == BOUNDED

    @property
    def upper(self) -> bool:
        """Contained in the upper half plane z >= 0."""
        return self.classification in (BOUNDED, UPPER)


@dataclass(frozen=True)
class GradedHomPiece:
    shift: Shift2
    components: tuple[PlaneComponent, ...]

    @property
    def dimension(self) -> int:
        return sum(c.bounded for c in self.components)


def _window(J: Staircase2, Jp: Staircase2, alpha: Shift2) -> tuple[int, int]:
    ay, az = alpha
    return max(Jp.width, ay + J.width + 1), max(Jp.height, az + J.height + 1)


def difference_cell(J: Staircase2, Jp: Staircase2, alpha: Shift2, y: int, z: int) -> bool:
    """Is (y, z) in (J~ + alpha) minus J'~ ?"""
    a, b = y - alpha[0], z - alpha[1]
    if a < 0 or b < 0 or not J.contains((a, b)):
        return False
    return y < 0 or z < 0 or not Jp.contains((y, z))


def components_at(J: Staircase2, Jp: Staircase2, alpha: Shift2) -> GradedHomPiece:
    """Full component decomposition of (J~ + alpha) minus J'~.

    Unbounded components are represented by their window cells.  A
    component is unbounded iff it has a cell with a negative coordinate,
    and it leaves the upper half plane iff it has a cell with z < 0.
    """
    alpha = (int(alpha[0]), int(alpha[1]))
    Y, Z = _window(J, Jp, alpha)
    cells = {
        (y, z)
        for y in range(-1, Y)
        for z in range(-1, Z)
        if difference_cell(J, Jp, alpha, y, z)
    }
    comps = []
    seen: set = set()
    for start in sorted(cells):
        if start in seen:
            continue
        seen.add(start)
        group = []
        todo = deque([start])
        while todo:
            c = todo.popleft()
            group.append(c)
            y, z = c
            for n in ((y + 1, z), (y - 1, z), (y, z + 1), (y, z - 1)):
                if n in cells and n not in seen:
                    seen.add(n)
                    todo.append(n)
        neg_y = any(y < 0 for y, _ in group)
        neg_z = any(z < 0 for _, z in group)
        if not neg_y and not neg_z:
            kind = BOUNDED
        elif not neg_z:
            kind = UPPER
        else:
            kind = OTHER
        comps.append(PlaneComponent(alpha, frozenset(group), kind))
    return GradedHomPiece(alpha, tuple(comps))


def shift_box(J: Staircase2, Jp: Staircase2, margin: int = 0) -> Iterator[Shift2]:
    """Shifts that can carry bounded or upper-half-plane components."""
    ay0, az0, nay, naz = kernels.hom2d_box(kernels.as_rows(J.rows), kernels.as_rows(Jp.rows))
    for ay in range(ay0 - margin, ay0 + nay + margin):
        for az in range(az0 - margin, az0 + naz + margin):
            yield (ay, az)


def graded_pieces(J: Staircase2, Jp: Staircase2, margin: int = 0) -> list[GradedHomPiece]:
    return [components_at(J, Jp, a) for a in shift_box(J, Jp, margin)]


# ---------------------------------------------------------------------------
# aggregate counts (kernel path)


@dataclass(frozen=True)
class Hom2dCounts:
    l: int
    lp: int
    a_p: int
    a_n: int
    b_n: int
    ghosts: tuple[Shift2, ...]

    @property
    def hom(self) -> int:
        return self.a_p + self.a_n


def hom2_counts(J: Staircase2, Jp: Staircase2) -> Hom2dCounts:
    bounded, confined, ay0, az0 = kernels.hom2d_grid(J.rows, Jp.rows)
    naz = bounded.shape[1]
    neg = (az0 + np.arange(naz)) < 0
    a_n = int(bounded[:, neg].sum())
    a_p = int(bounded[:, ~neg].sum())
    iy, iz = np.nonzero(confined & neg[None, :])
    ghosts = tuple(sorted((int(ay0 + i), int(az0 + j)) for i, j in zip(iy, iz)))
    return Hom2dCounts(J.colength, Jp.colength, a_p, a_n, a_n + len(ghosts), ghosts)


def hom2_by_components(J: Staircase2, Jp: Staircase2) -> int:
    """Sum over shifts of the number of bounded components."""
    bounded, _, _, _ = kernels.hom2d_grid(J.rows, Jp.rows)
    return int(bounded.sum())


def ghost_vectors(J: Staircase2, Jp: Staircase2) -> tuple[Shift2, ...]:
    return hom2_counts(J, Jp).ghosts


def hom2_by_formula(J: Staircase2, Jp: Staircase2) -> int:
    """l + l' - #ghosts."""
    return J.colength + Jp.colength - len(ghost_vectors(J, Jp))


def hom2(J: Staircase2, Jp: Staircase2) -> int:
    return hom2_by_components(J, Jp)


def t_statistic(J: Staircase2, Jp: Staircase2) -> int:
    """Complement points of J at or above the height of J'."""
    return sum(J.rows[Jp.height:])


# ---------------------------------------------------------------------------
# explicit sets and the two bijections (reference path)


def _collect(J: Staircase2, Jp: Staircase2):
    a_p, a_n, b_n = [], [], []
    for piece in graded_pieces(J, Jp):
        az = piece.shift[1]
        for c in piece.components:
            if az >= 0:
                if c.bounded:
                    a_p.append(c)
            else:
                if c.bounded:
                    a_n.append(c)
                if c.upper:
                    b_n.append(c)
    return a_p, a_n, b_n


def set_Ap(J: Staircase2, Jp: Staircase2) -> list[PlaneComponent]:
    return _collect(J, Jp)[0]


def set_An(J: Staircase2, Jp: Staircase2) -> list[PlaneComponent]:
    return _collect(J, Jp)[1]


def set_Bn(J: Staircase2, Jp: Staircase2) -> list[PlaneComponent]:
    return _collect(J, Jp)[2]


def bijection_f(J: Staircase2, Jp: Staircase2) -> dict[PlaneComponent, tuple[int, int]]:
    """A_p -> N^2 minus J'~.

    gamma in J~ with gamma + a in U is taken with maximal z, then minimal
    y; the image is (gamma_y + a_y, a_z).
    """
    out = {}
    for comp in set_Ap(J, Jp):
        cy, cz = min(comp.cells, key=lambda c: (-c[1], c[0]))
        out[comp] = (cy, comp.shift[1])
    return out


def bijection_g(J: Staircase2, Jp: Staircase2) -> dict[PlaneComponent, tuple[int, int]]:
    """B_n -> N^2 minus J~.

    gamma with gamma + a in U is taken with maximal y, then minimal z;
    the image is (gamma_y, -a_z - 1).
    """
    out = {}
    for comp in set_Bn(J, Jp):
        cy, cz = min(comp.cells, key=lambda c: (-c[0], c[1]))
        ay, az = comp.shift
        out[comp] = (cy - ay, -az - 1)
    return out


def dump_lines(J: Staircase2, Jp: Staircase2) -> list[str]:
    """One line per (shift, component) with its classification tag."""
    lines = []
    for piece in graded_pieces(J, Jp):
        ay, az = piece.shift
        for c in piece.components:
            cells = ";".join(f"{y},{z}" for y, z in sorted(c.cells))
            lines.append(f"alpha={ay},{az}\t{c.classification}\tsize={len(c.cells)}\tcells={cells}")
    return lines
