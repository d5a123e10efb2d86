"""Staircases of finite-colength monomial ideals in k[y,z] and k[x,y,z].

A 2-variable ideal J is stored through its complement, the Young diagram
of monomials y^a z^b not in J, as the row-length sequence
``rows[b] = #{a : y^a z^b not in J}``.  A 3-variable ideal I is stored as
the sequence of its x-slices I = sum_i x^i I_i, each slice a 2-variable
staircase; only the nonempty complement slices are kept.

Exponent vectors are plain tuples: ``(a, b)`` for y^a z^b and
``(i, a, b)`` for x^i y^a z^b.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Iterator, Sequence, Tuple, Union

Exp2 = Tuple[int, int]
Exp3 = Tuple[int, int, int]

VARS3 = ("x", "y", "z")
VARS2 = ("y", "z")


class IdealError(ValueError):
    """Base class for malformed ideal input."""


class IdealSyntaxError(IdealError):
    pass


class ColengthError(IdealError):
    """The generators do not cut out a finite-colength ideal."""


class NonMinimalWarning(UserWarning):
    pass


# ---------------------------------------------------------------------------
# generator sets


def _divides(g: Sequence[int], m: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(g, m))


def minimalize(gens: Iterable[Sequence[int]]) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Split ``gens`` into (minimal generators, dropped redundant ones)."""
    uniq = sorted(set(tuple(g) for g in gens), key=lambda g: (sum(g), g))
    keep: list[tuple[int, ...]] = []
    dropped: list[tuple[int, ...]] = []
    for g in uniq:
        if any(_divides(h, g) for h in keep):
            dropped.append(g)
        else:
            keep.append(g)
    return keep, dropped


def monomial_key(e: Sequence[int]) -> tuple:
    """Total degree first, then lex with x > y > z (larger monomial first)."""
    return (sum(e), tuple(-c for c in e))


def render_monomial(e: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for name, c in zip(names, e):
        if c == 1:
            parts.append(name)
        elif c > 1:
            parts.append(f"{name}^{c}")
    return "".join(parts) or "1"


@dataclass(frozen=True)
class GeneratorSet:
    """Minimal monomial generators of an ideal in 2 or 3 variables.

    ``dropped`` keeps the non-minimal inputs discarded during parsing, so
    callers can report them.
    """

    gens: tuple[tuple[int, ...], ...]
    nvars: int = 3
    dropped: tuple[tuple[int, ...], ...] = field(default=(), compare=False)

    def __post_init__(self):
        if not self.gens:
            raise IdealError("empty generator set")
        for g in self.gens:
            if len(g) != self.nvars or any(c < 0 for c in g):
                raise IdealError(f"bad exponent vector {g!r}")
        keep, _ = minimalize(self.gens)
        if len(keep) != len(self.gens):
            raise IdealError("generator set is not minimal")
        object.__setattr__(self, "gens", tuple(sorted(self.gens, key=monomial_key)))

    @classmethod
    def from_iterable(cls, gens: Iterable[Sequence[int]], nvars: int = 3) -> "GeneratorSet":
        keep, dropped = minimalize(gens)
        return cls(tuple(keep), nvars, tuple(dropped))

    @property
    def names(self) -> tuple[str, ...]:
        return VARS3 if self.nvars == 3 else VARS2

    @property
    def is_unit(self) -> bool:
        return self.gens == ((0,) * self.nvars,)

    def pure_power(self, axis: int) -> int | None:
        for g in self.gens:
            if all(c == 0 for j, c in enumerate(g) if j != axis):
                return g[axis]
        return None

    def __str__(self) -> str:
        return ",".join(render_monomial(g, self.names) for g in self.gens)

    def __len__(self) -> int:
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)


_TERM = re.compile(r"([a-z])(?:\^(\d+))?")


def parse_ideal(text: str, nvars: int = 3) -> GeneratorSet:
    """Parse ``"x^2,y^2,z^3,xz,yz^2,xy"`` into a minimal generator set.

    ``nvars=2`` restricts the alphabet to y, z.  Non-minimal terms are
    dropped with a :class:`NonMinimalWarning`.  Raises
    :class:`IdealSyntaxError` on malformed input and :class:`ColengthError`
    if some pure power is missing.
    """
    names = VARS3 if nvars == 3 else VARS2
    body = re.sub(r"\s+", "", text)
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    if not body:
        raise IdealSyntaxError("empty ideal text")
    gens = []
    for term in body.split(","):
        if not term:
            raise IdealSyntaxError(f"empty term in {text!r}")
        e = [0] * nvars
        if term != "1":
            pos = 0
            while pos < len(term):
                m = _TERM.match(term, pos)
                if m is None:
                    raise IdealSyntaxError(f"unexpected character {term[pos]!r} in term {term!r}")
                var, exp = m.group(1), m.group(2)
                if var not in names:
                    raise IdealSyntaxError(f"unknown variable {var!r} (expected one of {', '.join(names)})")
                if exp is not None and int(exp) == 0:
                    raise IdealSyntaxError(f"exponent must be positive in {term!r}")
                e[names.index(var)] += int(exp) if exp is not None else 1
                pos = m.end()
        gens.append(tuple(e))
    gs = GeneratorSet.from_iterable(gens, nvars)
    if gs.dropped:
        dropped = ",".join(render_monomial(g, names) for g in gs.dropped)
        warnings.warn(f"dropped non-minimal generators: {dropped}", NonMinimalWarning, stacklevel=2)
    if not gs.is_unit:
        missing = [names[j] for j in range(nvars) if gs.pure_power(j) is None]
        if missing:
            raise ColengthError(f"not finite colength: no pure power of {', '.join(missing)}")
    return gs


# ---------------------------------------------------------------------------
# staircases


@dataclass(frozen=True, order=True)
class Staircase2:
    """Complement of a monomial ideal J in k[y,z] as row lengths.

    ``rows[b]`` counts the complement points with z-exponent b.  The
    empty sequence is the unit ideal.
    """

    rows: tuple[int, ...] = ()

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        if any(r <= 0 for r in rows):
            raise IdealError(f"row lengths must be positive: {rows}")
        if any(rows[j] < rows[j + 1] for j in range(len(rows) - 1)):
            raise IdealError(f"row lengths must be weakly decreasing: {rows}")
        object.__setattr__(self, "rows", rows)

    # sizes -------------------------------------------------------------
    @property
    def colength(self) -> int:
        return sum(self.rows)

    @property
    def height(self) -> int:
        """h with z^h a minimal generator."""
        return len(self.rows)

    @property
    def width(self) -> int:
        """Exponent of the pure power of y."""
        return self.rows[0] if self.rows else 0

    def row(self, b: int) -> int:
        return self.rows[b] if 0 <= b < len(self.rows) else 0

    def column_height(self, a: int) -> int:
        """Number of complement points with y-exponent a."""
        return sum(1 for r in self.rows if r > a)

    # membership --------------------------------------------------------
    def contains(self, e: Sequence[int]) -> bool:
        """True iff y^a z^b lies in the ideal (e must be nonnegative)."""
        a, b = e
        return not (b < len(self.rows) and a < self.rows[b])

    def points(self) -> Iterator[Exp2]:
        for b, r in enumerate(self.rows):
            for a in range(r):
                yield (a, b)

    def minimal_generators(self) -> GeneratorSet:
        gens = []
        prev = None
        for b, r in enumerate(self.rows + (0,)):
            if prev is None or r < prev:
                gens.append((r, b))
            prev = r
        return GeneratorSet(tuple(gens), nvars=2)

    @classmethod
    def from_generators(cls, gens: GeneratorSet | Iterable[Sequence[int]]) -> "Staircase2":
        gens = [tuple(g) for g in gens]
        if any(len(g) != 2 for g in gens):
            raise IdealError("expected exponent vectors in (y, z)")
        if (0, 0) in gens:
            return cls(())
        ypow = [g[0] for g in gens if g[1] == 0]
        zpow = [g[1] for g in gens if g[0] == 0]
        if not ypow or not zpow:
            raise ColengthError("not finite colength: missing a pure power of y or z")
        rows = []
        for b in range(min(zpow)):
            rows.append(min(g[0] for g in gens if g[1] <= b))
        return cls(tuple(rows))

    @classmethod
    def from_points(cls, pts: Iterable[Exp2]) -> "Staircase2":
        pts = set(pts)
        h = 1 + max((b for _, b in pts), default=-1)
        rows = tuple(sum(1 for a, b in pts if b == j) for j in range(h))
        s = cls(rows)
        if set(s.points()) != pts:
            raise IdealError("point set is not an order ideal")
        return s

    # Borel-fixedness (y is the larger variable) ------------------------
    def is_borel(self) -> bool:
        literal = self._borel_literal()
        steps = self._borel_steps()
        assert literal == steps, f"Borel routes disagree on {self.rows}"
        return literal

    def _borel_literal(self) -> bool:
        for a, b in self.minimal_generators():
            if b >= 1 and not self.contains((a + 1, b - 1)):
                return False
        return True

    def _borel_steps(self) -> bool:
        ext = self.rows + (0,)
        return all(ext[j] - ext[j + 1] <= 1 for j in range(len(self.rows)))

    def canonical(self) -> str:
        return str(self.minimal_generators())

    def __str__(self) -> str:
        return self.canonical()


def from_generators(gens: GeneratorSet) -> "Staircase2 | Staircase3":
    if gens.nvars == 2:
        return Staircase2.from_generators(gens)
    return Staircase3.from_generators(gens)


@dataclass(frozen=True, order=True)
class Staircase3:
    """Complement of a monomial ideal in k[x,y,z] as its nonempty x-slices.

    ``slices[i]`` is the complement of I_i in the decomposition
    I = sum x^i I_i; the number of slices is the pure exponent of x.
    """

    slices: tuple[Staircase2, ...]

    def __post_init__(self):
        slices = tuple(s if isinstance(s, Staircase2) else Staircase2(tuple(s)) for s in self.slices)
        if not slices:
            raise IdealError("the unit ideal has no Staircase3 (colength 0)")
        for s in slices:
            if s.colength == 0:
                raise IdealError("stored slices must be nonempty")
        for upper, lower in zip(slices, slices[1:]):
            if lower.height > upper.height or any(lower.rows[b] > upper.rows[b] for b in range(lower.height)):
                raise IdealError("slices must be nested (I_i contained in I_{i+1})")
        object.__setattr__(self, "slices", slices)

    @classmethod
    def from_rows(cls, *rows: Sequence[int]) -> "Staircase3":
        return cls(tuple(Staircase2(tuple(r)) for r in rows))

    @property
    def colength(self) -> int:
        return sum(s.colength for s in self.slices)

    @property
    def shape(self) -> tuple[int, int, int]:
        """Bounding box (m1, m2, m3) of the complement."""
        return (len(self.slices), self.slices[0].width, self.slices[0].height)

    def pure_exponents(self) -> tuple[int, int, int]:
        return self.shape

    def decompose(self) -> tuple[Staircase2, ...]:
        """Slices I_0, ..., I_{m1}, the last one the unit ideal."""
        return self.slices + (Staircase2(()),)

    def contains(self, e: Sequence[int]) -> bool:
        i, a, b = e
        return i >= len(self.slices) or self.slices[i].contains((a, b))

    def points(self) -> Iterator[Exp3]:
        for i, s in enumerate(self.slices):
            for a, b in s.points():
                yield (i, a, b)

    def minimal_generators(self) -> GeneratorSet:
        m1, m2, m3 = self.shape
        gens = []
        for i in range(m1 + 1):
            for b in range(m3 + 1):
                for a in range(m2 + 1):
                    e = (i, a, b)
                    if not self.contains(e):
                        continue
                    if all(
                        e[c] == 0 or not self.contains(tuple(e[d] - (d == c) for d in range(3)))
                        for c in range(3)
                    ):
                        gens.append(e)
        return GeneratorSet(tuple(gens), nvars=3)

    @classmethod
    def from_generators(cls, gens: GeneratorSet | Iterable[Sequence[int]]) -> "Staircase3":
        gens = [tuple(g) for g in gens]
        if any(len(g) != 3 for g in gens):
            raise IdealError("expected exponent vectors in (x, y, z)")
        if (0, 0, 0) in gens:
            raise IdealError("the unit ideal has no Staircase3 (colength 0)")
        for axis, name in enumerate(VARS3):
            if not any(g[axis] > 0 and sum(g) == g[axis] for g in gens):
                raise ColengthError(f"not finite colength: no pure power of {name}")
        m1 = min(g[0] for g in gens if g[1] == g[2] == 0)
        slices = []
        for i in range(m1):
            active = [g for g in gens if g[0] <= i]
            sub = minimalize((g[1], g[2]) for g in active)[0]
            slices.append(Staircase2.from_generators(sub))
        return cls(tuple(slices))

    @classmethod
    def from_points(cls, pts: Iterable[Exp3]) -> "Staircase3":
        pts = set(pts)
        m1 = 1 + max((p[0] for p in pts), default=-1)
        slices = tuple(Staircase2.from_points((a, b) for i, a, b in pts if i == j) for j in range(m1))
        s = cls(slices)
        if set(s.points()) != pts:
            raise IdealError("point set is not an order ideal")
        return s

    def permuted(self, perm: Sequence[int]) -> "Staircase3":
        """Staircase after sending coordinate c of each point to position perm[c]."""
        out = []
        for p in self.points():
            q = [0, 0, 0]
            for c in range(3):
                q[perm[c]] = p[c]
            out.append(tuple(q))
        return Staircase3.from_points(out)

    # Borel-fixedness ---------------------------------------------------
    def is_borel(self) -> bool:
        literal = self._borel_literal()
        closure = self._borel_closure()
        assert literal == closure, f"Borel routes disagree on {self}"
        if literal:
            m1, m2, m3 = self.shape
            assert m1 <= m2 <= m3
        return literal

    def _borel_literal(self) -> bool:
        for i, a, b in self.minimal_generators():
            if b >= 1 and not (self.contains((i + 1, a, b - 1)) and self.contains((i, a + 1, b - 1))):
                return False
            if a >= 1 and not self.contains((i + 1, a - 1, b)):
                return False
        return True

    def _borel_closure(self) -> bool:
        if not all(s._borel_steps() for s in self.slices):
            return False
        for i, a, b in self.points():
            if i >= 1 and (self.contains((i - 1, a + 1, b)) or self.contains((i - 1, a, b + 1))):
                return False
        return True

    def canonical(self) -> str:
        return str(self.minimal_generators())

    def __str__(self) -> str:
        return self.canonical()


Staircase = Union[Staircase2, Staircase3]


def minimal_generators(s: Staircase) -> GeneratorSet:
    return s.minimal_generators()


def colength(s: Staircase) -> int:
    return s.colength


def contains(s: Staircase, e: Sequence[int]) -> bool:
    return s.contains(e)


def is_borel2(s: Staircase2) -> bool:
    return s.is_borel()


def is_borel3(s: Staircase3) -> bool:
    return s.is_borel()


def decompose(s: Staircase3) -> tuple[Staircase2, ...]:
    return s.decompose()


def pure_exponents(s: Staircase3) -> tuple[int, int, int]:
    return s.pure_exponents()


def height2(s: Staircase2) -> int:
    return s.height


def power_ideal(k: int) -> Staircase3:
    """Staircase of m^k = (x, y, z)^k."""
    if k < 1:
        raise IdealError("k must be at least 1 (m^0 is the unit ideal)")
    s = Staircase3.from_rows(*[tuple(range(k - i, 0, -1)) for i in range(k)])
    assert s.colength == comb(k + 2, 3)
    return s


def power_ideal2(k: int) -> Staircase2:
    return Staircase2(tuple(range(k, 0, -1)))


def ideal_from_text(text: str, nvars: int = 3) -> Staircase:
    gs = parse_ideal(text, nvars)
    if nvars == 2:
        return Staircase2.from_generators(gs)
    return Staircase3.from_generators(gs)


def embed2(j: Staircase2) -> Staircase3:
    """The ideal (x) + J in k[x,y,z]."""
    if j.colength == 0:
        raise IdealError("cannot embed the unit ideal")
    return Staircase3((j,))
