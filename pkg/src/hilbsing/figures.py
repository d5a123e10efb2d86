"""Deterministic SVG drawings of staircases, slice decompositions and ghost vectors."""

from __future__ import annotations

from xml.sax.saxutils import escape

from . import hom2d
from .lattice import Staircase2, Staircase3

CELL = 24
PALETTE = ("#f4a259", "#5b8e7d", "#8cb369", "#bc4b51", "#6c91c2", "#c297b8", "#e3c567", "#7f7f7f")


def _fmt(v: float) -> str:
    return f"{v:.2f}".rstrip("0").rstrip(".")


class _Svg:
    def __init__(self):
        self.items: list[str] = []
        self.xmin = self.ymin = 0.0
        self.xmax = self.ymax = 0.0

    def _grow(self, *pts):
        for x, y in pts:
            self.xmin, self.xmax = min(self.xmin, x), max(self.xmax, x)
            self.ymin, self.ymax = min(self.ymin, y), max(self.ymax, y)

    def polygon(self, pts, fill, stroke="#222", width=1.0, cls=None):
        self._grow(*pts)
        p = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in pts)
        c = f' class="{cls}"' if cls else ""
        self.items.append(f'<polygon{c} points="{p}" fill="{fill}" stroke="{stroke}" stroke-width="{_fmt(width)}"/>')

    def rect(self, x, y, w, h, fill, stroke="#222", width=1.0, dash=None, cls=None):
        self._grow((x, y), (x + w, y + h))
        d = f' stroke-dasharray="{dash}"' if dash else ""
        c = f' class="{cls}"' if cls else ""
        self.items.append(
            f'<rect{c} x="{_fmt(x)}" y="{_fmt(y)}" width="{_fmt(w)}" height="{_fmt(h)}" '
            f'fill="{fill}" stroke="{stroke}" stroke-width="{_fmt(width)}"{d}/>'
        )

    def line(self, x1, y1, x2, y2, stroke="#222", width=1.0, arrow=False, cls=None):
        self._grow((x1, y1), (x2, y2))
        m = ' marker-end="url(#arrow)"' if arrow else ""
        c = f' class="{cls}"' if cls else ""
        self.items.append(
            f'<line{c} x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
            f'stroke="{stroke}" stroke-width="{_fmt(width)}"{m}/>'
        )

    def text(self, x, y, s, size=12, anchor="start"):
        self._grow((x, y - size), (x + 0.6 * size * len(s), y))
        self.items.append(
            f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-family="sans-serif" font-size="{size}" '
            f'text-anchor="{anchor}">{escape(s)}</text>'
        )

    def render(self, pad: float = 12) -> str:
        x0, y0 = self.xmin - pad, self.ymin - pad
        w, h = self.xmax - self.xmin + 2 * pad, self.ymax - self.ymin + 2 * pad
        head = (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{_fmt(w)}" height="{_fmt(h)}" viewBox="{_fmt(x0)} {_fmt(y0)} {_fmt(w)} {_fmt(h)}">\n'
            '<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="7" '
            'markerHeight="7" orient="auto-start-reverse"><path d="M0,0 L10,5 L0,10 z" fill="#b00"/></marker></defs>\n'
        )
        return head + "\n".join(self.items) + ("\n" if self.items else "") + "</svg>\n"


def _iso(i: float, a: float, b: float) -> tuple[float, float]:
    # x toward the viewer-left, y to the right, z up
    s = CELL * 0.866
    return (s * (a - i), -CELL * b + CELL * 0.5 * (a + i))


def _cube(svg: _Svg, i: int, a: int, b: int, color: str) -> None:
    P = lambda di, da, db: _iso(i + di, a + da, b + db)  # noqa: E731
    svg.polygon([P(0, 0, 1), P(1, 0, 1), P(1, 1, 1), P(0, 1, 1)], color, cls="top")
    svg.polygon([P(1, 0, 0), P(1, 1, 0), P(1, 1, 1), P(1, 0, 1)], _shade(color, 0.8), cls="front")
    svg.polygon([P(0, 1, 0), P(1, 1, 0), P(1, 1, 1), P(0, 1, 1)], _shade(color, 0.65), cls="side")


def _shade(color: str, f: float) -> str:
    r, g, b = (int(color[k:k + 2], 16) for k in (1, 3, 5))
    return "#" + "".join(f"{int(c * f):02x}" for c in (r, g, b))


def _grid2(svg: _Svg, J: Staircase2, ox: float, oy: float, color: str, label: str | None = None) -> None:
    for a, b in J.points():
        svg.rect(ox + a * CELL, oy - (b + 1) * CELL, CELL, CELL, color, cls="box")
    for a, b in J.minimal_generators():
        if J.colength:
            svg.rect(ox + a * CELL + 4, oy - (b + 1) * CELL + 4, CELL - 8, CELL - 8, "none", "#555", 1, "2,2", cls="gen")
    if label:
        svg.text(ox, oy + 16, label)


def staircase3_svg(I: Staircase3 | None, decomposition: bool = True) -> str:
    """Isometric cubes colored by x-slice, optionally with the slices side by side."""
    svg = _Svg()
    if I is None:
        return svg.render()
    pts = sorted(I.points(), key=lambda p: (p[2], -p[0] - p[1], p[0]))
    for i, a, b in pts:
        _cube(svg, i, a, b, PALETTE[i % len(PALETTE)])
    svg.text(_iso(0, 0, 0)[0], _iso(0, 0, 0)[1] + CELL * 2 + 20, str(I), size=11)
    if decomposition:
        ox = svg.xmax + 2 * CELL
        oy = 0.0
        for i, S in enumerate(I.decompose()):
            label = f"I_{i} = ({S})"
            _grid2(svg, S, ox, oy, PALETTE[i % len(PALETTE)], label)
            ox += max(S.width, 1) * CELL + max(len(label) * 7, 2 * CELL)
    return svg.render()


def pair_svg(J: Staircase2, Jp: Staircase2, ghosts: bool = True) -> str:
    """Complement of J filled, complement of J' dashed, ghost vectors as arrows.

    Each ghost arrow starts at the cell gamma of J~ chosen by the bijection
    onto the complement of J and ends at gamma + alpha.
    """
    svg = _Svg()
    if J.colength == 0 and Jp.colength == 0:
        return svg.render()
    for a, b in J.points():
        svg.rect(a * CELL, -(b + 1) * CELL, CELL, CELL, PALETTE[0], cls="box")
    for a, b in Jp.points():
        svg.rect(a * CELL + 3, -(b + 1) * CELL + 3, CELL - 6, CELL - 6, "none", PALETTE[1], 2, "4,2", cls="boxp")
    w = max(J.width, Jp.width) + 1
    h = max(J.height, Jp.height) + 1
    svg.line(-3 * CELL, 0, w * CELL, 0, "#888")
    svg.line(0, 3 * CELL, 0, -h * CELL, "#888")
    svg.text(w * CELL + 4, 4, "y")
    svg.text(4, -h * CELL - 4, "z")
    if ghosts:
        g = hom2d.bijection_g(J, Jp)
        for comp, (gy, _) in sorted(g.items(), key=lambda kv: kv[0].shift):
            if comp.bounded:
                continue
            ay, az = comp.shift
            cy, cz = min(comp.cells, key=lambda c: (-c[0], c[1]))
            gz = cz - az
            x1, y1 = (gy + 0.5) * CELL, -(gz + 0.5) * CELL
            x2, y2 = (cy + 0.5) * CELL, -(cz + 0.5) * CELL
            svg.line(x1, y1, x2, y2, "#b00", 1.5, arrow=True, cls="ghost")
            svg.text(x2 - 4, y2 - 4, f"({ay},{az})", size=9, anchor="end")
    svg.text(-3 * CELL, 3 * CELL + 16, f"J = ({J})   J' = ({Jp})", size=11)
    return svg.render()
