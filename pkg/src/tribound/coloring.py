"""Fox n-colorings of diagram arcs and their region extensions.

An n-coloring assigns a color in Z(n) = {0, ..., n-1} to every arc so
that at each crossing the two under-arc colors a, c and the over-arc
color b satisfy a + c = 2b (mod n).  Every coloring extends uniquely to
the complementary regions once the outer region's color s is fixed: the
two regions on either side of an arc of color a satisfy s + t = 2a.

The dihedral operation ``x * y = 2y - x (mod n)`` underlies both rules
and is exposed as :func:`quandle_star`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import Diagram

__all__ = [
    "quandle_star",
    "Coloring",
    "ExtendedColoring",
    "RegionConflictError",
    "crossing_arc_triples",
    "enumerate_colorings",
    "is_trivial",
    "extend_coloring",
]


def quandle_star(x: int, y: int, n: int) -> int:
    """The integer k in Z(n) with k = 2y - x (mod n)."""
    if n < 1:
        raise ValueError(f"modulus must be >= 1, got {n}")
    return (2 * y - x) % n


class RegionConflictError(RuntimeError):
    """Region propagation produced two different colors for one face.

    This cannot happen for a valid diagram and a valid coloring; it
    signals corrupted input or a conventions bug.
    """


@dataclass(frozen=True)
class Coloring:
    """Arc colors indexed by arc id."""

    n: int
    arc_colors: tuple[int, ...]

    def color(self, arc_id: int) -> int:
        return self.arc_colors[arc_id]


@dataclass(frozen=True)
class ExtendedColoring:
    """A coloring plus region colors indexed by face id; the outer face
    carries ``outer_color``."""

    base: Coloring
    region_colors: tuple[int, ...]
    outer_color: int

    @property
    def n(self) -> int:
        return self.base.n

    def arc_color(self, arc_id: int) -> int:
        return self.base.arc_colors[arc_id]

    def region_color(self, face_id: int) -> int:
        return self.region_colors[face_id]


def crossing_arc_triples(d: Diagram) -> list[tuple[int, int, int, int]]:
    """Per crossing: (crossing id, under-in arc, under-out arc, over arc)."""
    triples = []
    for c in d.crossings:
        under_in = under_out = over = -1
        for s in c.slots:
            if s.level == "under":
                if s.direction == "in":
                    under_in = d.arc_of_edge(s.edge)
                else:
                    under_out = d.arc_of_edge(s.edge)
            elif s.direction == "in":
                over = d.arc_of_edge(s.edge)
        triples.append((c.id, under_in, under_out, over))
    return triples


def enumerate_colorings(d: Diagram, n: int) -> list[Coloring]:
    """All Fox n-colorings, in lexicographic order of arc-color vectors.

    Backtracks over arcs in id order, checking each crossing relation as
    soon as all three of its arcs are assigned.
    """
    if n < 1:
        raise ValueError(f"modulus must be >= 1, got {n}")
    arc_count = len(d.arcs)
    constraints = [
        (a, c, b) for (_, a, c, b) in crossing_arc_triples(d)
    ]
    by_last: list[list[tuple[int, int, int]]] = [[] for _ in range(arc_count)]
    for tri in constraints:
        by_last[max(tri)].append(tri)

    out: list[Coloring] = []
    colors = [0] * arc_count

    def backtrack(i: int) -> None:
        if i == arc_count:
            out.append(Coloring(n=n, arc_colors=tuple(colors)))
            return
        for v in range(n):
            colors[i] = v
            if all(
                (colors[a] + colors[c] - 2 * colors[b]) % n == 0
                for (a, c, b) in by_last[i]
            ):
                backtrack(i + 1)

    backtrack(0)
    return out


def is_trivial(c: Coloring) -> bool:
    """True iff all arcs carry the same color."""
    return len(set(c.arc_colors)) == 1


def extend_coloring(d: Diagram, c: Coloring, s: int) -> ExtendedColoring:
    """The unique region extension with outer-region color s.

    Region colors propagate from the outer face: crossing an edge of arc
    color a from a region of color r lands in the region of color
    2a - r (mod n).  Every edge relation is re-checked afterwards.
    """
    n = c.n
    if not 0 <= s < n:
        raise ValueError(f"outer color {s} not in Z({n})")
    region = [-1] * len(d.faces)
    region[d.outer_face] = s
    stack = [d.outer_face]
    adjacency: dict[int, list[tuple[int, int]]] = {f.id: [] for f in d.faces}
    for e in d.edges:
        a = c.arc_colors[d.arc_of_edge(e.id)]
        lf = d.face_of_side(e.id, "left")
        rf = d.face_of_side(e.id, "right")
        adjacency[lf].append((rf, a))
        adjacency[rf].append((lf, a))
    while stack:
        fid = stack.pop()
        for other, a in adjacency[fid]:
            t = (2 * a - region[fid]) % n
            if region[other] == -1:
                region[other] = t
                stack.append(other)
            elif region[other] != t:
                raise RegionConflictError(
                    f"face {other} reached with colors {region[other]} and {t}"
                )
    for e in d.edges:
        a = c.arc_colors[d.arc_of_edge(e.id)]
        lf = d.face_of_side(e.id, "left")
        rf = d.face_of_side(e.id, "right")
        if (region[lf] + region[rf] - 2 * a) % n != 0:
            raise RegionConflictError(
                f"edge {e.id} violates the region relation after propagation"
            )
    return ExtendedColoring(
        base=c, region_colors=tuple(region), outer_color=s
    )
