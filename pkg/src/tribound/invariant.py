"""The crossing-weight invariant and type-III move lower bounds.

For an extended coloring, each crossing contributes epsilon * f(s, a, b)
where b is the over-arc color, a the color of the under-arc on the right
side of the oriented over-strand, and s the color of the region to the
right of both oriented strands.  Summing over crossings gives the weight
W; collecting W over all non-trivial colorings with a fixed outer color
gives the value set Phi.

If [W(D) - Phi(D')] misses the reachable-change levels Delta_0..Delta_{m-1}
of f, no sequence with fewer than m type-III moves can relate D and D',
because type-I/II moves leave W fixed and each type-III move shifts it by
an element of +/- Im(df).  ``certify_lower_bound`` searches all colorings
of D for the strongest such obstruction and emits a re-checkable
certificate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .cochain import CochainFn, DeltaReach, delta_reach
from .coloring import (
    Coloring,
    ExtendedColoring,
    enumerate_colorings,
    extend_coloring,
    is_trivial,
    quandle_star,
)
from .diagram import Diagram, diagram_hash

__all__ = [
    "CrossingTriple",
    "WeightValue",
    "PhiSet",
    "BoundCertificate",
    "crossing_triple",
    "weight",
    "phi_set",
    "w4_formula",
    "certify_lower_bound",
    "verify_certificate",
]


@dataclass(frozen=True)
class CrossingTriple:
    crossing: int
    s: int
    a: int
    b: int
    epsilon: int

    def contribution(self, f: CochainFn) -> int:
        return self.epsilon * f(self.s, self.a, self.b)


@dataclass(frozen=True)
class WeightValue:
    value: int
    per_crossing: tuple[CrossingTriple, ...]


@dataclass(frozen=True)
class PhiSet:
    """Weight values over all non-trivial colorings with outer color s.

    ``witnesses`` maps each value to the coloring ids (indices into the
    canonical enumeration) that realize it.
    """

    diagram: str
    s: int
    n: int
    values: tuple[int, ...]
    witnesses: dict[int, tuple[int, ...]] = field(compare=False)

    def __contains__(self, value: int) -> bool:
        return value in set(self.values)


def _right_corners(exit_slot: int) -> set[int]:
    # Corner k sits between slots k and k+1 (ccw).  A strand leaving via
    # slot r has the corners between slots r+2..r+3 and r+3..r on its right.
    return {(exit_slot + 2) % 4, (exit_slot + 3) % 4}


def crossing_triple(
    d: Diagram, ec: ExtendedColoring, cid: int
) -> CrossingTriple:
    """Read (s, a, b, epsilon) off one crossing of an extended coloring.

    With the outgoing over slot at ccw position p, the under slot on the
    right of the over-strand is p+3; the region right of both strands is
    the unique corner in the intersection of the two right-hand corner
    pairs.  This slot arithmetic is pinned by the bundled reference
    diagrams (see tests).
    """
    c = d.crossing(cid)
    p = d.slot_position(cid, "over", "out")
    q = d.slot_position(cid, "under", "out")
    b = ec.arc_color(d.arc_of_edge(c.slots[p].edge))
    a = ec.arc_color(d.arc_of_edge(c.slots[(p + 3) % 4].edge))
    corners = _right_corners(p) & _right_corners(q)
    if len(corners) != 1:
        raise AssertionError(f"crossing {cid}: corner selection not unique")
    s = ec.region_color(d.corner_face(cid, corners.pop()))
    return CrossingTriple(crossing=cid, s=s, a=a, b=b, epsilon=c.sign)


def weight(d: Diagram, ec: ExtendedColoring, f: CochainFn) -> WeightValue:
    """W = sum over crossings of epsilon * f(s, a, b), exact."""
    if f.n != ec.n:
        raise ValueError(
            f"modulus mismatch: f over Z({f.n}), coloring over Z({ec.n})"
        )
    triples = tuple(crossing_triple(d, ec, c.id) for c in d.crossings)
    return WeightValue(
        value=sum(t.contribution(f) for t in triples), per_crossing=triples
    )


def phi_set(d: Diagram, s: int, f: CochainFn) -> PhiSet:
    """Weight values of every non-trivial coloring with outer color s."""
    witnesses: dict[int, list[int]] = {}
    for cid, col in enumerate(enumerate_colorings(d, f.n)):
        if is_trivial(col):
            continue
        w = weight(d, extend_coloring(d, col, s), f).value
        witnesses.setdefault(w, []).append(cid)
    return PhiSet(
        diagram=d.name,
        s=s,
        n=f.n,
        values=tuple(sorted(witnesses)),
        witnesses={v: tuple(ids) for v, ids in witnesses.items()},
    )


def w4_formula(a: int, b: int, f: CochainFn) -> int:
    """Closed-form weight of the one-parameter family of non-trivial
    colorings on the re-based figure-eight diagram with outer color 2:

        +f(2*b, a, b) + f(2*b, b, a) - f((2*b)*a, b, b*a) - f(2, a, a*b)

    Serves as a diagram-independent oracle for the 20-value table.
    """
    n = f.n
    if a == b:
        raise ValueError("the family is parameterized by distinct colors a != b")
    tb = quandle_star(2, b, n)
    return (
        f(tb, a, b)
        + f(tb, b, a)
        - f(quandle_star(tb, a, n), b, quandle_star(b, a, n))
        - f(2, a, quandle_star(a, b, n))
    )


# ---------------------------------------------------------------------------
# Lower-bound certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundCertificate:
    """Witness data proving at least ``m`` type-III moves separate the pair.

    Everything needed for an independent re-check is carried verbatim:
    the chosen coloring's arc vector, its weight, the full Phi set of the
    second diagram, and the per-level intersection verdicts.
    """

    d_name: str
    d_hash: str
    d2_name: str
    d2_hash: str
    f_str: str
    n: int
    s: int
    max_m: int
    m: int
    coloring_id: int | None
    coloring: tuple[int, ...] | None
    w: int | None
    phi: tuple[int, ...]
    delta_level_sizes: tuple[int, ...]
    level_verdicts: tuple[str, ...]
    first_hit_level: int | None
    no_nontrivial_coloring: bool = False

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema": 1,
            "pair": {
                "d": {"name": self.d_name, "sha256": self.d_hash},
                "d2": {"name": self.d2_name, "sha256": self.d2_hash},
            },
            "f": self.f_str,
            "n": self.n,
            "s": self.s,
            "max_m": self.max_m,
            "m": self.m,
            "coloring_id": self.coloring_id,
            "coloring": list(self.coloring) if self.coloring is not None else None,
            "w": self.w,
            "phi": list(self.phi),
            "delta_level_sizes": list(self.delta_level_sizes),
            "level_verdicts": list(self.level_verdicts),
            "first_hit_level": self.first_hit_level,
            "no_nontrivial_coloring": self.no_nontrivial_coloring,
        }


def _levels_clear(
    diffs: set[int], reach: DeltaReach, max_m: int
) -> tuple[int, list[str], int | None]:
    """Largest m <= max_m with diffs disjoint from Delta_0..Delta_{m-1}."""
    verdicts: list[str] = []
    for i in range(max_m):
        hit = diffs & set(reach.level(i))
        if hit:
            verdicts.append(f"level {i}: hit {min(hit)}")
            return i, verdicts, i
        verdicts.append(f"level {i}: empty intersection")
    return max_m, verdicts, None


def certify_lower_bound(
    d: Diagram,
    d2: Diagram,
    s: int,
    f: CochainFn,
    max_m: int,
    reach: DeltaReach | None = None,
) -> BoundCertificate:
    """Best obstruction over all non-trivial colorings of d.

    Each coloring is scored by the largest m <= max_m such that
    [W - Phi(d2, s)] avoids Delta_i for all i < m; the certificate keeps
    the winner (ties to the smallest coloring id).  m = 0 is an honest
    negative result: every coloring's weight already occurs in Phi, so
    this choice of f certifies nothing for the pair.
    """
    if max_m < 1:
        raise ValueError(f"max_m must be >= 1, got {max_m}")
    if reach is None:
        reach = delta_reach(f, max_m - 1)
    elif reach.max_level < max_m - 1:
        raise ValueError(
            f"supplied levels reach Delta_{reach.max_level}, need Delta_{max_m - 1}"
        )
    phi = phi_set(d2, s, f)
    phi_vals = set(phi.values)

    best: tuple[int, int] | None = None  # (m, coloring id)
    best_data: tuple[tuple[int, ...], int, list[str], int | None] | None = None
    found_nontrivial = False
    for cid, col in enumerate(enumerate_colorings(d, f.n)):
        if is_trivial(col):
            continue
        found_nontrivial = True
        w = weight(d, extend_coloring(d, col, s), f).value
        diffs = {w - v for v in phi_vals}
        m, verdicts, first_hit = _levels_clear(diffs, reach, max_m)
        if best is None or m > best[0]:
            best = (m, cid)
            best_data = (col.arc_colors, w, verdicts, first_hit)
        if m == max_m:
            break  # cannot improve; smallest id already wins ties

    sizes = tuple(len(reach.level(i)) for i in range(max_m))
    if not found_nontrivial:
        return BoundCertificate(
            d_name=d.name,
            d_hash=diagram_hash(d),
            d2_name=d2.name,
            d2_hash=diagram_hash(d2),
            f_str=f.canonical(),
            n=f.n,
            s=s,
            max_m=max_m,
            m=0,
            coloring_id=None,
            coloring=None,
            w=None,
            phi=phi.values,
            delta_level_sizes=sizes,
            level_verdicts=("no non-trivial coloring on the first diagram",),
            first_hit_level=None,
            no_nontrivial_coloring=True,
        )
    assert best is not None and best_data is not None
    colors, w, verdicts, first_hit = best_data
    return BoundCertificate(
        d_name=d.name,
        d_hash=diagram_hash(d),
        d2_name=d2.name,
        d2_hash=diagram_hash(d2),
        f_str=f.canonical(),
        n=f.n,
        s=s,
        max_m=max_m,
        m=best[0],
        coloring_id=best[1],
        coloring=colors,
        w=w,
        phi=phi.values,
        delta_level_sizes=sizes,
        level_verdicts=tuple(verdicts),
        first_hit_level=first_hit,
    )


def verify_certificate(
    cert: BoundCertificate, d: Diagram, d2: Diagram
) -> bool:
    """Independent re-check of an emitted certificate.

    Recomputes the weight from the stored arc vector, the Phi set of d2,
    and the level intersections from f rebuilt out of the stored string.
    Accepts iff every stored field matches the recomputation.
    """
    if diagram_hash(d) != cert.d_hash or diagram_hash(d2) != cert.d2_hash:
        return False
    if not 0 <= cert.m <= cert.max_m:
        return False
    f = CochainFn.build(cert.f_str, cert.n)
    if tuple(phi_set(d2, cert.s, f).values) != cert.phi:
        return False
    if cert.no_nontrivial_coloring:
        return cert.m == 0 and not any(
            not is_trivial(c) for c in enumerate_colorings(d, cert.n)
        )
    if cert.coloring is None or cert.w is None:
        return False
    col = Coloring(n=cert.n, arc_colors=cert.coloring)
    colorings = enumerate_colorings(d, cert.n)
    if cert.coloring_id is None or cert.coloring_id >= len(colorings):
        return False
    if colorings[cert.coloring_id].arc_colors != cert.coloring:
        return False
    if is_trivial(col):
        return False
    w = weight(d, extend_coloring(d, col, cert.s), f).value
    if w != cert.w:
        return False
    reach = delta_reach(f, cert.max_m - 1)
    diffs = {w - v for v in cert.phi}
    for i in range(cert.m):
        if diffs & set(reach.level(i)):
            return False
    if cert.m < cert.max_m:
        # the reported bound must be maximal for this coloring
        if not diffs & set(reach.level(cert.m)):
            return False
    return True
