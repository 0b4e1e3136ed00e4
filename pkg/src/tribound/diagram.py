"""Oriented link diagrams as combinatorial half-edge structures.

A diagram is a 4-valent plane graph: crossings carry four half-edge slots
in counterclockwise cyclic order, each slot tagged with the edge occupying
it, the edge's direction relative to the crossing (``in``/``out``) and its
level (``over``/``under``).  The rotation system alone determines the
embedding on the sphere; faces come out of face tracing, and the planar
picture is fixed by designating one face as the outer region.

Everything derived (arcs, faces, crossing signs, components) is computed
eagerly at construction and is immutable afterwards.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, replace
from typing import Any, Iterable, Mapping

__all__ = [
    "DiagramError",
    "DiagramSyntaxError",
    "DiagramStructureError",
    "DiagramConnectivityError",
    "DiagramPlanarityError",
    "HalfEdgeSlot",
    "Crossing",
    "Edge",
    "Arc",
    "Face",
    "Diagram",
    "ValidationIssue",
    "parse_diagram",
    "diagram_from_dict",
    "diagram_to_dict",
    "derived_dict",
    "trace_faces",
    "merge_arcs",
    "crossing_sign",
    "set_outer_face",
    "validate",
    "diagram_hash",
]


class DiagramError(Exception):
    """Base class for all diagram construction/validation failures."""


class DiagramSyntaxError(DiagramError):
    """The diagram file is not valid JSON or does not match the schema."""


class DiagramStructureError(DiagramError):
    """Slot/edge bookkeeping violates a structural invariant."""


class DiagramConnectivityError(DiagramError):
    """The underlying 4-valent graph is disconnected (split diagram)."""


class DiagramPlanarityError(DiagramError):
    """Face tracing contradicts Euler's formula (non-planar rotation data)."""


LEFT = "left"
RIGHT = "right"


@dataclass(frozen=True)
class HalfEdgeSlot:
    """One of the four edge-ends at a crossing."""

    edge: int
    direction: str  # "in" | "out", relative to the crossing
    level: str  # "over" | "under"


@dataclass(frozen=True)
class Crossing:
    id: int
    slots: tuple[HalfEdgeSlot, HalfEdgeSlot, HalfEdgeSlot, HalfEdgeSlot]
    sign: int  # +1 or -1, derived and cached at construction


@dataclass(frozen=True)
class Edge:
    """A strand segment between two crossings, oriented tail -> head."""

    id: int
    tail: tuple[int, int]  # (crossing id, slot index) of its "out" end
    head: tuple[int, int]  # (crossing id, slot index) of its "in" end


@dataclass(frozen=True)
class Arc:
    """Maximal chain of edges joined through over-passes.

    ``closed`` marks an over-loop component (a strand that never goes
    under anything); its edge list is a cycle rather than a path.
    """

    id: int
    edges: tuple[int, ...]
    closed: bool = False


@dataclass(frozen=True)
class Face:
    """A complementary region, as the cyclic list of (edge, side) pairs
    met when walking its boundary with the face on the left."""

    id: int
    boundary: tuple[tuple[int, str], ...]


@dataclass(frozen=True)
class ValidationIssue:
    kind: str
    message: str


@dataclass(frozen=True)
class Diagram:
    name: str
    crossings: tuple[Crossing, ...]
    edges: tuple[Edge, ...]
    arcs: tuple[Arc, ...]
    faces: tuple[Face, ...]
    outer_face: int
    components: tuple[tuple[int, ...], ...]

    # -- lookups -----------------------------------------------------------

    def crossing(self, cid: int) -> Crossing:
        for c in self.crossings:
            if c.id == cid:
                return c
        raise KeyError(f"no crossing with id {cid}")

    def edge(self, eid: int) -> Edge:
        for e in self.edges:
            if e.id == eid:
                return e
        raise KeyError(f"no edge with id {eid}")

    def face(self, fid: int) -> Face:
        for f in self.faces:
            if f.id == fid:
                return f
        raise KeyError(f"no face with id {fid}")

    def arc_of_edge(self, eid: int) -> int:
        """Arc id containing the given edge."""
        return self._edge_to_arc()[eid]

    def face_of_side(self, eid: int, side: str) -> int:
        """Face id lying on the given side of the oriented edge."""
        return self._side_to_face()[(eid, side)]

    def corner_face(self, cid: int, k: int) -> int:
        """Face id occupying the corner between slots k and k+1 (ccw)."""
        c = self.crossing(cid)
        slot = c.slots[k % 4]
        side = LEFT if slot.direction == "out" else RIGHT
        return self.face_of_side(slot.edge, side)

    def slot_position(self, cid: int, level: str, direction: str) -> int:
        """Index of the unique slot at crossing cid with given level/direction."""
        c = self.crossing(cid)
        for k, s in enumerate(c.slots):
            if s.level == level and s.direction == direction:
                return k
        raise KeyError(f"crossing {cid} has no {direction} {level} slot")

    # Cached derived maps.  The dataclass is frozen, so stash them in the
    # instance dict via object.__setattr__ on first use.

    def _edge_to_arc(self) -> dict[int, int]:
        cached = self.__dict__.get("_edge_to_arc_map")
        if cached is None:
            cached = {e: a.id for a in self.arcs for e in a.edges}
            object.__setattr__(self, "_edge_to_arc_map", cached)
        return cached

    def _side_to_face(self) -> dict[tuple[int, str], int]:
        cached = self.__dict__.get("_side_to_face_map")
        if cached is None:
            cached = {
                (e, side): f.id for f in self.faces for (e, side) in f.boundary
            }
            object.__setattr__(self, "_side_to_face_map", cached)
        return cached


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

_SLOT_KEYS = {"edge", "dir", "level"}


def _check_schema(obj: Any) -> None:
    if not isinstance(obj, Mapping):
        raise DiagramSyntaxError("top level must be a JSON object")
    for key in ("name", "crossings", "outer_face"):
        if key not in obj:
            raise DiagramSyntaxError(f"missing required key {key!r}")
    if not isinstance(obj["name"], str):
        raise DiagramSyntaxError('"name" must be a string')
    if not isinstance(obj["crossings"], list) or not obj["crossings"]:
        raise DiagramSyntaxError('"crossings" must be a non-empty list')
    for c in obj["crossings"]:
        if not isinstance(c, Mapping) or "id" not in c or "slots" not in c:
            raise DiagramSyntaxError("each crossing needs 'id' and 'slots'")
        if not isinstance(c["id"], int):
            raise DiagramSyntaxError("crossing ids must be integers")
        slots = c["slots"]
        if not isinstance(slots, list) or len(slots) != 4:
            raise DiagramSyntaxError(
                f"crossing {c['id']} must list exactly 4 slots in ccw order"
            )
        for s in slots:
            if not isinstance(s, Mapping) or set(s) != _SLOT_KEYS:
                raise DiagramSyntaxError(
                    f"crossing {c['id']}: slots need exactly keys edge/dir/level"
                )
            if not isinstance(s["edge"], int):
                raise DiagramSyntaxError("slot 'edge' must be an integer")
            if s["dir"] not in ("in", "out"):
                raise DiagramSyntaxError("slot 'dir' must be 'in' or 'out'")
            if s["level"] not in ("over", "under"):
                raise DiagramSyntaxError("slot 'level' must be 'over' or 'under'")


def _structural_issues(crossings: list[Crossing]) -> list[ValidationIssue]:
    issues: list[ValidationIssue] = []
    seen_ids: set[int] = set()
    for c in crossings:
        if c.id in seen_ids:
            issues.append(
                ValidationIssue("structure", f"duplicate crossing id {c.id}")
            )
        seen_ids.add(c.id)
        levels = [s.level for s in c.slots]
        if sorted(levels) != ["over", "over", "under", "under"]:
            issues.append(
                ValidationIssue(
                    "structure",
                    f"crossing {c.id} must have two over and two under slots",
                )
            )
            continue
        for lv in ("over", "under"):
            pos = [k for k, s in enumerate(c.slots) if s.level == lv]
            if (pos[1] - pos[0]) % 4 != 2:
                issues.append(
                    ValidationIssue(
                        "structure",
                        f"crossing {c.id}: the two {lv} slots must be "
                        "cyclically opposite",
                    )
                )
            dirs = sorted(s.direction for s in c.slots if s.level == lv)
            if dirs != ["in", "out"]:
                issues.append(
                    ValidationIssue(
                        "orientation",
                        f"crossing {c.id}: the {lv} strand needs one 'in' "
                        "and one 'out' slot",
                    )
                )

    usage: dict[int, dict[str, list[tuple[int, int]]]] = {}
    for c in crossings:
        for k, s in enumerate(c.slots):
            usage.setdefault(s.edge, {"in": [], "out": []})[s.direction].append(
                (c.id, k)
            )
    for eid, ends in sorted(usage.items()):
        total = len(ends["in"]) + len(ends["out"])
        if total != 2 or len(ends["in"]) != 1 or len(ends["out"]) != 1:
            issues.append(
                ValidationIssue(
                    "structure",
                    f"edge {eid} used {total} times "
                    f"({len(ends['out'])} out, {len(ends['in'])} in); "
                    "expected exactly one of each",
                )
            )
    return issues


def _build_edges(crossings: list[Crossing]) -> list[Edge]:
    ends: dict[int, dict[str, tuple[int, int]]] = {}
    for c in crossings:
        for k, s in enumerate(c.slots):
            ends.setdefault(s.edge, {})[s.direction] = (c.id, k)
    return [
        Edge(id=eid, tail=d["out"], head=d["in"]) for eid, d in sorted(ends.items())
    ]


def _check_connected(crossings: list[Crossing]) -> None:
    adjacency: dict[int, set[int]] = {c.id: set() for c in crossings}
    by_edge: dict[int, list[int]] = {}
    for c in crossings:
        for s in c.slots:
            by_edge.setdefault(s.edge, []).append(c.id)
    for cids in by_edge.values():
        a, b = cids
        adjacency[a].add(b)
        adjacency[b].add(a)
    start = crossings[0].id
    seen = {start}
    stack = [start]
    while stack:
        for nb in adjacency[stack.pop()]:
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    if len(seen) != len(crossings):
        raise DiagramConnectivityError(
            f"underlying graph is split: reached {len(seen)} of "
            f"{len(crossings)} crossings"
        )


def trace_faces(
    crossings: Iterable[Crossing], edges: Iterable[Edge]
) -> tuple[Face, ...]:
    """Trace the complementary regions of the rotation system.

    A dart is a directed traversal of an edge; walking with the face on the
    left, a dart arriving at slot k continues from slot k-1 (ccw).  Faces
    are the orbits of that step.  Raises DiagramPlanarityError if the face
    count contradicts Euler's formula for the sphere.
    """
    crossings = list(crossings)
    edges = list(edges)
    edge_by_id = {e.id: e for e in edges}
    slot_edge: dict[tuple[int, int], HalfEdgeSlot] = {}
    for c in crossings:
        for k, s in enumerate(c.slots):
            slot_edge[(c.id, k)] = s

    def next_dart(dart: tuple[int, bool]) -> tuple[int, bool]:
        eid, forward = dart
        e = edge_by_id[eid]
        cid, k = e.head if forward else e.tail
        s = slot_edge[(cid, (k - 1) % 4)]
        return (s.edge, s.direction == "out")

    seen: set[tuple[int, bool]] = set()
    boundaries: list[list[tuple[int, str]]] = []
    for eid in sorted(edge_by_id):
        for forward in (True, False):
            start = (eid, forward)
            if start in seen:
                continue
            orbit: list[tuple[int, bool]] = []
            dart = start
            while dart not in seen:
                seen.add(dart)
                orbit.append(dart)
                dart = next_dart(dart)
            if dart != start:
                raise DiagramStructureError(
                    "face tracing walked into the middle of another orbit"
                )
            boundaries.append(
                [(e, LEFT if fwd else RIGHT) for (e, fwd) in orbit]
            )

    expected = 2 - len(crossings) + len(edges)
    if len(boundaries) != expected:
        raise DiagramPlanarityError(
            f"face tracing found {len(boundaries)} faces where Euler's "
            f"formula needs {expected}; the code is not planar"
        )

    def canonical(boundary: list[tuple[int, str]]) -> tuple[tuple[int, str], ...]:
        key = min(range(len(boundary)), key=lambda i: _side_key(boundary[i]))
        return tuple(boundary[key:] + boundary[:key])

    canon = sorted((canonical(b) for b in boundaries), key=lambda b: _side_key(b[0]))
    return tuple(Face(id=i, boundary=b) for i, b in enumerate(canon))


def _side_key(pair: tuple[int, str]) -> tuple[int, int]:
    eid, side = pair
    return (eid, 0 if side == LEFT else 1)


def merge_arcs(
    crossings: Iterable[Crossing], edges: Iterable[Edge]
) -> tuple[Arc, ...]:
    """Chain edges through over-passes into maximal arcs.

    Arcs break exactly at under slots; a component that passes over at
    every crossing it meets yields a closed arc.
    """
    crossings = list(crossings)
    succ: dict[int, int] = {}
    pred: dict[int, int] = {}
    for c in crossings:
        over = [s for s in c.slots if s.level == "over"]
        incoming = next(s.edge for s in over if s.direction == "in")
        outgoing = next(s.edge for s in over if s.direction == "out")
        succ[incoming] = outgoing
        pred[outgoing] = incoming

    edge_ids = sorted(e.id for e in edges)
    assigned: set[int] = set()
    chains: list[tuple[list[int], bool]] = []
    # Open chains start at an edge that emerges from under a crossing.
    for eid in edge_ids:
        if eid in assigned or eid in pred:
            continue
        chain = [eid]
        assigned.add(eid)
        while chain[-1] in succ:
            chain.append(succ[chain[-1]])
            assigned.add(chain[-1])
        chains.append((chain, False))
    # What remains are closed over-loops.
    for eid in edge_ids:
        if eid in assigned:
            continue
        loop = [eid]
        assigned.add(eid)
        nxt = succ[eid]
        while nxt != eid:
            loop.append(nxt)
            assigned.add(nxt)
            nxt = succ[nxt]
        start = loop.index(min(loop))
        chains.append((loop[start:] + loop[:start], True))

    chains.sort(key=lambda ch: min(ch[0]))
    return tuple(
        Arc(id=i, edges=tuple(ch), closed=closed)
        for i, (ch, closed) in enumerate(chains)
    )


def _components(crossings: list[Crossing], edges: list[Edge]) -> tuple[tuple[int, ...], ...]:
    parent: dict[int, int] = {e.id: e.id for e in edges}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for c in crossings:
        for lv in ("over", "under"):
            pair = [s.edge for s in c.slots if s.level == lv]
            union(pair[0], pair[1])

    groups: dict[int, list[int]] = {}
    for e in edges:
        groups.setdefault(find(e.id), []).append(e.id)
    return tuple(
        tuple(sorted(g)) for g in sorted(groups.values(), key=min)
    )


def _crossing_sign(slots: tuple[HalfEdgeSlot, ...]) -> int:
    p = next(k for k, s in enumerate(slots) if s.level == "over" and s.direction == "out")
    q = next(k for k, s in enumerate(slots) if s.level == "under" and s.direction == "out")
    return 1 if p == (q + 1) % 4 else -1


def crossing_sign(d: Diagram, cid: int) -> int:
    """Sign of a crossing: +1 iff the outgoing over slot immediately
    follows the outgoing under slot in ccw order."""
    return d.crossing(cid).sign


def _resolve_outer_face(designator: Any, faces: tuple[Face, ...]) -> int:
    if isinstance(designator, bool):
        raise DiagramSyntaxError("outer_face must be a face id or edge list")
    if isinstance(designator, int):
        if not any(f.id == designator for f in faces):
            raise DiagramStructureError(
                f"outer_face {designator} does not name a face "
                f"(0..{len(faces) - 1})"
            )
        return designator
    if isinstance(designator, list) and all(isinstance(x, int) for x in designator):
        want = sorted(designator)
        hits = [
            f.id
            for f in faces
            if sorted(e for (e, _) in f.boundary) == want
        ]
        if not hits:
            raise DiagramStructureError(
                f"no face has boundary edges {want}"
            )
        if len(hits) > 1:
            raise DiagramStructureError(
                f"edge list {want} is ambiguous between faces {hits}; "
                "use a face id"
            )
        return hits[0]
    raise DiagramSyntaxError(
        "outer_face must be an integer face id or a list of edge ids"
    )


def diagram_from_dict(obj: Mapping[str, Any]) -> Diagram:
    """Build and fully derive a Diagram from schema-shaped data."""
    _check_schema(obj)
    crossings = [
        Crossing(
            id=c["id"],
            slots=tuple(
                HalfEdgeSlot(edge=s["edge"], direction=s["dir"], level=s["level"])
                for s in c["slots"]
            ),
            sign=0,
        )
        for c in obj["crossings"]
    ]
    issues = _structural_issues(crossings)
    if issues:
        raise DiagramStructureError(
            "; ".join(i.message for i in issues)
        )
    crossings = [replace(c, sign=_crossing_sign(c.slots)) for c in crossings]
    _check_connected(crossings)
    edges = _build_edges(crossings)
    faces = trace_faces(crossings, edges)
    arcs = merge_arcs(crossings, edges)
    components = _components(crossings, edges)
    outer = _resolve_outer_face(obj["outer_face"], faces)
    return Diagram(
        name=obj["name"],
        crossings=tuple(crossings),
        edges=tuple(edges),
        arcs=arcs,
        faces=faces,
        outer_face=outer,
        components=components,
    )


def parse_diagram(text: str) -> Diagram:
    """Parse a diagram from JSON text (see the file schema in the README)."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DiagramSyntaxError(f"not valid JSON: {exc}") from exc
    return diagram_from_dict(obj)


def diagram_to_dict(d: Diagram) -> dict[str, Any]:
    """The JSON-serializable source form (no derived data)."""
    return {
        "name": d.name,
        "crossings": [
            {
                "id": c.id,
                "slots": [
                    {"edge": s.edge, "dir": s.direction, "level": s.level}
                    for s in c.slots
                ],
            }
            for c in d.crossings
        ],
        "outer_face": d.outer_face,
    }


def derived_dict(d: Diagram) -> dict[str, Any]:
    """Derived data (arcs, faces, signs, components) for --emit-derived."""
    return {
        "arcs": [
            {"id": a.id, "edges": list(a.edges), "closed": a.closed}
            for a in d.arcs
        ],
        "faces": [
            {"id": f.id, "boundary": [[e, side] for (e, side) in f.boundary]}
            for f in d.faces
        ],
        "signs": {str(c.id): c.sign for c in d.crossings},
        "components": [list(comp) for comp in d.components],
        "outer_face": d.outer_face,
    }


def set_outer_face(d: Diagram, face: int) -> Diagram:
    """Same sphere code, different outer region."""
    if not any(f.id == face for f in d.faces):
        raise DiagramStructureError(f"unknown face id {face}")
    return replace(d, outer_face=face)


def diagram_hash(d: Diagram) -> str:
    blob = json.dumps(diagram_to_dict(d), sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()


def validate_text(text: str) -> tuple[ValidationIssue, ...]:
    """Full validation of raw file content, collecting issues instead of
    raising.  Used by the CLI so a broken file yields a report, not a
    traceback."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        return (ValidationIssue("syntax", f"not valid JSON: {exc}"),)
    try:
        _check_schema(obj)
    except DiagramSyntaxError as exc:
        return (ValidationIssue("syntax", str(exc)),)
    crossings = [
        Crossing(
            id=c["id"],
            slots=tuple(
                HalfEdgeSlot(edge=s["edge"], direction=s["dir"], level=s["level"])
                for s in c["slots"]
            ),
            sign=0,
        )
        for c in obj["crossings"]
    ]
    issues = _structural_issues(crossings)
    if issues:
        return tuple(issues)
    try:
        diagram_from_dict(obj)
    except DiagramConnectivityError as exc:
        return (ValidationIssue("connectivity", str(exc)),)
    except DiagramPlanarityError as exc:
        return (ValidationIssue("planarity", str(exc)),)
    except DiagramError as exc:
        return (ValidationIssue("structure", str(exc)),)
    return ()


def validate(d: Diagram) -> tuple[ValidationIssue, ...]:
    """Re-check every invariant from scratch; empty report iff valid."""
    issues = list(_structural_issues(list(d.crossings)))
    if not issues:
        try:
            _check_connected(list(d.crossings))
        except DiagramConnectivityError as exc:
            issues.append(ValidationIssue("connectivity", str(exc)))
        try:
            faces = trace_faces(d.crossings, d.edges)
            if faces != d.faces:
                issues.append(
                    ValidationIssue("derived", "stored faces disagree with re-trace")
                )
        except DiagramError as exc:
            issues.append(ValidationIssue("planarity", str(exc)))
        if merge_arcs(d.crossings, d.edges) != d.arcs:
            issues.append(
                ValidationIssue("derived", "stored arcs disagree with re-merge")
            )
        for c in d.crossings:
            if c.sign != _crossing_sign(c.slots):
                issues.append(
                    ValidationIssue("derived", f"crossing {c.id} has a stale sign")
                )
        if not any(f.id == d.outer_face for f in d.faces):
            issues.append(
                ValidationIssue("structure", f"outer face {d.outer_face} unknown")
            )
    return tuple(issues)
