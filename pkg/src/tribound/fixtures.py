"""Bundled reference diagrams and their expected invariant values.

The six diagrams ship as JSON files (package data under ``fixtures/``)
and are also constructible from scratch: each is the plat-free closure
of a two- or three-strand braid, with crossings laid out top to bottom
and all strands oriented downward through the braid.

D2, D4 and D6 share the sphere codes of D1, D3 and D5 and differ only in
which face is designated as the outer region; the face choices and the
reference colorings below were found by exhaustive search against the
expected triple/value tables (see tools/derive_fixtures.py) and are
frozen here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Any

from .diagram import Diagram, diagram_from_dict

__all__ = [
    "closed_braid_code",
    "fixture_dict",
    "load_fixture",
    "fixture_names",
    "FixtureCase",
    "FIXTURE_CASES",
    "REFERENCE_COLORINGS",
    "EXPECTED",
    "DELTA_TABLE_N3",
    "W4_TABLE",
]

# Crossing layout for braid generators, slots in ccw order
# (0=NE, 1=NW, 2=SW, 3=SE), both strands entering from above:
#   type "L": the NW->SE strand passes over  (sign +1)
#   type "R": the NE->SW strand passes over  (sign -1)
_LEVELS = {
    "L": ("under", "over", "under", "over"),
    "R": ("over", "under", "over", "under"),
}


def closed_braid_code(
    strands: int, word: list[tuple[int, str]], name: str, outer_face: int = 0
) -> dict[str, Any]:
    """Diagram code for the closure of a braid word.

    ``word`` lists crossings top to bottom as (column, type) with
    ``column`` joining strand positions column and column+1 and type
    "L"/"R" choosing which strand passes over.  Every column must be
    involved in at least one crossing, otherwise the closure would be a
    split diagram.
    """
    if strands < 2:
        raise ValueError("need at least two strand positions")
    if any(not 0 <= col < strands - 1 for col, _ in word):
        raise ValueError("braid word uses a column outside the strand range")
    touched = {col for col, _ in word} | {col + 1 for col, _ in word}
    if touched != set(range(strands)):
        raise ValueError("every column needs a crossing; closure would split")

    tails: dict[int, tuple[int, int] | None] = {}
    heads: dict[int, tuple[int, int] | None] = {}
    open_edge: list[int] = []
    first_edge: list[int] = []
    next_eid = 0
    for j in range(strands):
        tails[next_eid] = None  # tail supplied by the closure merge
        heads[next_eid] = None
        open_edge.append(next_eid)
        first_edge.append(next_eid)
        next_eid += 1

    crossings: list[dict[str, Any]] = []
    for cid, (col, typ) in enumerate(word):
        if typ not in _LEVELS:
            raise ValueError(f"crossing type must be 'L' or 'R', got {typ!r}")
        # incoming: column col at NW (slot 1), column col+1 at NE (slot 0)
        heads[open_edge[col]] = (cid, 1)
        heads[open_edge[col + 1]] = (cid, 0)
        # outgoing: SW (slot 2) continues column col, SE (slot 3) col+1
        sw, se = next_eid, next_eid + 1
        next_eid += 2
        tails[sw] = (cid, 2)
        heads[sw] = None
        tails[se] = (cid, 3)
        heads[se] = None
        open_edge[col], open_edge[col + 1] = sw, se
        crossings.append({"cid": cid, "type": typ})

    # Close up: the edge still flowing down column j is the same edge
    # that entered the top of column j.
    drop: set[int] = set()
    for j in range(strands):
        bottom, top = open_edge[j], first_edge[j]
        heads[bottom] = heads[top]
        drop.add(top)

    renumber = {
        old: new
        for new, old in enumerate(e for e in sorted(tails) if e not in drop)
    }
    slot_edge: dict[tuple[int, int], int] = {}
    for old, new in renumber.items():
        tail, head = tails[old], heads[old]
        assert tail is not None and head is not None
        slot_edge[tail] = new
        slot_edge[head] = new

    out_crossings = []
    for c in crossings:
        cid = c["cid"]
        levels = _LEVELS[c["type"]]
        dirs = ("in", "in", "out", "out")
        out_crossings.append(
            {
                "id": cid,
                "slots": [
                    {
                        "edge": slot_edge[(cid, k)],
                        "dir": dirs[k],
                        "level": levels[k],
                    }
                    for k in range(4)
                ],
            }
        )
    return {"name": name, "crossings": out_crossings, "outer_face": outer_face}


# ---------------------------------------------------------------------------
# The six reference diagrams
# ---------------------------------------------------------------------------

# Outer faces frozen by tools/derive_fixtures.py; see module docstring.
_BUILDERS: dict[str, tuple[int, list[tuple[int, str]], int]] = {
    "d1": (2, [(0, "L")] * 3, 0),
    "d2": (2, [(0, "L")] * 3, 1),
    "d3": (3, [(0, "L"), (1, "R"), (0, "L"), (1, "R")], 2),
    "d4": (3, [(0, "L"), (1, "R"), (0, "L"), (1, "R")], 0),
    "d5": (2, [(0, "L")] * 4, 0),
    "d6": (2, [(0, "L")] * 4, 1),
}


def fixture_dict(name: str) -> dict[str, Any]:
    """The JSON-shaped code of a bundled diagram, built from scratch."""
    key = name.lower()
    if key not in _BUILDERS:
        raise KeyError(f"no bundled diagram named {name!r}")
    strands, word, outer = _BUILDERS[key]
    return closed_braid_code(strands, word, name=key, outer_face=outer)


def fixture_names() -> list[str]:
    return sorted(_BUILDERS)


def load_fixture(name: str) -> Diagram:
    """Load a bundled diagram from package data, falling back to the
    programmatic builder (they are identical; a test enforces it)."""
    key = name.lower()
    try:
        text = (
            resources.files("tribound")
            .joinpath(f"fixtures/{key}.json")
            .read_text()
        )
        return diagram_from_dict(json.loads(text))
    except FileNotFoundError:
        return diagram_from_dict(fixture_dict(key))


@dataclass(frozen=True)
class FixtureCase:
    """One certified pair: diagrams, function, outer color, expectations."""

    pair: tuple[str, str]
    n: int
    f_str: str
    s: int
    expected_m: int
    max_m: int


FIXTURE_CASES: tuple[FixtureCase, ...] = (
    FixtureCase(("d1", "d2"), 3, "(x-y)*(y-z)*z", 0, 2, 2),
    FixtureCase(("d3", "d4"), 5, "(x+y)^3*(y+z)*(y-z)^3*z^5", 2, 3, 3),
    FixtureCase(("d5", "d6"), 4, "(x+y)^2*(y-z)^3*z^5", 0, 3, 3),
)


# Reference coloring (arc-color vector) realizing the expected weight on
# each odd-numbered diagram, with its index in canonical order.
REFERENCE_COLORINGS: dict[str, tuple[int, tuple[int, ...]]] = {
    "d1": (3, (1, 0, 2)),
    "d3": (11, (2, 1, 3, 0)),
    "d5": (4, (1, 0, 2, 3)),
}

# Expected weights for the reference colorings and expected weight-value
# sets for the re-based diagrams; checked by the acceptance suite and the
# `reproduce` command.
EXPECTED: dict[str, Any] = {
    "weights": {"d1": -8, "d3": -3576, "d5": -25428},
    "phi": {
        "d2": (-2, 2),
        "d6": (-3744, -1004, 0, 292),
    },
    "signs": {
        "d1": (1, 1, 1),
        "d3": (1, -1, 1, -1),
        "d5": (1, 1, 1, 1),
    },
    "image_sizes": {5: 393, 4: 105},
    "delta1_n3": tuple(
        sorted({0, 1, -1, 2, -2, 4, -4, 5, -5, 7, -7, 8, -8, 11, -11})
    ),
}

# All 24 coboundary values of the n=3 function on non-degenerate tuples
# (x != y, y != z, z != w); every degenerate tuple gives 0.
DELTA_TABLE_N3: dict[tuple[int, int, int, int], int] = {
    (0, 1, 0, 1): 2, (0, 1, 0, 2): 7, (0, 1, 2, 0): 4, (0, 1, 2, 1): -1,
    (0, 2, 0, 1): 11, (0, 2, 0, 2): 7, (0, 2, 1, 0): -4, (0, 2, 1, 2): -8,
    (1, 0, 1, 0): 7, (1, 0, 1, 2): 5, (1, 0, 2, 0): -2, (1, 0, 2, 1): -4,
    (1, 2, 0, 1): 4, (1, 2, 0, 2): -4, (1, 2, 1, 0): 1, (1, 2, 1, 2): -7,
    (2, 0, 1, 0): 2, (2, 0, 1, 2): 4, (2, 0, 2, 0): -7, (2, 0, 2, 1): -5,
    (2, 1, 0, 1): -5, (2, 1, 0, 2): -4, (2, 1, 2, 0): -1, (2, 1, 2, 1): -2,
}

# The 20 weight values of the re-based figure-eight diagram (n=5, outer
# color 2), indexed by the coloring parameters (a, b), a != b.
W4_TABLE: dict[tuple[int, int], int] = {
    (0, 1): 142336, (0, 2): 2244931, (0, 3): -1269944, (0, 4): -173800,
    (1, 0): 3765221, (1, 2): 207552, (1, 3): 587264, (1, 4): -1299078,
    (2, 0): 326080, (2, 1): 971928, (2, 3): 2937304, (2, 4): -1135296,
    (3, 0): -551414, (3, 1): 889088, (3, 2): 10555072, (3, 4): -344431,
    (4, 0): -7107048, (4, 1): -490872, (4, 2): -2814033, (4, 3): -1919488,
}
