from __future__ import annotations

import json

import pytest

from tribound.diagram import (
    DiagramConnectivityError,
    DiagramPlanarityError,
    DiagramStructureError,
    DiagramSyntaxError,
    diagram_from_dict,
    diagram_to_dict,
    parse_diagram,
    set_outer_face,
    validate,
    validate_text,
)
from tribound.fixtures import closed_braid_code

from conftest import random_closed_braid


def kink_code() -> dict:
    return closed_braid_code(2, [(0, "L")], name="kink")


def test_trefoil_counts(diagrams):
    d = diagrams["d1"]
    assert len(d.crossings) == 3
    assert len(d.edges) == 6
    assert len(d.arcs) == 3
    assert len(d.faces) == 5
    assert all(len(a.edges) == 2 for a in d.arcs)


def test_figure_eight_counts(diagrams):
    d = diagrams["d3"]
    assert (len(d.crossings), len(d.edges), len(d.arcs), len(d.faces)) == (4, 8, 4, 6)
    assert all(len(a.edges) == 2 for a in d.arcs)


def test_torus_link_counts(diagrams):
    d = diagrams["d5"]
    assert (len(d.crossings), len(d.edges), len(d.faces)) == (4, 8, 6)
    assert len(d.components) == 2
    assert all(len(comp) == 4 for comp in d.components)


def test_kink_counts():
    d = diagram_from_dict(kink_code())
    assert (len(d.crossings), len(d.edges), len(d.faces)) == (1, 2, 3)
    # the single under-pass cuts the circle once, giving one arc that
    # runs through the over-pass
    assert len(d.arcs) == 1
    assert sorted(d.arcs[0].edges) == [0, 1]


def test_euler_formula_random(rng):
    for i in range(25):
        d = random_closed_braid(rng, name=f"r{i}")
        v, e, f = len(d.crossings), len(d.edges), len(d.faces)
        assert e == 2 * v
        assert v - e + f == 2


def test_face_tracing_covers_every_side_once(rng):
    for i in range(10):
        d = random_closed_braid(rng, name=f"r{i}")
        sides = [pair for face in d.faces for pair in face.boundary]
        assert len(sides) == 2 * len(d.edges)
        assert len(set(sides)) == len(sides)
        expected = {(e.id, s) for e in d.edges for s in ("left", "right")}
        assert set(sides) == expected


def test_arcs_partition_edges_and_break_at_unders(rng):
    for i in range(10):
        d = random_closed_braid(rng, name=f"r{i}")
        seen = [e for a in d.arcs for e in a.edges]
        assert sorted(seen) == sorted(e.id for e in d.edges)
        # consecutive arc edges meet at a crossing through its over slots
        for a in d.arcs:
            pairs = list(zip(a.edges, a.edges[1:]))
            if a.closed and len(a.edges) > 1:
                pairs.append((a.edges[-1], a.edges[0]))
            for e1, e2 in pairs:
                c1, k1 = d.edge(e1).head
                c2, k2 = d.edge(e2).tail
                assert c1 == c2
                cr = d.crossing(c1)
                assert cr.slots[k1].level == "over"
                assert cr.slots[k2].level == "over"
        breaks = sum(1 for a in d.arcs if not a.closed)
        loops = sum(1 for a in d.arcs if a.closed)
        assert breaks == len(d.crossings) or loops > 0


def test_signs_of_reference_diagrams(diagrams):
    from tribound.diagram import crossing_sign

    assert [c.sign for c in diagrams["d1"].crossings] == [1, 1, 1]
    assert [c.sign for c in diagrams["d3"].crossings] == [1, -1, 1, -1]
    assert [c.sign for c in diagrams["d5"].crossings] == [1, 1, 1, 1]
    assert [crossing_sign(diagrams["d3"], c.id) for c in diagrams["d3"].crossings] == [
        1, -1, 1, -1,
    ]


def test_mirror_negates_signs(diagrams):
    code = diagram_to_dict(diagrams["d1"])
    for c in code["crossings"]:
        for s in c["slots"]:
            s["level"] = "over" if s["level"] == "under" else "under"
    mirror = diagram_from_dict(code)
    assert [c.sign for c in mirror.crossings] == [-1, -1, -1]


def test_reversing_all_orientations_keeps_signs(diagrams):
    for name in ("d1", "d3", "d5"):
        code = diagram_to_dict(diagrams[name])
        for c in code["crossings"]:
            for s in c["slots"]:
                s["dir"] = "out" if s["dir"] == "in" else "in"
        reversed_d = diagram_from_dict(code)
        assert [c.sign for c in reversed_d.crossings] == [
            c.sign for c in diagrams[name].crossings
        ]


def test_slot_rotation_is_cosmetic(diagrams):
    # rotating a crossing's ccw slot list must not change anything derived
    base = diagrams["d3"]
    code = diagram_to_dict(base)
    for shift, c in enumerate(code["crossings"]):
        k = shift % 4
        c["slots"] = c["slots"][k:] + c["slots"][:k]
    rotated = diagram_from_dict(code)
    assert [c.sign for c in rotated.crossings] == [c.sign for c in base.crossings]
    assert rotated.arcs == base.arcs
    assert rotated.faces == base.faces


def test_round_trip(diagrams):
    for d in diagrams.values():
        again = parse_diagram(json.dumps(diagram_to_dict(d)))
        assert again == d


def test_set_outer_face(diagrams):
    d = diagrams["d1"]
    moved = set_outer_face(d, 3)
    assert moved.outer_face == 3
    assert moved.faces == d.faces and moved.arcs == d.arcs
    assert set_outer_face(d, d.outer_face) == d
    with pytest.raises(DiagramStructureError):
        set_outer_face(d, 99)


def test_outer_face_by_edge_list(diagrams):
    code = diagram_to_dict(diagrams["d1"])
    face = diagrams["d1"].face(diagrams["d1"].outer_face)
    code["outer_face"] = [e for (e, _) in face.boundary]
    assert diagram_from_dict(code).outer_face == diagrams["d1"].outer_face
    code["outer_face"] = [97, 98]
    with pytest.raises(DiagramStructureError):
        diagram_from_dict(code)


def test_validate_clean(diagrams):
    for d in diagrams.values():
        assert validate(d) == ()


def test_edge_used_three_times():
    code = kink_code()
    code["crossings"][0]["slots"][0]["edge"] = 0  # edge 0 now appears 3 times
    issues = validate_text(json.dumps(code))
    assert issues and any("edge 0" in i.message for i in issues)
    with pytest.raises(DiagramStructureError):
        diagram_from_dict(code)


def test_two_in_under_slots():
    code = kink_code()
    # make both under slots point inward
    for s in code["crossings"][0]["slots"]:
        if s["level"] == "under":
            s["dir"] = "in"
        else:
            s["dir"] = "out"
    issues = validate_text(json.dumps(code))
    assert any(i.kind == "orientation" for i in issues)


def test_adjacent_under_slots_rejected():
    code = kink_code()
    slots = code["crossings"][0]["slots"]
    slots[0]["level"], slots[1]["level"] = "under", "under"
    slots[2]["level"], slots[3]["level"] = "over", "over"
    issues = validate_text(json.dumps(code))
    assert any("cyclically opposite" in i.message for i in issues)


def test_nonplanar_code_rejected(diagrams):
    # swapping the two closure edges of the 4-crossing torus braid twists
    # the closure into a genus-1 rotation system
    code = diagram_to_dict(diagrams["d5"])
    tails = {}
    for c in code["crossings"]:
        if c["id"] != 3:
            continue
        a = c["slots"][2]["edge"]
        b = c["slots"][3]["edge"]
        c["slots"][2]["edge"], c["slots"][3]["edge"] = b, a
        tails = {a, b}
    assert tails
    with pytest.raises(DiagramPlanarityError):
        diagram_from_dict(code)
    issues = validate_text(json.dumps(code))
    assert any(i.kind == "planarity" for i in issues)


def test_split_diagram_rejected():
    a = closed_braid_code(2, [(0, "L")], name="a")
    b = closed_braid_code(2, [(0, "L")], name="b")
    # shift ids of the second kink and drop both into one file
    for c in b["crossings"]:
        c["id"] += 10
        for s in c["slots"]:
            s["edge"] += 10
    merged = {
        "name": "split",
        "crossings": a["crossings"] + b["crossings"],
        "outer_face": 0,
    }
    with pytest.raises(DiagramConnectivityError):
        diagram_from_dict(merged)


def test_zero_crossings_rejected():
    with pytest.raises(DiagramSyntaxError):
        parse_diagram(json.dumps({"name": "empty", "crossings": [], "outer_face": 0}))


def test_malformed_json():
    with pytest.raises(DiagramSyntaxError):
        parse_diagram("{not json")
    issues = validate_text("{not json")
    assert issues[0].kind == "syntax"


def test_closed_over_loop_component():
    # two overlapping circles, the first passing over at both crossings:
    # the over circle forms a single closed arc, the under circle is cut
    # twice
    code = {
        "name": "over-loop",
        "crossings": [
            {
                "id": 0,
                "slots": [
                    {"edge": 3, "dir": "in", "level": "under"},
                    {"edge": 0, "dir": "out", "level": "over"},
                    {"edge": 2, "dir": "out", "level": "under"},
                    {"edge": 1, "dir": "in", "level": "over"},
                ],
            },
            {
                "id": 1,
                "slots": [
                    {"edge": 1, "dir": "out", "level": "over"},
                    {"edge": 2, "dir": "in", "level": "under"},
                    {"edge": 0, "dir": "in", "level": "over"},
                    {"edge": 3, "dir": "out", "level": "under"},
                ],
            },
        ],
        "outer_face": 0,
    }
    d = diagram_from_dict(code)
    assert len(d.components) == 2
    closed = [a for a in d.arcs if a.closed]
    assert len(closed) == 1
    assert sorted(closed[0].edges) == [0, 1]
    assert len(d.arcs) == 3  # the under circle is cut twice
