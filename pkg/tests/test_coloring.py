from __future__ import annotations

import itertools

import pytest

from tribound.coloring import (
    Coloring,
    RegionConflictError,
    enumerate_colorings,
    extend_coloring,
    is_trivial,
    quandle_star,
)

from conftest import random_closed_braid


def brute_force_colorings(d, n):
    """Independent oracle: try every arc-color assignment and keep the
    ones satisfying a + c = 2b (mod n) at each crossing, reading the
    crossing structure straight off the slots."""
    relations = []
    for c in d.crossings:
        under_in = under_out = over = None
        for s in c.slots:
            arc = d.arc_of_edge(s.edge)
            if s.level == "under" and s.direction == "in":
                under_in = arc
            elif s.level == "under":
                under_out = arc
            elif s.direction == "in":
                over = arc
        relations.append((under_in, under_out, over))
    found = []
    for assignment in itertools.product(range(n), repeat=len(d.arcs)):
        if all(
            (assignment[a] + assignment[c] - 2 * assignment[b]) % n == 0
            for (a, c, b) in relations
        ):
            found.append(assignment)
    return found


# -- dihedral operation ------------------------------------------------------


def test_star_values():
    assert quandle_star(0, 1, 3) == 2
    assert quandle_star(1, 0, 5) == 4


def test_quandle_identities_exhaustive():
    for n in range(1, 13):
        for x in range(n):
            assert quandle_star(x, x, n) == x
            for y in range(n):
                assert quandle_star(quandle_star(x, y, n), y, n) == x
        for s in range(n):
            for a in range(n):
                for b in range(n):
                    lhs = quandle_star(
                        quandle_star(s, b, n), quandle_star(a, b, n), n
                    )
                    rhs = quandle_star(quandle_star(s, a, n), b, n)
                    assert lhs == rhs


def test_star_degenerate_moduli():
    # n=2 collapses the operation to the identity in x
    for x in range(2):
        for y in range(2):
            assert quandle_star(x, y, 2) == x
    assert quandle_star(0, 0, 1) == 0
    with pytest.raises(ValueError):
        quandle_star(0, 0, 0)


# -- enumeration -------------------------------------------------------------


def test_trefoil_colorings_match_brute_force(diagrams):
    d = diagrams["d1"]
    got = enumerate_colorings(d, 3)
    want = brute_force_colorings(d, 3)
    assert [c.arc_colors for c in got] == sorted(want)
    assert len(got) == 9
    assert sum(1 for c in got if not is_trivial(c)) == 6


def test_figure_eight_colorings_match_brute_force(diagrams):
    d = diagrams["d3"]
    got = enumerate_colorings(d, 5)
    want = brute_force_colorings(d, 5)
    assert [c.arc_colors for c in got] == sorted(want)
    assert len(got) == 25
    assert sum(1 for c in got if not is_trivial(c)) == 20


def test_modulus_one(diagrams):
    for d in diagrams.values():
        cols = enumerate_colorings(d, 1)
        assert len(cols) == 1
        assert is_trivial(cols[0])


def test_output_is_lexicographic(diagrams):
    for name in ("d1", "d5"):
        cols = [c.arc_colors for c in enumerate_colorings(diagrams[name], 4)]
        assert cols == sorted(cols)


def test_count_is_multiple_of_n(rng):
    for i in range(8):
        d = random_closed_braid(rng, name=f"r{i}")
        for n in (2, 3, 4, 5):
            count = len(enumerate_colorings(d, n))
            assert count % n == 0
            assert count >= n  # the n constant colorings always exist


def test_is_trivial():
    assert is_trivial(Coloring(n=5, arc_colors=(2, 2, 2)))
    assert not is_trivial(Coloring(n=3, arc_colors=(0, 1, 2)))


# -- region extension --------------------------------------------------------


def test_extension_edge_relation_exhaustive(diagrams):
    # every edge of every extension of every coloring of all six diagrams
    moduli = {"d1": 3, "d2": 3, "d3": 5, "d4": 5, "d5": 4, "d6": 4}
    for name, d in diagrams.items():
        n = moduli[name]
        for col in enumerate_colorings(d, n):
            for s in range(n):
                ec = extend_coloring(d, col, s)
                assert ec.region_colors[d.outer_face] == s
                for e in d.edges:
                    a = col.arc_colors[d.arc_of_edge(e.id)]
                    lf = ec.region_colors[d.face_of_side(e.id, "left")]
                    rf = ec.region_colors[d.face_of_side(e.id, "right")]
                    assert (lf + rf - 2 * a) % n == 0


def test_extension_keeps_base(diagrams):
    d = diagrams["d1"]
    col = enumerate_colorings(d, 3)[4]
    assert extend_coloring(d, col, 1).base == col


def test_trivial_coloring_checkerboard(diagrams):
    for name, n in (("d1", 3), ("d5", 4)):
        d = diagrams[name]
        c0 = 2 % n
        col = Coloring(n=n, arc_colors=(c0,) * len(d.arcs))
        for s in range(n):
            ec = extend_coloring(d, col, s)
            other = (2 * c0 - s) % n
            assert set(ec.region_colors) <= {s, other}
            # adjacent regions alternate
            for e in d.edges:
                lf = ec.region_colors[d.face_of_side(e.id, "left")]
                rf = ec.region_colors[d.face_of_side(e.id, "right")]
                assert (lf + rf) % n == (2 * c0) % n


def test_two_outer_colors_differ_by_alternating_constant(diagrams):
    d = diagrams["d3"]
    n = 5
    col = enumerate_colorings(d, n)[7]
    for s1, s2 in ((0, 1), (2, 4)):
        e1 = extend_coloring(d, col, s1)
        e2 = extend_coloring(d, col, s2)
        shift = (s2 - s1) % n
        diff = [
            (b - a) % n for a, b in zip(e1.region_colors, e2.region_colors)
        ]
        assert all(x in (shift, (-shift) % n) for x in diff)
        for e in d.edges:
            dl = diff[d.face_of_side(e.id, "left")]
            dr = diff[d.face_of_side(e.id, "right")]
            assert (dl + dr) % n == 0


def test_invalid_coloring_conflicts(diagrams):
    d = diagrams["d1"]
    bad = Coloring(n=3, arc_colors=(0, 0, 1))  # violates the crossing rule
    with pytest.raises(RegionConflictError):
        extend_coloring(d, bad, 0)


def test_outer_color_out_of_range(diagrams):
    d = diagrams["d1"]
    col = enumerate_colorings(d, 3)[0]
    with pytest.raises(ValueError):
        extend_coloring(d, col, 3)
