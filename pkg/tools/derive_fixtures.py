#!/usr/bin/env python3
"""Re-derive the frozen metadata of the bundled reference diagrams.

For each diagram this searches every (outer face, coloring) choice for
the one reproducing the expected per-crossing data or value set, and
prints what should be frozen into tribound.fixtures.  Run from the repo
root with PYTHONPATH=src.
"""

from __future__ import annotations

from collections import Counter

from tribound.cochain import CochainFn
from tribound.coloring import enumerate_colorings, extend_coloring, is_trivial
from tribound.diagram import diagram_from_dict, set_outer_face
from tribound.fixtures import closed_braid_code
from tribound.invariant import (
    certify_lower_bound,
    crossing_triple,
    phi_set,
    w4_formula,
    weight,
)

F3 = CochainFn.build("(x-y)*(y-z)*z", 3)
F5 = CochainFn.build("(x+y)^3*(y+z)*(y-z)^3*z^5", 5)
F4 = CochainFn.build("(x+y)^2*(y-z)^3*z^5", 4)

# expected signed triples (epsilon, (s, a, b)) and weights
TRIPLES_D1 = Counter([(1, (2, 2, 1)), (1, (2, 0, 2)), (1, (2, 1, 0))])
TRIPLES_D3 = Counter(
    [(-1, (3, 2, 0)), (-1, (0, 1, 3)), (1, (4, 1, 2)), (1, (4, 2, 1))]
)
TRIPLES_D5 = Counter(
    [(1, (2, 1, 0)), (1, (2, 0, 3)), (1, (2, 3, 2)), (1, (2, 2, 1))]
)
W_D1, W_D3, W_D5 = -8, -3576, -25428
PHI_D2 = {-2, 2}
PHI_D6 = {-3744, -1004, 0, 292}
PHI_D4 = {w4_formula(a, b, F5) for a in range(5) for b in range(5) if a != b}


def search_primary(code, n, f, s, want_triples, want_w):
    d0 = diagram_from_dict(code)
    hits = []
    for face in range(len(d0.faces)):
        d = set_outer_face(d0, face)
        for cid, col in enumerate(enumerate_colorings(d, n)):
            if is_trivial(col):
                continue
            ec = extend_coloring(d, col, s)
            got = Counter(
                (t.epsilon, (t.s, t.a, t.b))
                for t in (crossing_triple(d, ec, c.id) for c in d.crossings)
            )
            if got == want_triples:
                wv = weight(d, ec, f).value
                assert wv == want_w, (wv, want_w)
                hits.append((face, cid, col.arc_colors))
    return hits


def search_rebased(code, n, f, s, want_set, exclude_face):
    d0 = diagram_from_dict(code)
    hits = []
    for face in range(len(d0.faces)):
        if face == exclude_face:
            continue
        d = set_outer_face(d0, face)
        if set(phi_set(d, s, f).values) == want_set:
            hits.append(face)
    return hits


def main() -> None:
    trefoil = closed_braid_code(2, [(0, "L")] * 3, "d1")
    fig8 = closed_braid_code(3, [(0, "L"), (1, "R"), (0, "L"), (1, "R")], "d3")
    torus = closed_braid_code(2, [(0, "L")] * 4, "d5")

    print("== d1 (trefoil, n=3, s=0) ==")
    hits1 = search_primary(trefoil, 3, F3, 0, TRIPLES_D1, W_D1)
    for face, cid, colors in hits1:
        print(f"  face {face}  coloring #{cid} {colors}")
    d1_face = min(h[0] for h in hits1)
    d1_col = min(h for h in hits1 if h[0] == d1_face)
    print(f"  -> freeze face {d1_face}, coloring {d1_col[2]} (id {d1_col[1]})")

    print("== d2 (trefoil code, Phi(.,0) = {-2,+2}) ==")
    hits2 = search_rebased(trefoil, 3, F3, 0, PHI_D2, d1_face)
    print(f"  faces: {hits2} -> freeze {min(hits2)}")

    print("== d3 (figure-eight, n=5, s=2) ==")
    hits3 = search_primary(fig8, 5, F5, 2, TRIPLES_D3, W_D3)
    for face, cid, colors in hits3:
        print(f"  face {face}  coloring #{cid} {colors}")
    d3_face = min(h[0] for h in hits3)
    d3_col = min(h for h in hits3 if h[0] == d3_face)
    print(f"  -> freeze face {d3_face}, coloring {d3_col[2]} (id {d3_col[1]})")

    print("== d4 (figure-eight code, Phi(.,2) = 20 table values) ==")
    hits4 = search_rebased(fig8, 5, F5, 2, PHI_D4, d3_face)
    print(f"  faces: {hits4} -> freeze {min(hits4)}")

    print("== d5 ((2,4)-torus link, n=4, s=0) ==")
    hits5 = search_primary(torus, 4, F4, 0, TRIPLES_D5, W_D5)
    for face, cid, colors in hits5:
        print(f"  face {face}  coloring #{cid} {colors}")
    d5_face = min(h[0] for h in hits5)
    d5_col = min(h for h in hits5 if h[0] == d5_face)
    print(f"  -> freeze face {d5_face}, coloring {d5_col[2]} (id {d5_col[1]})")

    print("== d6 (torus-link code, Phi(.,0) = {-3744,-1004,0,292}) ==")
    hits6 = search_rebased(torus, 4, F4, 0, PHI_D6, d5_face)
    print(f"  faces: {hits6} -> freeze {min(hits6)}")

    print("== certificates ==")
    pairs = [
        (trefoil, d1_face, min(hits2), 3, F3, 0, 2),
        (fig8, d3_face, min(hits4), 5, F5, 2, 3),
        (torus, d5_face, min(hits6), 4, F4, 0, 3),
    ]
    for code, fa, fb, n, f, s, want_m in pairs:
        d = set_outer_face(diagram_from_dict(code), fa)
        d2 = set_outer_face(diagram_from_dict(code), fb)
        cert = certify_lower_bound(d, d2, s, f, max_m=want_m)
        status = "ok" if cert.m == want_m else "MISMATCH"
        print(f"  {code['name']}: m = {cert.m} (want {want_m})  {status}")


if __name__ == "__main__":
    main()
