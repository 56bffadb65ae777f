import math

from hypothesis import given, strategies as st

from dp3 import tiling
from dp3.laurent import RHO, SIGMA, compose, monomial
from dp3.tiling import (
    Isometry, edge_key, edge_labels, edge_weight, faces_at, faces_of_edge,
    isometry_for, kind, label_permutation, neighbors, patch,
)

W1 = (0, 0)
CELL = {kind(v): v for v in ((0, 0), (3, 0), (0, 3), (3, 3), (2, 2), (4, 4))}
# superpotential terms, as the label pairs of their arrows
TERMS = {
    "W1": ((3, 1), (1, 4), (4, 2), (2, 0), (0, 5), (5, 3)),
    "W2": ((3, 4), (4, 0), (0, 3)),
    "W3": ((1, 2), (2, 5), (5, 1)),
    "B1": ((1, 4), (4, 0), (0, 5), (5, 1)),
    "B2": ((3, 4), (4, 2), (2, 5), (5, 3)),
    "B3": ((3, 1), (1, 2), (2, 0), (0, 3)),
}
lattice = st.tuples(st.integers(-4, 4), st.integers(-4, 4)).map(lambda p: (6 * p[0], 6 * p[1]))
local = st.sampled_from(sorted(CELL.values()))


def pairs(term):
    return sorted(tuple(sorted(p)) for p in term)


def test_degrees():
    assert {k: len(neighbors(v)) for k, v in CELL.items()} == {
        "W1": 6, "W2": 3, "W3": 3, "B1": 4, "B2": 4, "B3": 4}


def test_vertex_edges_follow_superpotential():
    for k, v in CELL.items():
        got = sorted(edge_labels(edge_key(v, u)) for u in neighbors(v))
        assert got == pairs(TERMS[k])


def test_each_arrow_once_white_once_black():
    white = sorted(p for k in ("W1", "W2", "W3") for p in pairs(TERMS[k]))
    black = sorted(p for k in ("B1", "B2", "B3") for p in pairs(TERMS[k]))
    assert white == black
    assert len(set(white)) == 12


def test_faces_clockwise_around_w1():
    fs = sorted(faces_at(W1), key=lambda f: -math.atan2(f.centroid()[1], f.centroid()[0]))
    labels = [f.label for f in fs]
    k = labels.index(5)
    assert labels[k:] + labels[:k] == [5, 3, 1, 4, 2, 0]


def test_face_zero_boundary():
    f = tiling.face_from_label(W1, 0)
    assert sorted(edge_labels(e) for e in f.edges()) == [(0, 2), (0, 3), (0, 4), (0, 5)]


def test_edge_weight_examples():
    e05 = next(e for e in tiling.face_from_label(W1, 5).edges() if edge_labels(e) == (0, 5))
    assert edge_weight(e05) == monomial((-1, 0, 0, 0, 0, -1))


def test_face5_matchings():
    f = tiling.face_from_label(W1, 5)
    e = f.edges()
    m1 = edge_weight(e[0]) * edge_weight(e[2])
    m2 = edge_weight(e[1]) * edge_weight(e[3])
    assert {m1, m2} == {monomial((-1, 0, -1, 0, 0, -2)), monomial((0, -1, 0, -1, 0, -2))}


def test_euler_characteristic_of_patch():
    verts, edges, faces = patch(3)
    # a disc: V - E + F = 1 (bounded faces only)
    assert len(verts) - len(edges) + len(faces) == 1


def test_isometry_examples():
    sig = isometry_for(SIGMA)
    assert sig.index == 3
    assert all(sig(sig(v)) == v for v in CELL.values())
    rho = isometry_for(RHO)
    assert rho.face(tiling.face_from_label(W1, 0)).label == 3
    rot = isometry_for((5, 4, 0, 1, 2, 3))  # (053142)
    assert rot.index == 5  # 60 degrees clockwise
    p = (5, 4, 0, 1, 2, 3)
    assert compose(p, compose(p, p)) == SIGMA


def test_table_alphas_are_isometries():
    from dp3.alcove import REGION_ROWS
    for row in REGION_ROWS:
        assert label_permutation(isometry_for(row.alpha).index) == tuple(row.alpha)


@given(local, lattice)
def test_periodic(v, shift):
    w = tiling.add(v, shift)
    assert kind(w) == kind(v)
    assert sorted(neighbors(w)) == sorted(tiling.add(u, shift) for u in neighbors(v))


@given(local, lattice)
def test_bipartite_and_labels(v, shift):
    v = tiling.add(v, shift)
    for u in neighbors(v):
        assert tiling.is_white(u) != tiling.is_white(v)
        e = edge_key(v, u)
        a, b = edge_labels(e)
        assert a != b
        assert all(len(f.vertices()) == 4 for f in faces_of_edge(e))


@given(st.integers(0, 11), local, lattice)
def test_isometries_preserve_structure(index, v, shift):
    iso = Isometry(index)
    v = tiling.add(v, shift)
    perm = label_permutation(index)
    assert sorted(neighbors(iso(v))) == sorted(iso(u) for u in neighbors(v))
    for f in faces_at(v):
        assert iso.face(f).label == perm[f.label]


def test_svg_output():
    verts, edges, faces = patch(1)
    out = tiling.svg(verts, edges, faces, title="patch")
    assert out.startswith("<svg") and out.endswith("</svg>")
    assert "<title>patch</title>" in out
    assert out.count("<circle") == len(verts)
