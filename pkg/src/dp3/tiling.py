"""The periodic dP3 brane tiling.

The tiling is drawn on the triangular lattice spanned by ``u = (1, 0)`` and
``w = (1/2, sqrt(3)/2)``. All vertex positions are stored scaled by 6 in the
``(u, w)`` basis so that they are integer pairs:

======  =================  ======  ======
kind    position (mod 6)   colour  degree
======  =================  ======  ======
``W1``  ``(0, 0)``         white   6
``B1``  ``(3, 0)``         black   4
``B3``  ``(0, 3)``         black   4
``B2``  ``(3, 3)``         black   4
``W3``  ``(2, 2)``         white   3
``W2``  ``(4, 4)``         white   3
======  =================  ======  ======

``W1`` sits on lattice points, the black vertices on lattice-edge midpoints,
``W3`` at centres of up-triangles and ``W2`` at centres of down-triangles.
Faces are kites ``(corner, midpoint, centre, midpoint)``; the face label is
determined by where the centre sits relative to the corner.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .laurent import LaurentPolynomial, monomial

SCALE = 6
KINDS = {(0, 0): "W1", (3, 0): "B1", (0, 3): "B3", (3, 3): "B2", (2, 2): "W3", (4, 4): "W2"}

# the six lattice directions (scaled), counterclockwise from 0 degrees
DIRECTIONS = ((6, 0), (0, 6), (-6, 6), (-6, 0), (0, -6), (6, -6))

# centre - corner offset of a kite -> face label
_FACE_LABEL = {(2, 2): 1, (-4, 2): 5, (2, -4): 2, (-2, 4): 3, (-2, -2): 0, (4, -2): 4}
_UP_MIDS = ((1, -2), (-2, 1), (1, 1))  # centre -> midpoints, up-triangles
_DOWN_MIDS = ((2, -1), (-1, 2), (-1, -1))  # centre -> midpoints, down-triangles
_HALF_EDGE = {"B1": (3, 0), "B3": (0, 3), "B2": (-3, 3)}


def _kind_or_none(v):
    return KINDS.get((v[0] % 6, v[1] % 6))


def kind(v) -> str:
    k = _kind_or_none(v)
    if k is None:
        raise ValueError(f"{v} is not a tiling vertex")
    return k


def is_white(v) -> bool:
    return kind(v)[0] == "W"


def is_black(v) -> bool:
    return kind(v)[0] == "B"


def add(p, q) -> tuple:
    return (p[0] + q[0], p[1] + q[1])


def sub(p, q) -> tuple:
    return (p[0] - q[0], p[1] - q[1])


def to_real(v) -> tuple:
    """Cartesian coordinates of a scaled position, in lattice units."""
    return ((v[0] + v[1] / 2) / SCALE, (v[1] * math.sqrt(3) / 2) / SCALE)


@lru_cache(maxsize=None)
def neighbors(v) -> tuple:
    k = kind(v)
    if k == "W1":
        return tuple(add(v, d) for d in ((3, 0), (-3, 0), (0, 3), (0, -3), (-3, 3), (3, -3)))
    if k == "W3":
        return tuple(add(v, d) for d in _UP_MIDS)
    if k == "W2":
        return tuple(add(v, d) for d in _DOWN_MIDS)
    h = _HALF_EDGE[k]
    out = [add(v, h), sub(v, h)]
    for d in _UP_MIDS:
        c = sub(v, d)
        if _kind_or_none(c) == "W3":
            out.append(c)
    for d in _DOWN_MIDS:
        c = sub(v, d)
        if _kind_or_none(c) == "W2":
            out.append(c)
    return tuple(out)


def corners_of_midpoint(b) -> tuple:
    h = _HALF_EDGE[kind(b)]
    return add(b, h), sub(b, h)


def centres_of_midpoint(b) -> tuple:
    return tuple(c for c in neighbors(b) if kind(c) in ("W2", "W3"))


@dataclass(frozen=True, order=True)
class Face:
    """A kite face, identified by its lattice-point corner and triangle centre."""

    corner: tuple
    centre: tuple

    @property
    def label(self) -> int:
        return _FACE_LABEL[sub(self.centre, self.corner)]

    def vertices(self) -> tuple:
        """Boundary in cyclic order: corner, midpoint, centre, midpoint."""
        mids = [m for m in neighbors(self.centre) if self.corner in corners_of_midpoint(m)]
        return (self.corner, mids[0], self.centre, mids[1])

    def edges(self) -> tuple:
        vs = self.vertices()
        return tuple(edge_key(vs[k], vs[(k + 1) % 4]) for k in range(4))

    def centroid(self) -> tuple:
        xs, ys = zip(*(to_real(v) for v in self.vertices()))
        return sum(xs) / 4, sum(ys) / 4


def edge_key(p, q) -> tuple:
    """Edges are stored as (white, black)."""
    return (p, q) if is_white(p) else (q, p)


@lru_cache(maxsize=None)
def faces_of_edge(e) -> tuple:
    """The two faces on either side of an edge, sorted."""
    w, b = edge_key(*e)
    if kind(w) == "W1":
        out = [Face(w, c) for c in centres_of_midpoint(b)]
    else:
        out = [Face(c, w) for c in corners_of_midpoint(b)]
    return tuple(sorted(out))


def edge_labels(e) -> tuple:
    return tuple(sorted(f.label for f in faces_of_edge(e)))


def edge_weight(e) -> LaurentPolynomial:
    """``1 / (x_i x_j)`` for the faces ``i, j`` on either side of ``e``."""
    i, j = edge_labels(e)
    exps = [0] * 6
    exps[i] -= 1
    exps[j] -= 1
    return monomial(exps)


def edge_name(e) -> str:
    i, j = edge_labels(e)
    return f"E{i}{j}"


@lru_cache(maxsize=None)
def faces_at(v) -> tuple:
    """All faces having ``v`` as a vertex."""
    out = set()
    for n in neighbors(v):
        out.update(faces_of_edge(edge_key(v, n)))
    return tuple(sorted(out))


def face_from_label(corner, label: int) -> Face:
    for off, lab in _FACE_LABEL.items():
        if lab == label:
            return Face(corner, add(corner, off))
    raise ValueError(label)


# -- symmetries -----------------------------------------------------------------

# linear maps of the scaled (u, w) lattice fixing the origin W1
def _rot60(p):
    return (-p[1], p[0] + p[1])


def _reflect_x(p):
    return (p[0] + p[1], -p[1])


def _compose(f, g):
    return lambda p: f(g(p))


def _point_group():
    rots = [lambda p: p]
    for _ in range(5):
        rots.append(_compose(_rot60, rots[-1]))
    refls = [_compose(r, _reflect_x) for r in rots]
    return rots + refls


@dataclass(frozen=True)
class Isometry:
    """``v -> L(v - centre) + centre + shift`` with ``L`` in the point group."""

    index: int  # 0..5 rotations by 60*index ccw, 6..11 reflections
    shift: tuple = (0, 0)
    centre: tuple = (0, 0)

    def __call__(self, v) -> tuple:
        lin = _point_group()[self.index]
        return add(add(lin(sub(v, self.centre)), self.centre), self.shift)

    def face(self, f: Face) -> Face:
        return Face(self(f.corner), self(f.centre))


@lru_cache(maxsize=None)
def label_permutation(index: int) -> tuple:
    """Permutation of face labels induced by a point-group element at W1."""
    iso = Isometry(index)
    perm = [None] * 6
    for off, lab in _FACE_LABEL.items():
        perm[lab] = iso.face(Face((0, 0), off)).label
    return tuple(perm)


def isometry_for(perm) -> Isometry:
    """Point-group element about a W1 vertex realizing a label permutation."""
    perm = tuple(perm)
    for idx in range(12):
        if label_permutation(idx) == perm:
            return Isometry(idx)
    raise ValueError(f"{perm} is not induced by a tiling symmetry fixing a W1 vertex")


ISOMETRY_NAMES = {
    0: "identity",
    1: "rotation by 60 degrees",
    2: "rotation by 120 degrees",
    3: "rotation by 180 degrees",
    4: "rotation by 240 degrees",
    5: "rotation by 300 degrees",
}
for _k in range(6):
    ISOMETRY_NAMES[6 + _k] = f"reflection across the line at {30 * _k} degrees"


# -- patches and SVG ------------------------------------------------------------


def patch(radius: int) -> tuple:
    """Vertices and edges of all faces with corner within ``radius`` lattice steps."""
    faces = []
    for a in range(-radius, radius + 1):
        for b in range(-radius, radius + 1):
            if abs(a) + abs(b) + abs(a + b) <= 2 * radius:
                corner = (6 * a, 6 * b)
                for off in _FACE_LABEL:
                    faces.append(Face(corner, add(corner, off)))
    verts = sorted({v for f in faces for v in f.vertices()})
    edges = sorted({e for f in faces for e in f.edges()})
    return verts, edges, faces


def svg(vertices, edges, faces=(), unit: float = 60.0, margin: float = 20.0,
        highlight_faces=(), title: str | None = None, boundary=()) -> str:
    """Standalone SVG drawing of a piece of the tiling."""
    extent = set(vertices) | set(boundary) | {u for f in faces for u in f.vertices()}
    pts = [to_real(v) for v in extent] or [(0.0, 0.0)]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    x0, y1 = min(xs), max(ys)
    width = (max(xs) - x0) * unit + 2 * margin
    height = (y1 - min(ys)) * unit + 2 * margin

    def xy(v):
        x, y = to_real(v)
        return (x - x0) * unit + margin, (y1 - y) * unit + margin

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1f}" height="{height:.1f}" '
        f'viewBox="0 0 {width:.1f} {height:.1f}">'
    ]
    if title:
        out.append(f"<title>{title}</title>")
    hl = set(highlight_faces)
    for f in faces:
        poly = " ".join("%.2f,%.2f" % xy(v) for v in f.vertices())
        fill = "#f3d9a4" if f in hl else "#f4f4f4"
        out.append(f'<polygon points="{poly}" fill="{fill}" stroke="none"/>')
        cx, cy = f.centroid()
        px, py = (cx - x0) * unit + margin, (y1 - cy) * unit + margin
        out.append(
            f'<text x="{px:.1f}" y="{py:.1f}" font-size="{unit / 5:.1f}" '
            f'text-anchor="middle" dominant-baseline="middle" fill="#777">{f.label}</text>'
        )
    for w, b in edges:
        (ax, ay), (bx, by) = xy(w), xy(b)
        out.append(f'<line x1="{ax:.1f}" y1="{ay:.1f}" x2="{bx:.1f}" y2="{by:.1f}" stroke="#333" stroke-width="1.5"/>')
    if boundary:
        pts = " ".join("%.1f,%.1f" % xy(v) for v in list(boundary) + [boundary[0]])
        out.append(f'<polyline points="{pts}" fill="none" stroke="#c0392b" stroke-width="3" opacity="0.6"/>')
    r = unit / 14
    for v in vertices:
        cx, cy = xy(v)
        fill = "white" if is_white(v) else "black"
        out.append(f'<circle cx="{cx:.1f}" cy="{cy:.1f}" r="{r:.1f}" fill="{fill}" stroke="black"/>')
    out.append("</svg>")
    return "\n".join(out)
