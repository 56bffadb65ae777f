"""Aztec castles: hexagonal six-tuples, boundary tracing and condensation frames.

A six-tuple ``(a, b, c, d, e, f)`` describes a closed path made of six runs
of zig-zag subpaths. Each subpath joins two degree-6 white vertices that are
one lattice step apart, passing through the two edge midpoints and the
triangle centre on one side. NE castles use round brackets, SW castles
square brackets and a slightly different set of runs.

All positions are integer pairs in the scaled lattice coordinates of
:mod:`dp3.tiling`.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from . import tiling
from .tiling import Face, Isometry, add, edge_key, face_from_label, neighbors, sub


class OutOfDomain(ValueError):
    """Castle indices outside the range where the family is defined."""


class NotClosed(ValueError):
    """The six runs of a tuple do not close up."""


class SelfIntersecting(ValueError):
    """The traced boundary is not a simple closed curve."""


# -- step tables --------------------------------------------------------------
#
# Each subpath is four edges W1 -> B -> W(centre) -> B -> W1. Entry k of a
# table lists the four steps of subpath P_{k+1}.

NE_STEPS = (
    ((-3, 3), (1, 1), (-1, 2), (3, 0)),
    ((0, -3), (2, -1), (1, -2), (3, 0)),
    ((3, -3), (1, 1), (2, -1), (0, 3)),
    ((3, -3), (-1, -1), (1, -2), (-3, 0)),
    ((0, 3), (-2, 1), (-1, 2), (-3, 0)),
    ((-3, 3), (-1, -1), (-2, 1), (0, -3)),
)

SW_STEPS = (
    ((-3, 0), (1, -2), (-1, -1), (3, -3)),
    ((-3, 0), (-1, 2), (-2, 1), (0, 3)),
    ((0, -3), (-2, 1), (-1, -1), (-3, 3)),
    ((3, 0), (-1, 2), (1, 1), (-3, 3)),
    ((3, 0), (1, -2), (2, -1), (0, -3)),
    ((0, 3), (2, -1), (1, 1), (3, -3)),
)

# SW runs b, c, e, f are traced one extra time; a -1 there removes the face
# with this label at the corner where the (empty) run starts.
SW_EXTRA = (0, 1, 1, 0, 1, 1)
SW_CORNER_REMOVAL = {1: 0, 2: 2, 4: 1, 5: 3}

# the SW base castle and its sigma image are single faces
_SW_SINGLE_FACES = {(0, 0, -1, -1, -1, 0): 5, (-1, -1, 0, 0, 0, -1): 4}


def _run_vector(steps) -> tuple:
    v = (0, 0)
    for s in steps:
        v = add(v, s)
    return v


NE_RUNS = tuple(_run_vector(s) for s in NE_STEPS)
SW_RUNS = tuple(_run_vector(s) for s in SW_STEPS)


# -- tuples -------------------------------------------------------------------


@dataclass(frozen=True)
class HexTuple:
    """Hexagonal notation for a castle.

    Parameters
    ----------
    kind : {'NE', 'SW'}
    entries : tuple of six ints
        Each at least -1, subject to ``a + c == d + f`` and ``b + c == e + f``.
    basepoint : tuple
        Degree-6 white vertex where tracing starts.
    """

    kind: str
    entries: tuple
    basepoint: tuple = (0, 0)

    def __post_init__(self):
        if self.kind not in ("NE", "SW"):
            raise ValueError(f"kind must be 'NE' or 'SW', got {self.kind!r}")
        entries = tuple(int(v) for v in self.entries)
        object.__setattr__(self, "entries", entries)
        if len(entries) != 6:
            raise ValueError("a hexagonal tuple has six entries")
        if min(entries) < -1:
            raise OutOfDomain(f"entries below -1 are not supported: {entries}")
        a, b, c, d, e, f = entries
        if a + c != d + f or b + c != e + f:
            raise NotClosed(f"{self} does not close: need a+c = d+f and b+c = e+f")
        if tiling.kind(self.basepoint) != "W1":
            raise ValueError(f"basepoint {self.basepoint} is not a degree-6 white vertex")

    def __str__(self) -> str:
        body = ",".join(str(v) for v in self.entries)
        return f"({body})" if self.kind == "NE" else f"[{body}]"

    def at(self, basepoint) -> "HexTuple":
        return HexTuple(self.kind, self.entries, tuple(basepoint))

    def sigma(self) -> "HexTuple":
        """Tuple of the 180-degree rotated castle (entries shifted by three)."""
        e = self.entries
        return HexTuple(self.kind, e[3:] + e[:3], self.basepoint)

    def rho(self) -> "HexTuple":
        """Tuple of the reflected castle: ``(a,b,c,d,e,f) -> (a,f,e,d,c,b)``."""
        a, b, c, d, e, f = self.entries
        return HexTuple(self.kind, (a, f, e, d, c, b), self.basepoint)

    def to_json(self) -> dict:
        return {"kind": self.kind, "entries": list(self.entries), "basepoint": list(self.basepoint)}


_TUPLE_RE = re.compile(r"^\s*([(\[])\s*(-?\d+(?:\s*,\s*-?\d+){5})\s*([)\]])\s*$")


def parse_tuple(text: str) -> HexTuple:
    """Parse ``"(a,b,c,d,e,f)"`` (NE) or ``"[a,b,c,d,e,f]"`` (SW)."""
    m = _TUPLE_RE.match(text)
    if not m or {"(": ")", "[": "]"}[m.group(1)] != m.group(3):
        raise ValueError(f"cannot parse hexagonal tuple {text!r}")
    entries = tuple(int(v) for v in m.group(2).split(","))
    return HexTuple("NE" if m.group(1) == "(" else "SW", entries)


def ne_tuple(i: int, j: int) -> HexTuple:
    """``gamma_i^j = (i+j, j, i-1, i+j-1, j-1, i)`` for ``i, j >= 0``.

    ``(0, 0)`` gives ``(0, -1, -1, -1, -1, 0)`` which is not a castle; it is
    rejected. The empty castle ``sigma gamma_0^0`` is :func:`empty_tuple`.
    """
    if i < 0 or j < 0 or (i, j) == (0, 0):
        raise OutOfDomain(f"NE castle needs i, j >= 0 and (i, j) != (0, 0), got ({i}, {j})")
    return HexTuple("NE", (i + j, j, i - 1, i + j - 1, j - 1, i))


def sw_tuple(i: int, j: int) -> HexTuple:
    """``gamma~_i^j = [-i-j-1, -j-1, -i-1, -i-j-2, -j-2, -i]`` for ``0 >= i >= j``.

    At ``(0, -1)`` this is ``[0,0,-1,-1,-1,0]``, which traces to the single
    face-5 quadrilateral. The diagonal ``i = j <= -1`` is included: the even
    alcoves ``(i, i)`` of the SW cone use it.
    """
    if not (0 >= i >= j and j <= -1):
        raise OutOfDomain(f"SW castle needs 0 >= i >= j and j <= -1, got ({i}, {j})")
    return HexTuple("SW", (-i - j - 1, -j - 1, -i - 1, -i - j - 2, -j - 2, -i))


def iota(t: HexTuple) -> HexTuple:
    """Swap round and square brackets, keeping the entries."""
    return HexTuple("SW" if t.kind == "NE" else "NE", t.entries, t.basepoint)


def empty_tuple(kind: str = "NE") -> HexTuple:
    return HexTuple(kind, (0,) * 6)


# -- tracing ----------------------------------------------------------------------


@dataclass(frozen=True)
class CastleGraph:
    """Finite induced subgraph of the tiling cut out by a closed path."""

    vertices: frozenset
    edges: frozenset
    faces: frozenset = frozenset()
    removed_faces: frozenset = frozenset()
    boundary: tuple = ()
    hextuple: HexTuple | None = None

    @property
    def white(self) -> list:
        return sorted(v for v in self.vertices if tiling.is_white(v))

    @property
    def black(self) -> list:
        return sorted(v for v in self.vertices if tiling.is_black(v))

    def is_balanced(self) -> bool:
        return len(self.white) == len(self.black)

    def __len__(self) -> int:
        return len(self.vertices)

    def translate(self, shift) -> "CastleGraph":
        t = self.hextuple.at(add(self.hextuple.basepoint, shift)) if self.hextuple else None
        return self.map(Isometry(0, tuple(shift)), t)

    def map(self, iso, new_tuple=None) -> "CastleGraph":
        """Image under a tiling isometry."""
        return CastleGraph(
            frozenset(iso(v) for v in self.vertices),
            frozenset(edge_key(iso(w), iso(b)) for w, b in self.edges),
            frozenset(iso.face(f) for f in self.faces),
            frozenset(iso.face(f) for f in self.removed_faces),
            tuple(iso(v) for v in self.boundary),
            new_tuple,
        )

    def anchor(self) -> tuple:
        """Smallest degree-6 white vertex, used to normalize translations."""
        ws = [v for v in self.vertices if tiling.kind(v) == "W1"]
        return min(ws) if ws else (0, 0)

    def normalized(self) -> "CastleGraph":
        a = self.anchor()
        return self.translate((-a[0], -a[1]))

    def shape(self) -> tuple:
        """Translation-invariant key: sorted vertices and edges after normalizing."""
        g = self.normalized()
        return tuple(sorted(g.vertices)), tuple(sorted(g.edges))

    def same_shape(self, other: "CastleGraph") -> bool:
        return self.shape() == other.shape()

    def face_labels(self) -> dict:
        out = {k: 0 for k in range(6)}
        for f in self.faces:
            out[f.label] += 1
        return out

    def to_json(self) -> dict:
        return {
            "tuple": self.hextuple.to_json() if self.hextuple else None,
            "vertices": [list(v) for v in sorted(self.vertices)],
            "edges": [[list(w), list(b)] for w, b in sorted(self.edges)],
            "faces": [[list(f.corner), list(f.centre), f.label] for f in sorted(self.faces)],
            "removed_faces": [[list(f.corner), list(f.centre), f.label] for f in sorted(self.removed_faces)],
            "face_labels": self.face_labels(),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def svg(self, unit: float = 60.0, title: str | None = None) -> str:
        shown = set(self.faces)
        for v in self.vertices:
            shown.update(tiling.faces_at(v))
        return tiling.svg(sorted(self.vertices), sorted(self.edges), sorted(shown),
                          unit=unit, highlight_faces=self.faces, title=title,
                          boundary=self.boundary)


def induced(vertices) -> frozenset:
    vs = set(vertices)
    return frozenset(edge_key(v, u) for v in vs for u in neighbors(v) if u in vs)


def from_faces(faces, **extra) -> CastleGraph:
    faces = frozenset(faces)
    verts = frozenset(v for f in faces for v in f.vertices())
    return CastleGraph(verts, induced(verts), faces, **extra)


def _winding(poly, pt) -> int:
    """Winding number of a closed integer polygon around a point (exact)."""
    w = 0
    x, y = pt
    n = len(poly)
    for k in range(n):
        (x1, y1), (x2, y2) = poly[k], poly[(k + 1) % n]
        cross = (x2 - x1) * (y - y1) - (x - x1) * (y2 - y1)
        if y1 <= y:
            if y2 > y and cross > 0:
                w += 1
        elif y2 <= y and cross < 0:
            w -= 1
    return w


def _cancel_backtracks(path) -> list:
    """Remove spikes ``u -> v -> u`` from a closed path (given without repeat)."""
    out = list(path)
    changed = True
    while changed and len(out) > 2:
        changed = False
        n = len(out)
        for k in range(n):
            if out[k - 1] == out[(k + 1) % n]:
                drop = {k, (k + 1) % n}
                out = [v for m, v in enumerate(out) if m not in drop]
                changed = True
                break
    return out


def _enclosed_faces(path) -> set:
    """Faces whose centre of mass lies inside the closed path."""
    xs = [v[0] for v in path]
    ys = [v[1] for v in path]
    poly4 = [(4 * x, 4 * y) for x, y in path]
    found = set()
    for a in range(min(xs) // 6 - 1, max(xs) // 6 + 2):
        for b in range(min(ys) // 6 - 1, max(ys) // 6 + 2):
            corner = (6 * a, 6 * b)
            for lab in range(6):
                f = face_from_label(corner, lab)
                vs = f.vertices()
                c4 = (sum(v[0] for v in vs), sum(v[1] for v in vs))
                w = _winding(poly4, c4)
                if w not in (0, 1, -1):
                    raise SelfIntersecting(f"path winds {w} times around a face")
                if w:
                    found.add(f)
    return found


def _walk(t: HexTuple):
    """Boundary vertex list, faces to remove, and the run start corners."""
    steps, runs = (NE_STEPS, NE_RUNS) if t.kind == "NE" else (SW_STEPS, SW_RUNS)
    extra = (0,) * 6 if t.kind == "NE" else SW_EXTRA
    cur = t.basepoint
    path = [cur]
    removed = set()
    corners = []
    for k in range(6):
        corners.append(cur)
        n = t.entries[k] + extra[k]
        if n >= 0:
            for _ in range(n):
                for s in steps[k]:
                    cur = add(cur, s)
                    path.append(cur)
        else:
            # run once backwards; the triangle's two corner kites drop out
            start = sub(cur, runs[k])
            fwd = [start]
            for s in steps[k]:
                fwd.append(add(fwd[-1], s))
            centre = fwd[2]
            path.extend(reversed(fwd[:-1]))
            removed.add(Face(cur, centre))
            removed.add(Face(start, centre))
            cur = start
    if cur != t.basepoint:
        raise NotClosed(f"{t} does not return to its basepoint")
    if t.kind == "SW":
        for k, lab in SW_CORNER_REMOVAL.items():
            if t.entries[k] == -1:
                removed.add(face_from_label(corners[k], lab))
    return path[:-1], removed


def trace(t: HexTuple, strict: bool = True) -> CastleGraph:
    """Castle graph of a hexagonal tuple.

    The region is everything enclosed by the traced path (doubly traced SW
    edges cancel out); faces dropped by ``-1`` entries are then removed and
    the graph induced on the vertices of the remaining faces.

    Parameters
    ----------
    t : HexTuple
    strict : bool
        If False, a boundary that touches itself at a vertex is accepted.
        Condensation frames need this for some of their pieces.
    """
    if t.kind == "SW" and t.entries in _SW_SINGLE_FACES:
        f = face_from_label(t.basepoint, _SW_SINGLE_FACES[t.entries])
        return from_faces([f], boundary=f.vertices(), hextuple=t)
    if t.entries == (0,) * 6:
        return CastleGraph(frozenset(), frozenset(), hextuple=t)
    path, removed = _walk(t)
    boundary = _cancel_backtracks(path)
    if strict and len(set(boundary)) != len(boundary):
        raise SelfIntersecting(f"boundary of {t} revisits a vertex")
    faces = _enclosed_faces(boundary)
    missing = removed - faces
    if missing:
        raise SelfIntersecting(f"faces to remove lie outside {t}: {sorted(missing)}")
    faces -= removed
    return from_faces(faces, removed_faces=frozenset(removed), boundary=tuple(boundary), hextuple=t)


def ne_castle(i: int, j: int, sigma: bool = False) -> CastleGraph:
    t = ne_tuple(i, j)
    return trace(t.sigma() if sigma else t)


def sw_castle(i: int, j: int, sigma: bool = False) -> CastleGraph:
    t = sw_tuple(i, j)
    return trace(t.sigma() if sigma else t)


def dragon(n: int) -> CastleGraph:
    """The Aztec dragon ``D_{n/2}``, whose ``c`` is the ``n``-th variable of ``123123...``.

    Even ``n`` gives ``sigma gamma_0^{n/2}``. Odd ``n`` gives the mirror image,
    across a vertical line, of ``sigma gamma~_0^{-(n+1)/2}``.
    """
    if n < 1:
        raise OutOfDomain("dragons start at n = 1")
    if n % 2 == 0:
        return ne_castle(0, n // 2, sigma=True)
    g = sw_castle(0, -(n + 1) // 2, sigma=True)
    return symmetry_image(g, Isometry(VERTICAL_MIRROR_ISO))


# -- symmetries ---------------------------------------------------------------

SIGMA_ISO = 3  # rotation by 180 degrees
RHO_ISO = 11  # reflection across the line at 150 degrees
VERTICAL_MIRROR_ISO = 9  # reflection across a vertical line


def symmetry_image(g: CastleGraph, iso) -> CastleGraph:
    """Image of a castle under ``'sigma'``, ``'rho'``, a label permutation or an
    :class:`~dp3.tiling.Isometry`, re-anchored at the original anchor."""
    new_tuple = None
    if iso == "sigma":
        index = SIGMA_ISO
        new_tuple = g.hextuple.sigma() if g.hextuple else None
    elif iso == "rho":
        index = RHO_ISO
        new_tuple = g.hextuple.rho() if g.hextuple else None
    elif isinstance(iso, Isometry):
        index = iso.index
    else:
        index = tiling.isometry_for(iso).index
    a = g.anchor()
    image = g.map(Isometry(index, centre=a))
    shift = sub(a, image.anchor())
    image = image.translate(shift)
    if new_tuple is not None:
        image = CastleGraph(image.vertices, image.edges, image.faces, image.removed_faces,
                            image.boundary, new_tuple)
    return image


# -- condensation frames ----------------------------------------------------------

SECTORS = ("C", "N", "S", "E", "W", "NE", "NW", "SE", "SW")
_CORNERS = ("NE", "NW", "SE", "SW")
_SIDE_CORNERS = {"N": ("NE", "NW"), "S": ("SE", "SW"), "E": ("NE", "SE"), "W": ("NW", "SW")}
_ALLOWED = {frozenset((s,)) for s in SECTORS}
_ALLOWED |= {frozenset(("C", c)) for c in _CORNERS}
_ALLOWED |= {frozenset(p) for p in (("NE", "NW"), ("NW", "SW"), ("SW", "SE"), ("SE", "NE"))}
_ALLOWED |= {frozenset((s, c)) for s, cs in _SIDE_CORNERS.items() for c in cs}


@dataclass
class KuoFrame:
    """Nine-set vertex partition of a castle for graphical condensation.

    ``sets`` maps sector names to vertex sets; ``composites`` holds the four
    subgraphs ``Q1 = S+SW+SE+C``, ``Q2 = W+SW+NW+C``, ``Q3 = N+NW+NE+C`` and
    ``Q4 = E+NE+SE+C``.
    """

    graph: CastleGraph
    sets: dict
    corner_colour: dict = field(default_factory=lambda: {"NE": "B", "SW": "B", "NW": "W", "SE": "W"})

    def union(self, *names) -> frozenset:
        out = set()
        for n in names:
            out |= self.sets[n]
        return frozenset(out)

    def subgraph(self, *names) -> CastleGraph:
        vs = self.union(*names)
        return CastleGraph(vs, induced(vs))

    @property
    def composites(self) -> dict:
        return {
            "Q1": self.subgraph("S", "SW", "SE", "C"),
            "Q2": self.subgraph("W", "SW", "NW", "C"),
            "Q3": self.subgraph("N", "NW", "NE", "C"),
            "Q4": self.subgraph("E", "NE", "SE", "C"),
        }

    def sector_of(self) -> dict:
        return {v: name for name, vs in self.sets.items() for v in vs}

    def check(self) -> list:
        """Violated condensation conditions (empty when the frame is valid)."""
        problems = []
        where = self.sector_of()
        total = sum(len(s) for s in self.sets.values())
        if total != len(where) or set(where) != set(self.graph.vertices):
            problems.append("sets do not partition the vertices")
        for w, b in self.graph.edges:
            pair = frozenset((where.get(w), where.get(b)))
            if pair not in _ALLOWED:
                problems.append(f"edge {w}-{b} joins {'/'.join(sorted(map(str, pair)))}")
        for name, colour in self.corner_colour.items():
            for v in self.sets[name]:
                if any(where.get(u) != name for u in neighbors(v) if edge_key(v, u) in self.graph.edges):
                    if tiling.kind(v)[0] != colour:
                        problems.append(f"boundary vertex {v} of {name} has the wrong colour")
        for name, vs in self.sets.items():
            nb = sum(1 for v in vs if tiling.is_black(v))
            nw = len(vs) - nb
            if name in _CORNERS:
                more = self.corner_colour[name]
                want = 1 if more == "B" else -1
            else:
                want = 0
            if nb - nw != want:
                problems.append(f"{name} has {nb} black and {nw} white vertices")
        return problems


def _components(vertices) -> list:
    vs = set(vertices)
    comps = []
    while vs:
        stack = [vs.pop()]
        comp = set(stack)
        while stack:
            v = stack.pop()
            for u in neighbors(v):
                if u in vs:
                    vs.remove(u)
                    comp.add(u)
                    stack.append(u)
        comps.append(frozenset(comp))
    return comps


def _frame(kind: str, i: int, j: int, p1_run: int, p2_run: int) -> KuoFrame:
    runs = NE_RUNS if kind == "NE" else SW_RUNS
    g_t = HexTuple(kind, (i + j, j, i - 1, i + j - 1, j - 1, i))
    g = trace(g_t)
    p = g_t.basepoint
    p1 = add(p, runs[p1_run])
    p2 = add(p, runs[p2_run])
    p0 = add(add(p, runs[0]), runs[2])

    def v(entries, base):
        return trace(HexTuple(kind, entries, base), strict=False).vertices

    c = v((i + j - 3, j - 2, i - 1, i + j - 2, j - 1, i - 2), p0)
    sets = {
        "C": c,
        "SW": v((i + j - 2, j - 2, i - 1, i + j - 2, j - 2, i - 1), p2) - c,
        "NW": v((i + j - 2, j - 1, i - 1, i + j - 2, j - 1, i - 1), p1) - c,
        "NE": v((i + j - 2, j - 1, i - 2, i + j - 2, j - 1, i - 2), p0) - c,
        "SE": v((i + j - 3, j - 2, i, i + j - 1, j, i - 2), p0) - c,
        "E": frozenset(),
        "S": frozenset(),
    }
    used = set().union(*sets.values())
    rest = _components(g.vertices - used)
    if len(rest) != 2:
        raise OutOfDomain(f"expected two leftover components, found {len(rest)}")
    # N is the leftover piece attached to NE, W the one attached to SW
    def touches(comp, name):
        return any(u in sets[name] for x in comp for u in neighbors(x))

    if touches(rest[1], "NE") and not touches(rest[0], "NE"):
        rest.reverse()
    sets["N"], sets["W"] = rest
    return KuoFrame(g, sets)


def kuo_frame_ne(i: int, j: int) -> KuoFrame:
    """Condensation frame of ``gamma_i^j`` for ``1 <= i <= j``, ``j >= 2``."""
    if not (1 <= i <= j and j >= 2):
        raise OutOfDomain(f"NE frame needs 1 <= i <= j and j >= 2, got ({i}, {j})")
    return _frame("NE", i, j, 0, 2)


def kuo_frame_sw(i: int, j: int) -> KuoFrame:
    """Condensation frame of ``gamma~_i^j`` for ``0 >= i > j``, ``j < -2``.

    Obtained by swapping brackets on every tuple of the NE frame of
    ``gamma_{-i}^{-j-1}``, with basepoints offset by the same runs.
    """
    if not (-1 >= i > j and j <= -3):
        raise OutOfDomain(f"SW frame needs -1 >= i > j and j <= -3, got ({i}, {j})")
    frame = _frame("SW", -i, -j - 1, 0, 2)
    # the bracket swap exchanges the colours on the corner sectors
    frame.corner_colour = {"NE": "W", "SW": "W", "NW": "B", "SE": "B"}
    return frame
