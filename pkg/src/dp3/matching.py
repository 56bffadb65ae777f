"""Perfect matchings of finite pieces of the tiling.

Three ways to get at ``w(G)``, the sum over perfect matchings of the product
of edge weights ``1 / (x_i x_j)``:

* :func:`enumerate_matchings` lists matchings explicitly (small graphs);
* :func:`weight` runs a sweep-line transfer computation that is exact and
  much faster than listing;
* :func:`fingerprint` evaluates a Kasteleyn determinant at a rational point.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Sequence

from . import tiling
from .laurent import LaurentPolynomial, monomial
from .tiling import edge_key, edge_labels, edge_weight, faces_of_edge, to_real

DEFAULT_CAP = 2 ** 16


class Overflow(RuntimeError):
    """More matchings than the enumeration cap allows."""


class SigningFailure(RuntimeError):
    """No Kasteleyn signing was found (the graph is not planar as embedded)."""


def _adjacency(vertices, edges) -> dict:
    adj = {v: set() for v in vertices}
    for w, b in edges:
        adj[w].add(b)
        adj[b].add(w)
    return adj


# -- enumeration -------------------------------------------------------------


def enumerate_matchings(g, cap: int = DEFAULT_CAP) -> list:
    """All perfect matchings of ``g`` as frozensets of edges.

    Degree-one vertices force their edge; otherwise branch on a vertex of
    minimum degree. Raises :class:`Overflow` past ``cap`` matchings.
    """
    out = []
    adj = _adjacency(g.vertices, g.edges)

    def remove(adj, v, u):
        """Match ``v``-``u``: drop both vertices from a copy of ``adj``."""
        new = {k: set(s) for k, s in adj.items() if k != v and k != u}
        for n in adj[v] | adj[u]:
            if n in new:
                new[n].discard(v)
                new[n].discard(u)
        return new

    def rec(adj, chosen):
        while adj:
            low = min(adj, key=lambda k: (len(adj[k]), k))
            deg = len(adj[low])
            if deg == 0:
                return
            if deg > 1:
                break
            (u,) = adj[low]
            chosen = chosen + [edge_key(low, u)]
            adj = remove(adj, low, u)
        if not adj:
            out.append(frozenset(chosen))
            if len(out) > cap:
                raise Overflow(f"more than {cap} perfect matchings")
            return
        for u in sorted(adj[low]):
            rec(remove(adj, low, u), chosen + [edge_key(low, u)])

    if len(g.vertices) % 2 == 0:
        rec(adj, [])
    return out


def matching_weight(m) -> LaurentPolynomial:
    out = LaurentPolynomial.one()
    for e in m:
        out = out * edge_weight(e)
    return out


# -- sweep-line transfer ------------------------------------------------------


def _sweep_order(vertices) -> list:
    """Order vertices along the shorter direction of the bounding box."""
    def x2(v):  # twice the real x coordinate, scaled
        return 2 * v[0] + v[1]

    xs = [x2(v) for v in vertices]
    ys = [v[1] for v in vertices]
    width = (max(xs) - min(xs)) / 2 if xs else 0
    height = (max(ys) - min(ys)) * math.sqrt(3) / 2 if ys else 0
    if width >= height:
        return sorted(vertices, key=lambda v: (v[1], x2(v)))
    return sorted(vertices, key=lambda v: (x2(v), v[1]))


def transfer(vertices, edges, edge_value, one, zero):
    """Sum over perfect matchings of products of ``edge_value(e)``.

    Vertices are processed in sweep order; a state records which later
    vertices are already matched to earlier ones.
    """
    order = _sweep_order(list(vertices))
    pos = {v: k for k, v in enumerate(order)}
    adj = _adjacency(vertices, edges)
    later = {v: sorted((u for u in adj[v] if pos[u] > pos[v]), key=pos.get) for v in order}
    values = {e: edge_value(e) for e in edges}
    states = {frozenset(): one}
    for v in order:
        new = {}
        for st, val in states.items():
            if v in st:
                key = st - {v}
                new[key] = new[key] + val if key in new else val
                continue
            for u in later[v]:
                if u in st:
                    continue
                key = st | {u}
                term = val * values[edge_key(v, u)]
                new[key] = new[key] + term if key in new else term
        states = new
        if not states:
            return zero
    return states.get(frozenset(), zero)


def weight(g, method: str = "transfer", cap: int = DEFAULT_CAP) -> LaurentPolynomial:
    """``w(G)`` as an exact Laurent polynomial.

    Parameters
    ----------
    g : CastleGraph or any object with ``vertices`` and ``edges``
    method : {'transfer', 'enumerate'}
    cap : int
        Matching cap for ``method='enumerate'``.
    """
    if method == "enumerate":
        total = LaurentPolynomial.zero()
        for m in enumerate_matchings(g, cap):
            total = total + matching_weight(m)
        return total
    if method != "transfer":
        raise ValueError(f"unknown method {method!r}")
    return transfer(g.vertices, g.edges, edge_weight, LaurentPolynomial.one(), LaurentPolynomial.zero())


def covering_faces(g) -> frozenset:
    """Faces enclosed in or bordering ``g``: those sharing an edge with it."""
    return frozenset(f for e in g.edges for f in faces_of_edge(e))


def covering_exponents(g) -> tuple:
    exps = [0] * 6
    for f in covering_faces(g):
        exps[f.label] += 1
    return tuple(exps)


def covering_monomial(g) -> LaurentPolynomial:
    return monomial(covering_exponents(g))


def c_value(g, method: str = "transfer", cap: int = DEFAULT_CAP) -> LaurentPolynomial:
    """``c(G) = w(G) m(G)``."""
    return weight(g, method, cap) * covering_monomial(g)


def count(g, cap: int = 4096) -> int:
    """Number of perfect matchings (listing when small, Kasteleyn otherwise)."""
    try:
        return len(enumerate_matchings(g, cap))
    except Overflow:
        return int(fingerprint(g, (1,) * 6))


# -- Kasteleyn fingerprint -----------------------------------------------------


def _faces_of_embedding(vertices, adj) -> list:
    """Faces of the straight-line embedding as lists of directed edges."""
    pos = {v: to_real(v) for v in vertices}

    def angle(v, u):
        (x0, y0), (x1, y1) = pos[v], pos[u]
        return math.atan2(y1 - y0, x1 - x0)

    rot = {v: sorted(adj[v], key=lambda u: angle(v, u)) for v in vertices}
    seen = set()
    faces = []
    for v in vertices:
        for u in adj[v]:
            if (v, u) in seen:
                continue
            face = []
            a, b = v, u
            while (a, b) not in seen:
                seen.add((a, b))
                face.append((a, b))
                # next edge: the neighbour of b just clockwise from a
                nb = rot[b]
                k = nb.index(a)
                a, b = b, nb[k - 1]
            faces.append(face)
    return faces


def _signed_area(face) -> float:
    total = 0.0
    for a, b in face:
        (x0, y0), (x1, y1) = to_real(a), to_real(b)
        total += x0 * y1 - x1 * y0
    return total / 2


def _components(vertices, adj) -> list:
    left = set(vertices)
    comps = []
    while left:
        stack = [left.pop()]
        comp = set(stack)
        while stack:
            v = stack.pop()
            for u in adj[v]:
                if u in left:
                    left.remove(u)
                    comp.add(u)
                    stack.append(u)
        comps.append(comp)
    return comps


def kasteleyn_signs(vertices, edges) -> dict:
    """Edge signs (+1/-1) such that every bounded face whose boundary cycle has
    length ``2 mod 4`` carries an even and length ``0 mod 4`` an odd number
    of minus signs.

    A spanning forest gets ``+1``; remaining edges are fixed one face at a
    time, always choosing a face with a single undetermined edge.
    """
    adj = _adjacency(vertices, edges)
    sign = {}
    bounded = []
    for comp in _components(vertices, adj):
        # spanning tree
        root = min(comp)
        stack, seen = [root], {root}
        while stack:
            v = stack.pop()
            for u in sorted(adj[v]):
                if u not in seen:
                    seen.add(u)
                    sign[edge_key(v, u)] = 1
                    stack.append(u)
        faces = _faces_of_embedding(comp, adj)
        if len(faces) > 1:
            outer = min(faces, key=_signed_area)
            bounded += [f for f in faces if f is not outer]
    cycles = []
    for f in bounded:
        counted = {}
        for a, b in f:
            e = edge_key(a, b)
            counted[e] = counted.get(e, 0) + 1
        cycles.append([e for e, n in counted.items() if n == 1])
    pending = list(range(len(cycles)))
    progress = True
    while pending and progress:
        progress = False
        rest = []
        for k in pending:
            cyc = cycles[k]
            unknown = [e for e in cyc if e not in sign]
            if len(unknown) == 1:
                want = -1 if len(cyc) % 4 == 0 else 1
                prod = 1
                for e in cyc:
                    if e in sign:
                        prod *= sign[e]
                sign[unknown[0]] = want * prod
                progress = True
            elif unknown:
                rest.append(k)
        pending = rest
    if pending or len(sign) != len(edges):
        raise SigningFailure("could not sign every edge")
    for cyc in cycles:
        prod = reduce(lambda s, e: s * sign[e], cyc, 1)
        if prod != (-1 if len(cyc) % 4 == 0 else 1):
            raise SigningFailure("face condition violated")
    return sign


def _sparse_abs_det(rows: list) -> Fraction:
    """``|det|`` of a square matrix given as a list of ``{col: value}`` dicts."""
    rows = [dict(r) for r in rows]
    n = len(rows)
    cols_rows = {}
    for k, r in enumerate(rows):
        for c in r:
            cols_rows.setdefault(c, set()).add(k)
    alive = set(range(n))
    det = Fraction(1)
    for c in sorted(cols_rows):
        cand = [k for k in cols_rows.get(c, ()) if k in alive and rows[k].get(c)]
        if not cand:
            return Fraction(0)
        p = min(cand, key=lambda k: (len(rows[k]), k))
        prow = rows[p]
        pv = prow[c]
        det *= pv
        alive.discard(p)
        for k in cand:
            if k == p:
                continue
            r = rows[k]
            f = r[c] / pv
            for cc, v in prow.items():
                nv = r.get(cc, 0) - f * v
                if nv:
                    if cc not in r:
                        cols_rows.setdefault(cc, set()).add(k)
                    r[cc] = nv
                else:
                    r.pop(cc, None)
            r.pop(c, None)
    return abs(det)


def fingerprint(g, point: Sequence) -> Fraction:
    """``w(G)`` at a point of positive rationals via a Kasteleyn determinant."""
    whites = sorted(v for v in g.vertices if tiling.is_white(v))
    blacks = sorted(v for v in g.vertices if tiling.is_black(v))
    if len(whites) != len(blacks):
        return Fraction(0)
    if not whites:
        return Fraction(1)
    point = [Fraction(p) for p in point]
    sign = kasteleyn_signs(g.vertices, g.edges)
    col = {b: k for k, b in enumerate(_sweep_order(blacks))}
    rows = {w: {} for w in whites}
    for e in g.edges:
        i, j = edge_labels(e)
        rows[e[0]][col[e[1]]] = sign[e] / (point[i] * point[j])
    order = _sweep_order(whites)
    return _sparse_abs_det([rows[w] for w in order])


def c_fingerprint(g, point: Sequence) -> Fraction:
    """``c(G)`` at a point: Kasteleyn weight times the covering monomial."""
    val = fingerprint(g, point)
    for k, e in enumerate(covering_exponents(g)):
        val *= Fraction(point[k]) ** e
    return val
