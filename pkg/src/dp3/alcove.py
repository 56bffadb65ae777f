"""Alcoves of the affine A2 triangular lattice and tau-word walks.

Triangles are indexed by lattice coordinates ``(m, n)`` in the basis
``u = (1, 0)``, ``w = (1/2, sqrt(3)/2)``:

* ``up(m, n)`` has corners ``(m, n), (m+1, n), (m, n+1)``;
* ``down(m, n)`` has corners ``(m+1, n), (m, n+1), (m+1, n+1)``.

The origin alcove is ``down(0, 0)`` with its top edge labeled 1, lower-right
edge 2 and lower-left edge 3. With this indexing the alcove coordinates are
simply: the even alcove ``(i, j)`` is ``down(i, j)`` and the odd alcove
``{i, j}`` is ``up(i, j + 1)`` (the up-triangle sitting on top of ``(i, j)``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .cluster import parse_word
from .laurent import from_cycles


class InvalidAlcove(ValueError):
    pass


# edge slots: up triangles have bottom/left/right, down triangles top/left/right
_UP_NEIGHBOR = {"bottom": (0, -1, "top"), "left": (-1, 0, "right"), "right": (0, 0, "left")}
_DOWN_NEIGHBOR = {"top": (0, 1, "bottom"), "left": (0, 0, "right"), "right": (1, 0, "left")}

# how the other two slots map when crossing a given slot (reflection)
_UP_REFLECT = {
    "bottom": {"left": "left", "right": "right"},
    "left": {"bottom": "left", "right": "top"},
    "right": {"bottom": "right", "left": "top"},
}
_DOWN_REFLECT = {
    "top": {"left": "left", "right": "right"},
    "right": {"left": "bottom", "top": "right"},
    "left": {"right": "bottom", "top": "left"},
}


@dataclass(frozen=True)
class GeometricAlcove:
    """A triangle together with the labels carried by its three edges."""

    m: int
    n: int
    up: bool
    labels: tuple  # sorted (slot, label) pairs

    def label_of(self, slot: str) -> int:
        return dict(self.labels)[slot]

    def slot_of(self, label: int) -> str:
        for slot, lab in self.labels:
            if lab == label:
                return slot
        raise KeyError(label)

    def cross(self, label: int) -> "GeometricAlcove":
        slot = self.slot_of(label)
        labels = dict(self.labels)
        if self.up:
            dm, dn, new_slot = _UP_NEIGHBOR[slot]
            refl = _UP_REFLECT[slot]
        else:
            dm, dn, new_slot = _DOWN_NEIGHBOR[slot]
            refl = _DOWN_REFLECT[slot]
        new = {new_slot: label}
        for s, t in refl.items():
            new[t] = labels[s]
        return GeometricAlcove(self.m + dm, self.n + dn, not self.up, tuple(sorted(new.items())))

    @property
    def position(self) -> tuple:
        return (self.m, self.n, self.up)

    def centroid(self) -> tuple:
        """Centroid in real coordinates (floats; for drawing only)."""
        if self.up:
            pts = [(self.m, self.n), (self.m + 1, self.n), (self.m, self.n + 1)]
        else:
            pts = [(self.m + 1, self.n), (self.m, self.n + 1), (self.m + 1, self.n + 1)]
        xs = [a + b / 2 for a, b in pts]
        ys = [b * 3 ** 0.5 / 2 for _, b in pts]
        return sum(xs) / 3, sum(ys) / 3


ORIGIN = GeometricAlcove(0, 0, False, (("left", 3), ("right", 2), ("top", 1)))


def walk(word, start: GeometricAlcove = ORIGIN) -> GeometricAlcove:
    g = start
    for t in parse_word(word):
        g = g.cross(t)
    return g


def gallery(word, start: GeometricAlcove = ORIGIN) -> list:
    """All alcoves visited by ``word`` (start included)."""
    out = [start]
    for t in parse_word(word):
        out.append(out[-1].cross(t))
    return out


# -- regions ----------------------------------------------------------------

ROMAN = ("I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X", "XI", "XII")


@dataclass(frozen=True)
class RegionRow:
    """One row of the symmetry tables: the letter permutation theta sending
    regions (I, VII) to (ne_region, sw_region), the variable permutation
    alpha and the coordinate maps for even and odd alcoves."""

    ne_region: str
    sw_region: str
    theta: tuple  # permutation of letters as a dict-like tuple: theta[t-1]
    alpha: tuple
    even_map: object
    odd_map: object
    action: str


def _letter_perm(*cycles) -> tuple:
    perm = list(range(1, 4))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            perm[a - 1] = b
    return tuple(perm)


REGION_ROWS = (
    RegionRow("I", "VII", (1, 2, 3), tuple(range(6)),
              lambda i, j: (i, j), lambda i, j: (i, j), "identity"),
    RegionRow("II", "VIII", _letter_perm((1, 2)), from_cycles((0, 2), (1, 3), (4, 5)),
              lambda i, j: (j, i), lambda i, j: (j + 1, i - 1), "reflection (slope sqrt(3)/3)"),
    RegionRow("IX", "III", _letter_perm((1, 3, 2)), from_cycles((0, 5, 3, 1, 4, 2)),
              lambda i, j: (-i - j, i), lambda i, j: (-i - j, i - 1), "rotation 120 ccw"),
    RegionRow("X", "IV", _letter_perm((2, 3)), from_cycles((0, 1), (2, 4), (3, 5)),
              lambda i, j: (-i - j, j), lambda i, j: (-i - j, j), "reflection (vertical line)"),
    RegionRow("V", "XI", _letter_perm((1, 2, 3)), from_cycles((0, 3, 4), (1, 2, 5)),
              lambda i, j: (j, -i - j), lambda i, j: (j + 1, -i - j - 1), "rotation 120 cw"),
    RegionRow("VI", "XII", _letter_perm((1, 3)), from_cycles((0, 4), (1, 5)),
              lambda i, j: (i, -i - j), lambda i, j: (i, -i - j - 1), "reflection"),
)

_ROW_BY_REGION = {}
for _row in REGION_ROWS:
    _ROW_BY_REGION[_row.ne_region] = (_row, "NE")
    _ROW_BY_REGION[_row.sw_region] = (_row, "SW")


def apply_theta(theta: Sequence[int], word) -> tuple:
    return tuple(theta[t - 1] for t in parse_word(word))


def invert_theta(theta: Sequence[int]) -> tuple:
    inv = [0, 0, 0]
    for k, v in enumerate(theta):
        inv[v - 1] = k + 1
    return tuple(inv)


def region_maps(region: str) -> RegionRow:
    """Symmetry-table row for a region (I and VII give the identity row)."""
    try:
        return _ROW_BY_REGION[region][0]
    except KeyError:
        raise InvalidAlcove(f"unknown region {region!r}") from None


def region_kind(region: str) -> str:
    """'NE' for rotations/reflections of region I, 'SW' for those of VII."""
    return _ROW_BY_REGION[region][1]


# -- coordinates ------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Alcove:
    """Alcove coordinates: ``Alcove(i, j, odd=False)`` is ``(i,j)``, with
    ``odd=True`` it is ``{i,j}``."""

    i: int
    j: int
    odd: bool = False

    @property
    def m(self) -> int:
        return self.i

    @property
    def n(self) -> int:
        return self.j + 1 if self.odd else self.j

    @property
    def h(self) -> int:
        """Signed number of horizontal steps of the canonical path."""
        return 2 * self.i - 1 if self.odd else 2 * self.i

    @property
    def row(self) -> int:
        return self.n

    def is_origin(self) -> bool:
        return not self.odd and self.i == 0 and self.j == 0

    def __str__(self) -> str:
        return f"{{{self.i},{self.j}}}" if self.odd else f"({self.i},{self.j})"

    @property
    def region(self) -> str:
        return region_of(self)

    def label(self) -> str:
        return f"{self}@{self.region}"


def Even(i: int, j: int) -> Alcove:
    return Alcove(i, j, False)


def Odd(i: int, j: int) -> Alcove:
    return Alcove(i, j, True)


def from_hr(h: int, r: int) -> Alcove:
    """Alcove reached by ``2|r|`` diagonal and ``|h|`` horizontal steps."""
    if h % 2 == 0:
        return Alcove(h // 2, r, False)
    return Alcove((h + 1) // 2, r - 1, True)


def coordinates(g: GeometricAlcove) -> Alcove:
    if g.up:
        return Alcove(g.m, g.n - 1, True)
    return Alcove(g.m, g.n, False)


_ALCOVE_RE = re.compile(r"^\s*([({])\s*(-?\d+)\s*,\s*(-?\d+)\s*([)}])\s*(?:@\s*([IVX]+))?\s*$")


def parse_alcove(text: str) -> Alcove:
    """Parse ``"(i,j)"`` or ``"{i,j}"`` (an optional ``@REGION`` suffix is checked)."""
    m = _ALCOVE_RE.match(text)
    if not m or {"(": ")", "{": "}"}[m.group(1)] != m.group(4):
        raise InvalidAlcove(f"cannot parse alcove {text!r}")
    a = Alcove(int(m.group(2)), int(m.group(3)), m.group(1) == "{")
    if m.group(5) and m.group(5) != a.region:
        raise InvalidAlcove(f"{a} lies in region {a.region}, not {m.group(5)}")
    return a


# -- canonical paths ----------------------------------------------------------


@lru_cache(maxsize=None)
def _row_base(r: int) -> tuple:
    """Diagonal part: 2|r| letters along ...123123... (up) or 321321... (down)."""
    cyc = (1, 2, 3) if r >= 0 else (3, 2, 1)
    return tuple(cyc[k % 3] for k in range(2 * abs(r)))


def canonical_path(a: Alcove) -> tuple:
    """Diagonal component first, then the horizontal one, as a letter tuple."""
    base = _row_base(a.row)
    g = walk(base)
    letters = list(base)
    h = a.h
    for _ in range(abs(h)):
        slot = "right" if h > 0 else "left"
        t = g.label_of(slot)
        letters.append(t)
        g = g.cross(t)
    return tuple(letters)


def word_str(word) -> str:
    return "".join(str(t) for t in parse_word(word))


# -- region membership ----------------------------------------------------------


def in_ne_cone(a: Alcove) -> bool:
    return 0 <= a.h <= 2 * a.row


def in_sw_cone(a: Alcove) -> bool:
    return 2 * a.row - 1 <= a.h <= -1


def regions_containing(a: Alcove) -> list:
    """All regions (by name) whose alcove set contains ``a``."""
    path = canonical_path(a)
    found = []
    for row in REGION_ROWS:
        pre = coordinates(walk(apply_theta(invert_theta(row.theta), path)))
        if in_ne_cone(pre):
            found.append(row.ne_region)
        if in_sw_cone(pre):
            found.append(row.sw_region)
    return sorted(set(found), key=ROMAN.index)


def region_of(a: Alcove) -> str:
    """Region with overlaps resolved towards the odd-numbered region."""
    found = regions_containing(a)
    if not found:
        raise InvalidAlcove(f"{a} is not covered by any region")
    odd_numbered = [r for r in found if ROMAN.index(r) % 2 == 0]
    return (odd_numbered or found)[0]


def preimage(a: Alcove, region: str | None = None):
    """``(row, cone_alcove)`` with ``cone_alcove`` in region I or VII such that
    theta maps the canonical path of ``cone_alcove`` to a path reaching ``a``."""
    region = region or region_of(a)
    row = region_maps(region)
    pre = coordinates(walk(apply_theta(invert_theta(row.theta), canonical_path(a))))
    return row, pre
