"""Factored (tau-presentation) form of clusters reached by tau-words.

Every cluster variable produced by a tau-word has the shape
``x_m * A**a * B**b * C**c`` where

    A = (x2 x4 + x3 x5) / (x0 x1)
    B = (x1 x4 + x0 x5) / (x2 x3)
    C = (x0 x2 + x1 x3) / (x4 x5)

and the two vertices of an antipodal pair share ``(a, b, c)``. This module
tracks those exponents, evaluates the closed formulas for alcoves and expands
presentations back into Laurent polynomials.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .alcove import (
    Alcove,
    canonical_path,
    from_hr,
    preimage,
    region_kind,
    region_of,
)
from .cluster import parse_word
from .laurent import LaurentPolynomial, invert_permutation, lp_div_exact, lp_permute, x


class NegativeExponent(ArithmeticError):
    pass


class NonIntegralExponent(ArithmeticError):
    pass


PAIRS = ((0, 1), (2, 3), (4, 5))
BASE_NAMES = "ABC"
# numerator monomial pairs of A, B, C
_NUMERATORS = (((2, 4), (3, 5)), ((1, 4), (0, 5)), ((0, 2), (1, 3)))


@lru_cache(maxsize=1)
def abc_bases() -> tuple:
    """``(A, B, C)`` as Laurent polynomials."""
    out = []
    for k, ((p, q), (r, s)) in enumerate(_NUMERATORS):
        lo, hi = PAIRS[k]
        out.append(lp_div_exact(x(p) * x(q) + x(r) * x(s), x(lo) * x(hi)))
    return tuple(out)


@lru_cache(maxsize=4096)
def _power(k: int, e: int) -> LaurentPolynomial:
    if e == 0:
        return LaurentPolynomial.one()
    if e == 1:
        return abc_bases()[k]
    half = _power(k, e // 2)
    sq = half * half
    return sq * abc_bases()[k] if e % 2 else sq


def abc_monomial(a: int, b: int, c: int) -> LaurentPolynomial:
    return _power(0, a) * _power(1, b) * _power(2, c)


@dataclass(frozen=True)
class TauPresentation:
    """Leading index for the even vertex of each pair plus the pair's triple.

    ``leads[p]`` is ``2p`` or ``2p + 1``; the odd vertex of the pair carries
    the other index. ``triples[p]`` is ``(a, b, c)``.
    """

    leads: tuple = (0, 2, 4)
    triples: tuple = ((0, 0, 0),) * 3

    @classmethod
    def initial(cls) -> "TauPresentation":
        return cls()

    def entry(self, k: int) -> tuple:
        """``(leading index, a, b, c)`` of the variable at vertex ``k``."""
        p = k // 2
        lead = self.leads[p] if k % 2 == 0 else self.leads[p] ^ 1
        return (lead,) + tuple(self.triples[p])

    def entries(self) -> list:
        return [self.entry(k) for k in range(6)]

    def unordered(self) -> tuple:
        return tuple(sorted(self.entries()))

    def degree(self, k: int) -> int:
        return sum(self.triples[k // 2])

    def to_json(self) -> dict:
        return {f"pair{p}": [self.leads[p], *self.triples[p]] for p in range(3)}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data: dict) -> "TauPresentation":
        rows = [data[f"pair{p}"] for p in range(3)]
        return cls(tuple(r[0] for r in rows), tuple(tuple(r[1:]) for r in rows))

    def __str__(self) -> str:
        return ", ".join(pretty(*self.entry(k)) for k in range(6))


def pretty(lead: int, a: int, b: int, c: int) -> str:
    return f"x{lead}·A^{a}B^{b}C^{c}"


def exponent_step(pres: TauPresentation, t: int) -> TauPresentation:
    """Apply ``tau_t`` to a presentation.

    The mutated pair gets ``(others summed) - (own) + e_t`` and its leading
    indices swap.
    """
    if t not in (1, 2, 3):
        raise ValueError(f"tau index must be 1, 2 or 3, got {t!r}")
    k = t - 1
    tr = pres.triples
    o1, o2 = [q for q in range(3) if q != k]
    new = [tr[o1][m] + tr[o2][m] - tr[k][m] for m in range(3)]
    new[k] += 1
    if min(new) < 0:
        raise NegativeExponent(f"negative exponent after tau_{t}: {new}")
    triples = tr[:k] + (tuple(new),) + tr[k + 1:]
    leads = pres.leads[:k] + (pres.leads[k] ^ 1,) + pres.leads[k + 1:]
    return TauPresentation(leads, triples)


def run_presentation(word, pres: TauPresentation | None = None) -> TauPresentation:
    pres = TauPresentation.initial() if pres is None else pres
    for t in parse_word(word):
        pres = exponent_step(pres, t)
    return pres


def _integral(v: Fraction) -> int:
    if v.denominator != 1:
        raise NonIntegralExponent(f"non-integral exponent {v}")
    return int(v)


def beta_power(n: int) -> TauPresentation:
    """Presentation after ``(123)^n`` (``(321)^-n`` when ``n < 0``)."""
    n = Fraction(n)
    if n.numerator % 2 == 0:
        e0 = (3 * n * n / 4, (3 * n * n - 2 * n) / 4, (3 * n * n - 4 * n) / 4)
        e2 = ((3 * n * n + 2 * n) / 4, 3 * n * n / 4, (3 * n * n - 2 * n) / 4)
        e4 = ((3 * n * n + 4 * n) / 4, (3 * n * n + 2 * n) / 4, 3 * n * n / 4)
        leads = (0, 2, 4)
    else:
        e0 = ((3 * n * n + 1) / 4, (3 * n * n - 2 * n - 1) / 4, (3 * n * n - 4 * n + 1) / 4)
        e2 = ((3 * n * n + 2 * n - 1) / 4, (3 * n * n + 1) / 4, (3 * n * n - 2 * n - 1) / 4)
        e4 = ((3 * n * n + 4 * n + 1) / 4, (3 * n * n + 2 * n - 1) / 4, (3 * n * n + 1) / 4)
        leads = (1, 3, 5)
    triples = tuple(tuple(_integral(v) for v in e) for e in (e0, e2, e4))
    return TauPresentation(leads, triples)


# -- six-case alcove formulas ---------------------------------------------------
#
# Inputs use the doubled horizontal coordinate ``i`` (= h, the signed number
# of horizontal steps) and the row ``j``. With i = 0 mod 6 the alcove is the
# even alcove (i/2, j); with i = 3 mod 6 it is the odd alcove {(i+1)/2, j-1}.
# Congruences are taken on the signed values (Python's ``%``).


def _even_case(i: Fraction, j: Fraction, jr: int):
    q = i * i / 12 + i * j / 6 + j * j / 3
    if jr == 0:
        return (
            (0, q, i / 6 + q - j / 3, -i / 6 + q - 2 * j / 3),
            (2, q - i / 6 + j / 3, q, -i / 3 + q - j / 3),
            (4, q + i / 6 + 2 * j / 3, i / 3 + q + j / 3, q),
        )
    if jr == 1:
        return (
            (0, (i * i + 2 * i * (j - 1) + 4 * (1 + j + j * j)) / 12,
             (-4 + i * i + 2 * i * j + 4 * j * j) / 12,
             (i * i + 2 * i * (j - 2) + 4 * (j - 1) * j) / 12),
            (2, (i * i + 2 * i * (1 + j) + 4 * j * (2 + j)) / 12,
             (i * i + 2 * i * (2 + j) + 4 * (1 + j + j * j)) / 12,
             (-4 + i * i + 2 * i * j + 4 * j * j) / 12),
            (4, (8 + i * i + 2 * i * j + 4 * j * j) / 12 - 1,
             (i * i + 4 * (j - 1) * j + 2 * i * (1 + j)) / 12,
             (i * i + 2 * i * (j - 1) + 4 * (j - 1) ** 2) / 12),
        )
    return (
        (0, (i * i + 2 * i * (1 + j) + 4 * (1 + j) ** 2) / 12,
         (i * i + 4 * j * (1 + j) + 2 * i * (2 + j)) / 12,
         (-4 + i * i + 2 * i * j + 4 * j * j) / 12),
        (2, (-4 + i * i + 2 * i * j + 4 * j * j) / 12,
         (i * i + 2 * i * (1 + j) + 4 * (1 - j + j * j)) / 12,
         (i * i + 2 * i * (j - 1) + 4 * (j - 2) * j) / 12),
        (4, (i * i + 2 * i * (j - 1) + 4 * j * (1 + j)) / 12,
         (-4 + i * i + 2 * i * j + 4 * j * j) / 12,
         (i * i + 2 * i * (j - 2) + 4 * (1 - j + j * j)) / 12),
    )


def _odd_case(i: Fraction, j: Fraction, jr: int):
    q = i * i / 12 + i * j / 6 + j * j / 3
    f = Fraction(1, 4)
    if jr == 0:
        return (
            (1, f + q + j / 2, -f + i / 6 + j / 6 + q, -f - i / 6 - j / 6 + q),
            (3, -f - i / 6 - j / 6 + q, f + q - j / 2, f - i / 3 - 5 * j / 6 + q),
            (5, -f + i / 6 + j / 6 + q, f + i / 3 - j / 6 + q, f + q - j / 2),
        )
    if jr == 1:
        return (
            (1, (1 + i * i + 2 * i * (j - 1) - 2 * j + 4 * j * j) / 12,
             (-1 + i * i - 6 * j + 2 * i * j + 4 * j * j) / 12,
             (3 + i * i + 2 * i * (j - 2) - 10 * j + 4 * j * j) / 12),
            (3, (-3 + i * i + 2 * j + 4 * j * j + 2 * i * (1 + j)) / 12,
             (7 + i * i - 2 * j + 4 * j * j + 2 * i * (2 + j)) / 12,
             (-1 + i * i - 6 * j + 2 * i * j + 4 * j * j) / 12),
            (5, (11 + i * i + 6 * j + 2 * i * j + 4 * j * j) / 12 - 1,
             (-3 + i * i + 2 * j + 4 * j * j + 2 * i * (1 + j)) / 12,
             (1 + i * i + 2 * i * (j - 1) - 2 * j + 4 * j * j) / 12),
        )
    return (
        (1, (1 + i * i + 2 * j + 4 * j * j + 2 * i * (1 + j)) / 12,
         (3 + i * i - 2 * j + 4 * j * j + 2 * i * (2 + j)) / 12,
         (-1 + i * i - 6 * j + 2 * i * j + 4 * j * j) / 12),
        (3, (-1 + i * i + 6 * j + 2 * i * j + 4 * j * j) / 12,
         (1 + i * i + 2 * j + 4 * j * j + 2 * i * (1 + j)) / 12,
         (-3 + i * i + 2 * i * (j - 1) - 2 * j + 4 * j * j) / 12),
        (5, (-3 + i * i + 2 * i * (j - 1) - 2 * j + 4 * j * j) / 12,
         (-1 + i * i - 6 * j + 2 * i * j + 4 * j * j) / 12,
         (7 + i * i + 2 * i * (j - 2) - 10 * j + 4 * j * j) / 12),
    )


def formula_entries(i: int, j: int, check: bool = True) -> tuple:
    """Raw ``(lead, a, b, c)`` rows (exact rationals) at doubled coordinate ``i``.

    Raises ``ValueError`` unless ``i % 3 == 0``. With ``check`` the exponents
    must be nonnegative integers.
    """
    if i % 3:
        raise ValueError(f"formulas cover i = 0 mod 3 only, got i={i}")
    fi, fj = Fraction(i), Fraction(j)
    rows = _even_case(fi, fj, j % 3) if i % 6 == 0 else _odd_case(fi, fj, j % 3)
    if check:
        for row in rows:
            for v in row[1:]:
                if v.denominator != 1:
                    raise NonIntegralExponent(f"exponent {v} at i={i}, j={j}")
                if v < 0:
                    raise NegativeExponent(f"exponent {v} at i={i}, j={j}")
    return rows


def _letter_parity(word) -> tuple:
    counts = [0, 0, 0]
    for t in parse_word(word):
        counts[t - 1] += 1
    return tuple(c % 2 for c in counts)


def formula_presentation(h: int, r: int) -> TauPresentation:
    """Ordered presentation at the alcove ``(h, r)`` with ``h % 3 == 0``.

    The formulas fix the unordered cluster; the order inside each pair
    follows from how often the canonical path used the pair's letter.
    """
    rows = formula_entries(h, r)
    triples = [None] * 3
    for lead, a, b, c in rows:
        triples[lead // 2] = (int(a), int(b), int(c))
    par = _letter_parity(canonical_path(from_hr(h, r)))
    leads = tuple(2 * p + par[p] for p in range(3))
    return TauPresentation(leads, tuple(triples))


def _direct(a: Alcove) -> TauPresentation:
    h, r = a.h, a.row
    base_h = 3 * (abs(h) // 3) * (1 if h >= 0 else -1)
    pres = formula_presentation(base_h, r)
    path = canonical_path(a)
    rest = path[len(path) - (abs(h) - abs(base_h)):] if abs(h) != abs(base_h) else ()
    return run_presentation(rest, pres)


def act_alpha(pres: TauPresentation, alpha) -> TauPresentation:
    """Presentation of the seed obtained by the variable permutation ``alpha``.

    ``alpha`` must permute the three bases ``A, B, C`` (true for the tiling
    symmetries); entry ``k`` of the result is ``alpha`` applied to entry
    ``alpha^-1(k)``.
    """
    base_image = _base_permutation(tuple(alpha))
    inv = invert_permutation(alpha)
    leads = [0, 0, 0]
    triples = [None, None, None]
    for p in range(3):
        lead, *abc = pres.entry(inv[2 * p])
        new = [0, 0, 0]
        for src, e in enumerate(abc):
            new[base_image[src]] = e
        leads[p] = alpha[lead]
        triples[p] = tuple(new)
    return TauPresentation(tuple(leads), tuple(triples))


@lru_cache(maxsize=None)
def _base_permutation(alpha: tuple) -> tuple:
    bases = abc_bases()
    out = []
    for b in bases:
        img = lp_permute(b, alpha)
        try:
            out.append(bases.index(img))
        except ValueError:
            raise ValueError(f"{alpha} does not permute A, B, C") from None
    return tuple(out)


def cluster_at(a: Alcove, method: str = "conjugate") -> TauPresentation:
    """Presentation of the cluster attached to ``a``.

    ``method="conjugate"`` evaluates the formulas on the region I/VII
    preimage and transports the result with the region's ``alpha``;
    ``method="direct"`` evaluates them at ``a`` itself (the formulas hold on
    the whole lattice). Both agree with the mutation engine as unordered
    clusters.
    """
    if method == "direct":
        return _direct(a)
    if method != "conjugate":
        raise ValueError(f"unknown method {method!r}")
    region = region_of(a)
    row, pre = preimage(a, region)
    base = _direct(pre)
    if row.ne_region == "I":
        return base
    return act_alpha(base, row.alpha)


def expand(pres: TauPresentation) -> tuple:
    """The six Laurent polynomials, ordered by vertex."""
    out = []
    for p in range(3):
        body = abc_monomial(*pres.triples[p])
        out.append(x(pres.leads[p]) * body)
        out.append(x(pres.leads[p] ^ 1) * body)
    return tuple(out)


def expand_entry(lead: int, a: int, b: int, c: int) -> LaurentPolynomial:
    return x(lead) * abc_monomial(a, b, c)


def factor(v: LaurentPolynomial, lead: int | None = None):
    """Recover ``(lead, a, b, c)`` with ``v == x_lead A^a B^b C^c`` or None.

    The exponents are read off the evaluation at all-ones (``2^(a+b+c)``)
    and at the points where a single base doubles; the candidate is then
    confirmed by exact expansion.
    """
    ones = (1,) * 6
    total = v.evaluate(ones)
    if total <= 0 or total.denominator != 1:
        return None
    n = int(total)
    if n & (n - 1):
        return None
    deg = n.bit_length() - 1
    leads = [lead] if lead is not None else range(6)
    for ld in leads:
        for a in range(deg + 1):
            for b in range(deg + 1 - a):
                c = deg - a - b
                if expand_entry(ld, a, b, c) == v:
                    return (ld, a, b, c)
    return None


__all__ = [
    "NegativeExponent",
    "NonIntegralExponent",
    "TauPresentation",
    "abc_bases",
    "abc_monomial",
    "act_alpha",
    "beta_power",
    "cluster_at",
    "exponent_step",
    "expand",
    "expand_entry",
    "factor",
    "formula_entries",
    "formula_presentation",
    "pretty",
    "region_kind",
    "run_presentation",
]
