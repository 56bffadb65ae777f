"""Instance checks tying mutation, closed forms and castles together.

Every check returns a :class:`VerificationReport`. Reports serialize to one
JSON object per line and never hide a failure.
"""

from __future__ import annotations

import hashlib
import json
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import castle as cs
from . import matching as mt
from .alcove import (
    Alcove,
    REGION_ROWS,
    apply_theta,
    canonical_path,
    coordinates,
    in_ne_cone,
    in_sw_cone,
    preimage,
    region_maps,
    region_of,
    walk,
    word_str,
)
from .closed_form import abc_bases, expand_entry, pretty, run_presentation
from .cluster import SeedCache, act_symmetry, evaluate_word
from .laurent import LaurentPolynomial, lp_eval, to_text
from .tiling import isometry_for

EXACT = "exact"
FINGERPRINT = "fingerprint"
PRIME = 2 ** 61 - 1


@dataclass
class VerificationReport:
    """Outcome of one check.

    ``values`` holds what was compared (digests of exact polynomials, or the
    evaluations in fingerprint mode). ``seconds`` is only serialized on
    request so that reports stay byte-identical between runs.
    """

    check: str
    subject: str
    mode: str
    verdict: str
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_json(self, timing: bool = False) -> dict:
        out = {"check": self.check, "subject": self.subject, "mode": self.mode,
               "verdict": self.verdict, **self.details}
        if self.mode == FINGERPRINT and self.passed:
            out["probabilistic"] = True
        if timing:
            out["seconds"] = round(self.seconds, 4)
        return out

    def dumps(self, timing: bool = False) -> str:
        return json.dumps(self.to_json(timing), sort_keys=True, default=str)


def digest(p: LaurentPolynomial) -> str:
    return hashlib.sha256(to_text(p).encode()).hexdigest()[:16]


def random_points(seed: int, n: int = 3) -> list:
    """``n`` points of six positive rationals with numerators and
    denominators below a large prime."""
    rng = random.Random(seed)
    return [tuple(Fraction(rng.randrange(1, PRIME), rng.randrange(1, PRIME)) for _ in range(6))
            for _ in range(n)]


# -- castle assignment -------------------------------------------------------------


@dataclass(frozen=True)
class Assignment:
    """Which castle pairs with which variable at an alcove.

    ``cone_tuple`` is the castle ``G0`` for the preimage alcove in region I or
    VII; ``cone_sigma`` says whether ``y0 = c(sigma G0)`` there. ``alpha`` is
    the region's label permutation and ``twist`` whether ``y`` pairs with
    ``alpha(y0')`` instead of ``alpha(y0)``.
    """

    alcove: Alcove
    region: str
    cone_alcove: Alcove
    word: tuple
    cone_word: tuple
    cone_tuple: cs.HexTuple
    cone_sigma: bool
    alpha: tuple
    twist: bool

    @property
    def name(self) -> str:
        t = self.cone_tuple
        base = f"{'sigma ' if self.cone_sigma else ''}{t}"
        if self.alpha == tuple(range(6)):
            return base
        return f"{'sigma ' if self.twist else ''}alpha{list(self.alpha)} {base}"

    def cone_castles(self) -> tuple:
        """``(G0, sigma G0)`` ordered as ``(castle of y0, castle of y0')``."""
        g = cs.trace(self.cone_tuple)
        gs = cs.trace(self.cone_tuple.sigma())
        return (gs, g) if self.cone_sigma else (g, gs)

    def castles(self) -> tuple:
        """``(G, sigma G)`` with ``y = c(G)`` and ``y' = c(sigma G)``."""
        gy, gyp = self.cone_castles()
        if self.alpha == tuple(range(6)):
            return gy, gyp
        if self.twist:
            gy, gyp = gyp, gy
        iso = isometry_for(self.alpha)
        return gy.map(iso), gyp.map(iso)


def cone_castle(a: Alcove) -> tuple:
    """``(tuple, sigma_flag)`` for an alcove of region I or VII.

    NE even ``(i,j)``: ``gamma_i^j``, plain unless ``i = 0 mod 3``.
    NE odd ``{i,j}``: ``gamma_i^j``, plain iff ``i = 2 mod 3``.
    SW odd ``{i,j}``: ``gamma~_i^j``, plain unless ``-i = 0 mod 3``.
    SW even ``(i,j)``: ``gamma~_i^j``, plain iff ``-i = 2 mod 3``.
    """
    if in_ne_cone(a):
        t = cs.ne_tuple(a.i, a.j)
        plain = (a.i % 3 == 2) if a.odd else (a.i % 3 != 0)
    elif in_sw_cone(a):
        t = cs.sw_tuple(a.i, a.j)
        plain = ((-a.i) % 3 != 0) if a.odd else ((-a.i) % 3 == 2)
    else:
        raise cs.OutOfDomain(f"{a} is not in the NE or SW cone")
    return t, not plain


def assign(a: Alcove, cache: SeedCache | None = None) -> Assignment:
    if a.is_origin():
        raise ValueError("the origin alcove carries no mutated variables")
    region = region_of(a)
    row, pre = preimage(a, region)
    cone_word = canonical_path(pre)
    word = apply_theta(row.theta, cone_word)
    if coordinates(walk(word)) != a:
        raise AssertionError(f"theta image of the path to {pre} misses {a}")
    t, sig = cone_castle(pre)
    # alpha carries the ordered seed of cone_word to that of word, so y sits
    # at alpha(2 t0 - 2) where t0 is the last letter of cone_word
    t0, t1 = cone_word[-1], word[-1]
    twist = row.alpha[2 * t0 - 2] != 2 * t1 - 2
    return Assignment(a, region, pre, word, cone_word, t, sig, row.alpha, twist)


# -- checks ----------------------------------------------------------------------


_CACHE = SeedCache()


def _presentation_value(entry, point) -> Fraction:
    lead, a, b, c = entry
    A, B, C = (lp_eval(base, point) for base in abc_bases())
    return Fraction(point[lead]) * A ** a * B ** b * C ** c


def verify_main(a: Alcove, mode: str = EXACT, seed: int = 0, points: int = 3,
                cap: int = 4096) -> VerificationReport:
    """``y = c(G)`` and ``y' = c(sigma G)`` at an alcove.

    Also compares against the factored form tracked along the same word and
    checks that both castles have ``2^(a+b+c)`` perfect matchings.
    """
    start = time.perf_counter()
    asg = assign(a)
    g, gs = asg.castles()
    k = asg.word[-1]
    pres = run_presentation(asg.word)
    entries = (pres.entry(2 * k - 2), pres.entry(2 * k - 1))
    details = {
        "alcove": str(a),
        "region": asg.region,
        "word": word_str(asg.word),
        "castle": asg.name,
        "cone_alcove": str(asg.cone_alcove),
        "formula": [pretty(*e) for e in entries],
        "vertices": len(g.vertices),
    }
    problems = []
    if mode == EXACT:
        y, yp = _CACHE.last_pair(asg.word)
        cy, cyp = mt.c_value(g), mt.c_value(gs)
        fy, fyp = expand_entry(*entries[0]), expand_entry(*entries[1])
        details["engine"] = [digest(y), digest(yp)]
        details["c_value"] = [digest(cy), digest(cyp)]
        if cy != y:
            problems.append("y != c(G)")
        if cyp != yp:
            problems.append("y' != c(sigma G)")
        if fy != y or fyp != yp:
            problems.append("factored form differs from engine")
        counts = [mt.count(g, cap), mt.count(gs, cap)]
    elif mode == FINGERPRINT:
        pts = random_points(seed, points)
        vals = []
        for p in pts:
            _, (y, yp) = evaluate_word(asg.word, p)
            cy, cyp = mt.c_fingerprint(g, p), mt.c_fingerprint(gs, p)
            fy, fyp = _presentation_value(entries[0], p), _presentation_value(entries[1], p)
            vals.append([str(y), str(yp)])
            if cy != y:
                problems.append("y != c(G) at a sample point")
            if cyp != yp:
                problems.append("y' != c(sigma G) at a sample point")
            if fy != y or fyp != yp:
                problems.append("factored form differs from engine at a sample point")
        details["points_seed"] = seed
        details["engine_digest"] = hashlib.sha256(json.dumps(vals).encode()).hexdigest()[:16]
        counts = [int(mt.fingerprint(g, (1,) * 6)), int(mt.fingerprint(gs, (1,) * 6))]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    expected = [2 ** (e[1] + e[2] + e[3]) for e in entries]
    details["matchings"] = counts
    if counts != expected:
        problems.append(f"matching counts {counts} != {expected}")
    details["problems"] = sorted(set(problems))
    return VerificationReport("main", str(a), mode, "fail" if problems else "pass",
                              details, time.perf_counter() - start)


def verify_oddsigma(i: int, j: int) -> VerificationReport:
    """Ordered pairs at ``(i,j)`` and ``{i,j}`` agree, swapped iff ``i = 1 mod 3``."""
    start = time.perf_counter()
    even, odd = Alcove(i, j, False), Alcove(i, j, True)
    if not (in_ne_cone(even) and in_ne_cone(odd)):
        raise cs.OutOfDomain(f"({i},{j}) and {{{i},{j}}} must both lie in the NE cone")
    y, yp = _CACHE.last_pair(canonical_path(even))
    z, zp = _CACHE.last_pair(canonical_path(odd))
    swapped = i % 3 == 1
    want = (zp, z) if swapped else (z, zp)
    ok = (y, yp) == want
    details = {"swapped": swapped, "engine_even": [digest(y), digest(yp)],
               "engine_odd": [digest(z), digest(zp)], "unordered_equal": {y, yp} == {z, zp}}
    return VerificationReport("oddsigma", f"({i},{j})", EXACT, "pass" if ok else "fail",
                              details, time.perf_counter() - start)


def verify_symmetry(region: str, words=None, depth: int = 3) -> VerificationReport:
    """``alpha`` applied to the seed after ``theta^-1(P)`` gives the seed after ``P``.

    Clusters must agree entry by entry. Exchange matrices must agree up to a
    global sign: reflections reverse every arrow of the quiver, which does
    not change any mutation.

    Parameters
    ----------
    region : str
        Any region of the row to check.
    words : iterable of words, optional
        Words ``P`` to test; defaults to theta-images of the canonical paths
        of all cone alcoves with ``|i|, |j| <= depth``.
    """
    start = time.perf_counter()
    row = region_maps(region)
    inv = [0, 0, 0]
    for k, v in enumerate(row.theta):
        inv[v - 1] = k + 1
    if words is None:
        words = []
        for i in range(-depth, depth + 1):
            for j in range(-depth, depth + 1):
                for odd in (False, True):
                    a = Alcove(i, j, odd)
                    if not a.is_origin() and (in_ne_cone(a) or in_sw_cone(a)):
                        words.append(apply_theta(row.theta, canonical_path(a)))
    bad = []
    orientation = set()
    words = list(words)
    for w in words:
        pre = apply_theta(inv, w)
        lhs = act_symmetry(_CACHE.seed(pre), row.alpha)
        rhs = _CACHE.seed(w)
        negated = tuple(tuple(-v for v in r) for r in rhs.matrix)
        if lhs.matrix == rhs.matrix:
            orientation.add("preserved")
        elif lhs.matrix == negated:
            orientation.add("reversed")
        else:
            bad.append(word_str(w))
            continue
        if lhs.vars != rhs.vars:
            bad.append(word_str(w))
    details = {"row": f"({row.ne_region},{row.sw_region})", "alpha": list(row.alpha),
               "words": len(words), "mismatches": bad[:10], "orientation": sorted(orientation)}
    return VerificationReport("symmetry", region, EXACT, "fail" if bad else "pass",
                              details, time.perf_counter() - start)


def _castle(kind: str, i: int, j: int, sigma: bool = False):
    """Castle with the empty graph allowed at ``(0, 0)``."""
    if kind == "NE" and (i, j) == (0, 0):
        return cs.trace(cs.empty_tuple())
    return cs.ne_castle(i, j, sigma) if kind == "NE" else cs.sw_castle(i, j, sigma)


def _cover(kind: str, i: int, j: int, sigma: bool = False) -> LaurentPolynomial:
    # the empty castle sigma gamma_0^0 is treated as covering one face 4;
    # with m = 1 the monomial identity at i = j = 1 is off by exactly x4
    if kind == "NE" and (i, j) == (0, 0) and sigma:
        return LaurentPolynomial.monomial((0, 0, 0, 0, 1, 0))
    return mt.covering_monomial(_castle(kind, i, j, sigma))


def kuo_terms(kind: str, i: int, j: int) -> tuple:
    """``(G, C, (Q1a, Q1b), (Q2a, Q2b))``: the castles in a condensation identity.

    NE, ``1 <= i <= j``::

        w(g_i^j) w(s g_{i-1}^{j-1}) = (w(s g_{i-1}^j) w(g_i^{j-1}) + w(g_{i-1}^j) w(s g_i^{j-1})) / x0..x5

    SW, ``-1 >= i > j``, the same shape with ``i-1, j-1`` replaced by
    ``i+1, j+1``. Each castle is given as ``(i, j, sigma)``.
    """
    d = -1 if kind == "NE" else 1
    if kind == "NE" and not 1 <= i <= j:
        raise cs.OutOfDomain(f"NE condensation needs 1 <= i <= j, got ({i}, {j})")
    if kind == "SW" and not -1 >= i > j:
        raise cs.OutOfDomain(f"SW condensation needs -1 >= i > j, got ({i}, {j})")
    return ((i, j, False), (i + d, j + d, True),
            ((i + d, j, True), (i, j + d, False)),
            ((i + d, j, False), (i, j + d, True)))


def verify_kuo(kind: str, i: int, j: int, mode: str = EXACT, seed: int = 0,
               points: int = 3) -> VerificationReport:
    """Condensation weight identity and covering-monomial identity for one
    castle, plus the frame conditions where a frame is defined."""
    start = time.perf_counter()
    g, c, (a1, a2), (b1, b2) = kuo_terms(kind, i, j)
    graphs = {k: _castle(kind, *k) for k in (g, c, a1, a2, b1, b2)}
    problems = []
    every = LaurentPolynomial.monomial((1,) * 6)
    if mode == EXACT:
        w = {k: mt.weight(v) for k, v in graphs.items()}
        if w[g] * w[c] * every != w[a1] * w[a2] + w[b1] * w[b2]:
            problems.append("weight identity")
    elif mode == FINGERPRINT:
        for p in random_points(seed, points):
            w = {k: mt.fingerprint(v, p) for k, v in graphs.items()}
            prod = 1
            for x in p:
                prod *= x
            if w[g] * w[c] * prod != w[a1] * w[a2] + w[b1] * w[b2]:
                problems.append("weight identity at a sample point")
    else:
        raise ValueError(f"unknown mode {mode!r}")
    m = {k: _cover(kind, *k) for k in graphs}
    lhs = m[g] * m[c]
    if lhs != every * m[a1] * m[a2] or lhs != every * m[b1] * m[b2]:
        problems.append("covering monomial identity")
    frame = None
    try:
        frame = cs.kuo_frame_ne(i, j) if kind == "NE" else cs.kuo_frame_sw(i, j)
    except cs.OutOfDomain:
        pass
    if frame is not None:
        problems += frame.check()
    details = {"kind": kind, "frame": frame is not None, "problems": sorted(set(problems)),
               "vertices": len(graphs[g].vertices)}
    if mode == FINGERPRINT:
        details["points_seed"] = seed
    return VerificationReport("kuo", f"{kind}({i},{j})", mode, "fail" if problems else "pass",
                              details, time.perf_counter() - start)


def verify_dragon(n: int) -> VerificationReport:
    """``y_n = c(D_{n/2})`` for the ``n``-th variable along ``123123...``."""
    start = time.perf_counter()
    word = tuple((k % 3) + 1 for k in range(n))
    y, _ = _CACHE.last_pair(word)
    d = cs.dragon(n)
    ok = mt.c_value(d) == y
    details = {"word": word_str(word), "vertices": len(d.vertices), "engine": digest(y)}
    return VerificationReport("dragon", f"D_{Fraction(n, 2)}", EXACT, "pass" if ok else "fail",
                              details, time.perf_counter() - start)


# -- batches -------------------------------------------------------------------------


def alcoves_in_range(n: int) -> list:
    """All alcoves other than the origin with ``|i|, |j| <= n``, sorted."""
    out = []
    for i in range(-n, n + 1):
        for j in range(-n, n + 1):
            for odd in (False, True):
                a = Alcove(i, j, odd)
                if not a.is_origin():
                    out.append(a)
    return sorted(out)


def image_alcoves(cone: list) -> list:
    """The cone alcoves together with their images in every other region."""
    out = set()
    for pre in cone:
        path = canonical_path(pre)
        for row in REGION_ROWS:
            out.add(coordinates(walk(apply_theta(row.theta, path))))
    return sorted(out)


def exact_tier() -> list:
    """Cone alcoves whose castles have NE indices in ``[0, 2]`` or SW indices
    in ``[-3, 0]``, together with their images in all other regions."""
    cone = []
    for a in alcoves_in_range(3):
        if in_ne_cone(a) and max(a.i, a.j) <= 2:
            cone.append(a)
        elif in_sw_cone(a) and min(a.i, a.j) >= -3:
            cone.append(a)
    return image_alcoves(cone)


def fingerprint_tier(n: int = 4) -> list:
    return alcoves_in_range(n)


def _job(args):
    a, mode, seed, cap = args
    return verify_main(a, mode, seed, cap=cap)


def pool_size() -> int:
    try:
        return max(1, int(os.environ.get("DP3_THREADS", "1")))
    except ValueError:
        return 1


def verify_many(alcoves, mode: str = EXACT, seed: int = 0, workers: int | None = None,
                cap: int = 4096) -> list:
    """Run :func:`verify_main` on many alcoves; reports come back in input order."""
    alcoves = list(alcoves)
    workers = pool_size() if workers is None else workers
    jobs = [(a, mode, seed, cap) for a in alcoves]
    if workers <= 1 or len(jobs) <= 1:
        return [_job(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(_job, jobs, chunksize=1))
