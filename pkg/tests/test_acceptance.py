"""The ten acceptance criteria, each timed against its limit.

Every test prints one ``PASS``/``FAIL`` line. Run with ``DP3_THREADS=n`` to
spread the verification tiers over ``n`` processes.
"""

import time
from contextlib import contextmanager

from dp3 import castle as cs
from dp3.alcove import Alcove, Even, canonical_path
from dp3.castle import CastleGraph, induced
from dp3.closed_form import (
    abc_bases, beta_power, cluster_at, expand, factor, run_presentation,
)
from dp3.cluster import SeedCache, apply_tau, apply_tau_prime, initial_seed
from dp3.laurent import LaurentPolynomial, x
from dp3.matching import c_value, count, covering_exponents
from dp3.verify import (
    EXACT, FINGERPRINT, assign, exact_tier, fingerprint_tier, verify_dragon, verify_kuo,
    verify_main, verify_many,
)
from fixtures import FIG3_MONOMIAL, FIG3_VERTICES


@contextmanager
def criterion(capsys, n, title, limit):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        took = time.perf_counter() - start
        in_time = took < limit
        verdict = "PASS" if ok and in_time else "FAIL"
        note = "" if ok else " (check failed)"
        with capsys.disabled():
            print(f"\n{verdict} criterion {n}: {title}{note} [{took:.1f}s, limit {limit}s]")
    assert in_time, f"criterion {n} took {took:.1f}s, limit {limit}s"


def labeled(s):
    return s.vars, s.matrix, s.labeling


def failures(reports):
    return [(r.subject, r.details.get("problems")) for r in reports if not r.passed]


def test_criterion_01_relations(capsys):
    with criterion(capsys, 1, "tau' relations on the labeled seed", 1):
        init = initial_seed()
        for i in (1, 2, 3):
            assert labeled(apply_tau_prime(apply_tau_prime(init, i), i)) == labeled(init)
            for j in (1, 2, 3):
                if i == j:
                    continue
                s = init
                for _ in range(3):
                    s = apply_tau_prime(apply_tau_prime(s, i), j)
                assert labeled(s) == labeled(init)


def _divide_out(v, lead, a, b, c):
    bases = abc_bases()
    q = v.div_exact(x(lead))
    for base, e in zip(bases, (a, b, c)):
        for _ in range(e):
            q = q.div_exact(base)
    return q


def test_criterion_02_factorization(capsys):
    with criterion(capsys, 2, "x_m A^a B^b C^c along all words of length <= 8", 30):
        seen = set()

        def walk(s, depth):
            seen.update(s.vars)
            if depth < 8:
                for t in (1, 2, 3):
                    walk(apply_tau(s, t)[0], depth + 1)

        walk(initial_seed(), 0)
        assert len(seen) > 100
        for v in seen:
            found = factor(v)
            assert found is not None, v
            lead, a, b, c = found
            assert min(a, b, c) >= 0
            assert _divide_out(v, lead, a, b, c) == LaurentPolynomial.one()


def test_criterion_03_closed_forms(capsys):
    with criterion(capsys, 3, "closed forms equal the engine for |i|,|j| <= 4", 120):
        cache = SeedCache()
        regions = set()
        for i in range(-4, 5):
            for j in range(-4, 5):
                for odd in (False, True):
                    a = Alcove(i, j, odd)
                    engine = sorted(map(str, cache.seed(canonical_path(a)).vars))
                    assert sorted(map(str, expand(cluster_at(a)))) == engine, str(a)
                    if not a.is_origin():
                        regions.add(a.region)
        assert len(regions) == 12
        for n in range(-6, 7):
            word = "123" * n if n >= 0 else "321" * (-n)
            assert beta_power(n) == run_presentation(word)
            assert expand(beta_power(n)) == cache.seed(word).vars


def test_criterion_04_exact_tier(capsys):
    with criterion(capsys, 4, "y = c(G), y' = c(sigma G) exactly on the exact tier", 300):
        _, _, c_base = abc_bases()
        assert c_value(cs.sw_castle(0, -1)) == x(4) * c_base
        assert c_value(cs.ne_castle(0, 1, sigma=True)) == SeedCache().last_pair((1, 2))[0]
        assert c_value(cs.ne_castle(1, 1)) == SeedCache().last_pair(canonical_path(Even(1, 1)))[0]
        alcoves = exact_tier()
        cone = [a for a in alcoves if a.region in ("I", "VII")]
        for i in range(0, 3):
            for j in range(i, 3):
                if (i, j) != (0, 0):
                    assert Even(i, j) in cone
        assert len(alcoves) >= 100
        reports = verify_many(alcoves, EXACT)
        assert failures(reports) == []


def test_criterion_05_fingerprint_tier(capsys):
    with criterion(capsys, 5, "main identity at 3 random points for |i|,|j| <= 4", 600):
        alcoves = fingerprint_tier(4)
        assert len(alcoves) == 161
        reports = verify_many(alcoves, FINGERPRINT, seed=1)
        assert failures(reports) == []


def test_criterion_06_condensation(capsys):
    with criterion(capsys, 6, "condensation identities, exact to 3, fingerprinted at 4", 600):
        reports = []
        for j in range(1, 5):
            for i in range(1, j + 1):
                mode = EXACT if j <= 3 else FINGERPRINT
                reports.append(verify_kuo("NE", i, j, mode))
        for j in range(-2, -6, -1):
            for i in range(-1, j, -1):
                mode = EXACT if j >= -4 else FINGERPRINT
                reports.append(verify_kuo("SW", i, j, mode))
        assert len(reports) == 20
        assert failures(reports) == []


def test_criterion_07_power_of_two(capsys):
    with criterion(capsys, 7, "count(G) = 2^(a+b+c) on tiers 4 and 5", 300):
        alcoves = sorted(set(exact_tier()) | set(fingerprint_tier(4)))
        for a in alcoves:
            asg = assign(a)
            t = asg.word[-1]
            pres = run_presentation(asg.word)
            for g, k in zip(asg.castles(), (2 * t - 2, 2 * t - 1)):
                _, ea, eb, ec = pres.entry(k)
                assert count(g) == 2 ** (ea + eb + ec), str(a)


def test_criterion_08_covering_fixture(capsys):
    with criterion(capsys, 8, "transcribed subgraph has m = x0 x1 x2 x3 x4^3 x5^2", 1):
        g = CastleGraph(frozenset(FIG3_VERTICES), induced(FIG3_VERTICES))
        assert covering_exponents(g) == FIG3_MONOMIAL == (1, 1, 1, 1, 3, 2)


def test_criterion_09_frames(capsys):
    with criterion(capsys, 9, "condensation frames are valid for indices up to 4", 60):
        frames = []
        for j in range(2, 5):
            for i in range(1, j + 1):
                frames.append(cs.kuo_frame_ne(i, j))
        for j in range(-3, -5, -1):
            for i in range(-1, j, -1):
                frames.append(cs.kuo_frame_sw(i, j))
        assert len(frames) == 14
        for f in frames:
            assert f.check() == []


def test_criterion_10_dragons(capsys):
    with criterion(capsys, 10, "column (0,n) carries y_2n = c(D_n); dragons up to n = 8", 60):
        cache = SeedCache()
        for n in range(1, 5):
            r = verify_main(Even(0, n))
            assert r.passed, r.details["problems"]
            y, _ = cache.last_pair(canonical_path(Even(0, n)))
            assert c_value(cs.dragon(2 * n)) == y
        reports = [verify_dragon(n) for n in range(1, 9)]
        assert failures(reports) == []
