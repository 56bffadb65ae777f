import pytest
from hypothesis import given, strategies as st

from dp3.alcove import (
    ORIGIN, REGION_ROWS, ROMAN, Alcove, Even, InvalidAlcove, Odd, apply_theta,
    canonical_path, coordinates, in_ne_cone, in_sw_cone, invert_theta, parse_alcove,
    preimage, region_maps, region_of, regions_containing, walk, word_str,
)
from dp3.cluster import SeedCache

alcoves = st.builds(Alcove, st.integers(-5, 5), st.integers(-5, 5), st.booleans())
words = st.text(alphabet="123", max_size=12)
CACHE = SeedCache()


def test_walk_examples():
    assert walk("") == ORIGIN
    assert coordinates(ORIGIN) == Even(0, 0)
    assert coordinates(walk("123123213213")) == Even(3, 3)
    assert region_of(Even(3, 3)) == "I"
    a = coordinates(walk("321"))
    assert a.odd and region_of(a) == "VII"
    assert coordinates(walk("321323")) == Even(-1, -2)
    assert region_of(Even(-1, -2)) == "VII"


def test_canonical_path_examples():
    assert canonical_path(Even(0, 0)) == ()
    assert word_str(canonical_path(Even(3, 3))) == "123123213213"
    assert word_str(canonical_path(Even(-1, -2))) == "321323"


def test_region_rows():
    row = region_maps("II")
    assert (row.ne_region, row.sw_region) == ("II", "VIII")
    assert row.theta == (2, 1, 3)
    assert row.even_map(2, 5) == (5, 2)
    assert row.odd_map(2, 5) == (6, 1)
    row = region_maps("IV")
    assert row.theta == (1, 3, 2)
    assert row.odd_map(2, 5) == (-7, 5)
    assert region_maps("XI").alpha == (3, 2, 5, 4, 0, 1)
    with pytest.raises(InvalidAlcove):
        region_maps("XIII")


def test_parse_alcove():
    assert parse_alcove("(2,-1)") == Even(2, -1)
    assert parse_alcove(" {1, 3} ") == Odd(1, 3)
    assert parse_alcove("(1,1)@I") == Even(1, 1)
    for bad in ("(1,2}", "1,2", "(1,1)@IV", "(a,b)"):
        with pytest.raises(InvalidAlcove):
            parse_alcove(bad)


def test_every_alcove_has_a_region():
    for i in range(-6, 7):
        for j in range(-6, 7):
            for odd in (False, True):
                assert region_of(Alcove(i, j, odd)) in ROMAN


def test_path_lengths_in_cones():
    for i in range(0, 5):
        for j in range(i, 5):
            a = Even(i, j)
            if in_ne_cone(a):
                assert len(canonical_path(a)) == 2 * i + 2 * j
            b = Odd(i, j - 1)
            if in_ne_cone(b):
                # {i, j-1} is reached in 2i + 2j - 1 steps
                assert len(canonical_path(b)) == 2 * i + 2 * j - 1


@given(alcoves)
def test_canonical_path_round_trip(a):
    assert coordinates(walk(canonical_path(a))) == a


@given(words, st.sampled_from("123"))
def test_doubled_letter_returns(word, t):
    assert walk(word + t + t) == walk(word)


@given(alcoves)
def test_preimage_is_in_a_cone(a):
    if a.is_origin():
        return
    row, pre = preimage(a)
    assert in_ne_cone(pre) or in_sw_cone(pre)
    assert coordinates(walk(apply_theta(row.theta, canonical_path(pre)))) == a


@given(words)
def test_theta_conjugation_matches_table_maps(word):
    a = coordinates(walk(word))
    if not (in_ne_cone(a) or in_sw_cone(a)):
        return
    for row in REGION_ROWS:
        img = coordinates(walk(apply_theta(row.theta, canonical_path(a))))
        if in_ne_cone(a):
            fmap = row.odd_map if a.odd else row.even_map
            assert (img.i, img.j) == fmap(a.i, a.j)


def test_theta_inverse():
    for row in REGION_ROWS:
        inv = invert_theta(row.theta)
        assert apply_theta(inv, apply_theta(row.theta, "123312")) == (1, 2, 3, 3, 1, 2)


def test_overlaps_give_equal_clusters():
    # alcoves reachable in two regions have one cluster, whichever path is used
    checked = 0
    for i in range(-4, 5):
        for j in range(-4, 5):
            for odd in (False, True):
                a = Alcove(i, j, odd)
                if a.is_origin():
                    continue
                found = regions_containing(a)
                if len(found) < 2:
                    continue
                clusters = set()
                for r in found:
                    row, pre = preimage(a, r)
                    w = apply_theta(row.theta, canonical_path(pre))
                    clusters.add(CACHE.seed(w).unordered())
                assert len(clusters) == 1
                checked += 1
    assert checked > 10
