from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dp3 import tiling
from dp3.castle import CastleGraph, induced, ne_castle, sw_castle, trace, empty_tuple
from dp3.laurent import lp_eval, monomial, x
from dp3.matching import (
    Overflow, c_fingerprint, c_value, count, covering_exponents, covering_monomial,
    enumerate_matchings, fingerprint, kasteleyn_signs, weight,
)
from fixtures import FIG3_FACES, FIG3_MONOMIAL, FIG3_VERTICES
from oracles import brute_matchings

FACE5 = sw_castle(0, -1)
D1 = ne_castle(0, 1, sigma=True)
EMPTY = trace(empty_tuple())
PT = tuple(Fraction(p, q) for p, q in ((3, 2), (5, 7), (2, 9), (7, 3), (4, 5), (11, 6)))

small = st.sampled_from([(0, 1), (1, 0), (1, 1), (0, 2), (2, 0), (1, 2), (2, 1)])


def test_enumerate_examples():
    assert len(enumerate_matchings(FACE5)) == 2
    assert len(enumerate_matchings(D1)) == 4
    assert enumerate_matchings(EMPTY) == [frozenset()]
    with pytest.raises(Overflow):
        enumerate_matchings(ne_castle(2, 2), cap=10)


def test_face5_values():
    assert covering_monomial(FACE5) == monomial((1, 1, 1, 1, 0, 1))
    c = (x(0) * x(2) + x(1) * x(3)) * monomial((0, 0, 0, 0, 0, -1))
    assert c_value(FACE5) == c
    assert fingerprint(FACE5, (1,) * 6) == 2


def test_fig3_covering_monomial():
    g = CastleGraph(frozenset(FIG3_VERTICES), induced(FIG3_VERTICES))
    assert len(g.edges) == 10
    assert covering_exponents(g) == FIG3_MONOMIAL
    inside = sorted((f.corner, f.centre, f.label) for f in D1.faces)
    assert inside == sorted(FIG3_FACES)


def test_counts():
    assert count(D1) == 4
    assert count(EMPTY) == 1
    assert fingerprint(D1, (1,) * 6) == 4
    assert count(ne_castle(3, 3), cap=16) == fingerprint(ne_castle(3, 3), (1,) * 6)


@given(small, st.booleans())
def test_three_ways_agree(ij, sigma):
    g = ne_castle(*ij, sigma=sigma)
    w = weight(g)
    assert weight(g, "enumerate") == w
    assert fingerprint(g, PT) == lp_eval(w, PT)
    assert c_fingerprint(g, PT) == lp_eval(c_value(g), PT)


@given(st.sampled_from([(0, 1), (1, 0), (0, 2), (1, 1)]), st.booleans())
def test_brute_force_oracle(ij, sigma):
    g = ne_castle(*ij, sigma=sigma)
    vals = {e: lp_eval(tiling.edge_weight(e), PT) for e in g.edges}
    assert brute_matchings(g.vertices, g.edges, vals) == lp_eval(weight(g), PT)
    assert brute_matchings(g.vertices, g.edges) == count(g)


def test_weight_method_errors():
    with pytest.raises(ValueError):
        weight(D1, method="magic")


def test_kasteleyn_face_condition():
    g = ne_castle(2, 3)
    sign = kasteleyn_signs(g.vertices, g.edges)
    assert set(sign) == set(g.edges)
    assert set(sign.values()) <= {1, -1}


@pytest.mark.parametrize("ij", [(i, j) for i in range(0, 4) for j in range(0, 4) if (i, j) != (0, 0)])
def test_counts_are_powers_of_two(ij):
    for sigma in (False, True):
        n = count(ne_castle(*ij, sigma=sigma))
        assert n & (n - 1) == 0


@pytest.mark.parametrize("ij", [(i, j) for j in range(-4, 0) for i in range(0, j, -1)])
def test_sw_counts_are_powers_of_two(ij):
    n = count(sw_castle(*ij))
    assert n & (n - 1) == 0
