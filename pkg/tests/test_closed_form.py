import pytest
from hypothesis import given, strategies as st

from dp3.alcove import Alcove, Even, canonical_path
from dp3.cluster import SeedCache
from dp3.closed_form import (
    TauPresentation, abc_bases, beta_power, cluster_at, expand,
    expand_entry, exponent_step, factor, formula_entries, pretty, run_presentation,
)
from dp3.laurent import SIGMA, lp_eval, lp_permute
from oracles import A, B, C, X, same

CACHE = SeedCache()
words = st.text(alphabet="123", max_size=8)


def test_bases():
    a, b, c = abc_bases()
    assert same(a, A) and same(b, B) and same(c, C)
    for base in (a, b, c):
        assert lp_permute(base, SIGMA) == base
        assert lp_eval(base, (1,) * 6) == 2


def test_exponent_step_examples():
    p = exponent_step(TauPresentation.initial(), 1)
    assert p.entry(0) == (1, 1, 0, 0)
    beta = run_presentation("123")
    assert beta.triples == ((1, 0, 0), (1, 1, 0), (2, 1, 1))
    for t in (1, 2, 3):
        assert exponent_step(exponent_step(beta, t), t) == beta


def test_beta_power_examples():
    assert beta_power(0) == TauPresentation.initial()
    assert beta_power(1).entry(0) == (1, 1, 0, 0)
    assert beta_power(2).entry(0) == (0, 3, 2, 1)


@pytest.mark.parametrize("n", range(-6, 7))
def test_beta_power_matches_steps(n):
    word = "123" * n if n >= 0 else "321" * (-n)
    assert beta_power(n) == run_presentation(word)


def test_cluster_at_examples():
    assert cluster_at(Even(0, 0), "direct") == TauPresentation.initial()
    assert cluster_at(Even(0, 1)).entry(0)[1:] == (1, 0, 0)
    got = set(expand(cluster_at(Even(3, 3))))
    assert got == set(CACHE.seed("123123213213").vars)


def test_expand_examples():
    assert expand(TauPresentation.initial()) == tuple(
        expand_entry(k, 0, 0, 0) for k in range(6))
    p = run_presentation("1")
    assert expand(p)[:2] == CACHE.last_pair("1")
    assert same(expand(p)[0], X[1] * A)
    assert pretty(1, 2, 1, 0) == "x1·A^2B^1C^0"


@given(words)
def test_presentation_tracks_engine(word):
    pres = run_presentation(word)
    assert expand(pres) == CACHE.seed(word).vars


@given(words)
def test_factor_recovers_presentation(word):
    pres = run_presentation(word)
    for k, v in enumerate(CACHE.seed(word).vars):
        assert factor(v) == pres.entry(k)


@given(words)
def test_all_ones_is_power_of_two(word):
    pres = run_presentation(word)
    for k in range(6):
        lead, a, b, c = pres.entry(k)
        assert lp_eval(expand_entry(lead, a, b, c), (1,) * 6) == 2 ** (a + b + c)


def test_formula_integrality_pattern():
    # the case formulas are integral wherever they apply
    for h in range(-12, 13, 3):
        for r in range(-12, 13):
            formula_entries(h, r)
    with pytest.raises(ValueError):
        formula_entries(1, 0)


def test_formulas_agree_with_engine_everywhere():
    for i in range(-4, 5):
        for j in range(-4, 5):
            for odd in (False, True):
                a = Alcove(i, j, odd)
                vars_ = CACHE.seed(canonical_path(a)).vars
                for method in ("direct", "conjugate"):
                    assert sorted(map(str, expand(cluster_at(a, method)))) == sorted(map(str, vars_))


def test_only_origin_gives_initial_cluster():
    init = set(expand(TauPresentation.initial()))
    for i in range(-3, 4):
        for j in range(-3, 4):
            for odd in (False, True):
                a = Alcove(i, j, odd)
                assert (set(expand(cluster_at(a))) == init) == a.is_origin()


def test_json_round_trip():
    p = run_presentation("12312")
    assert TauPresentation.from_json(p.to_json()) == p
