from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import (
    brute_minimal_winning,
    brute_swings,
    eec1958,
    multi_rule_games,
    ssi_by_permutations,
    vetoer_game,
    weighted_games,
)
from powerkit import enumeration
from powerkit.game import CapabilityError, critical_players, make_weighted_game, members
from powerkit.indices import (
    PowerProfile,
    banzhaf,
    coalition_value_under_profile,
    compute,
    deegan_packel,
    johnston,
    public_good,
    raw_banzhaf,
    shapley_shubik,
    swing_counts_dp,
)


def test_eec1958_ssi_both_routes():
    g = eec1958()
    expect = (F(7, 30),) * 3 + (F(3, 20),) * 2 + (F(0),)
    assert shapley_shubik(g, "dp").values == expect
    assert shapley_shubik(g, "enumerate").values == expect
    assert ssi_by_permutations(g) == list(expect)


def test_eec1958_other_indices():
    g = eec1958()
    assert raw_banzhaf(g) == [10, 10, 10, 6, 6, 0] == brute_swings(g)
    assert banzhaf(g).values == (F(5, 21),) * 3 + (F(1, 7),) * 2 + (F(0),)
    assert johnston(g).values == (F(1, 4),) * 3 + (F(1, 8),) * 2 + (F(0),)
    assert deegan_packel(g).values == (F(5, 24),) * 3 + (F(3, 16),) * 2 + (F(0),)
    assert public_good(g).values == (F(1, 5),) * 5 + (F(0),)


def test_vetoer_ssi():
    assert shapley_shubik(vetoer_game()).values == (F(2, 3), F(1, 6), F(1, 6))


def test_coalition_wealth_under_ssi():
    ssi = shapley_shubik(eec1958())
    assert coalition_value_under_profile(ssi, 0b000111) == F(7, 10)
    assert coalition_value_under_profile(ssi, 0b011011) == F(23, 30)


def test_profile_validation():
    with pytest.raises(ValueError):
        PowerProfile((F(1, 2), F(1, 3)), "x")
    with pytest.raises(ValueError):
        PowerProfile((F(3, 2), F(-1, 2)), "x")


def test_unknown_kind():
    with pytest.raises(ValueError):
        compute(eec1958(), "power")


def test_dp_requires_single_rule():
    g = make_weighted_game(["a", "b"], [1, 1], 1)
    from powerkit.game import intersect_games
    with pytest.raises(CapabilityError):
        swing_counts_dp(intersect_games([g, g]))


def test_large_game_enumeration_refused():
    g = make_weighted_game([str(i) for i in range(29)], [1] * 29, 15)
    with pytest.raises(CapabilityError):
        enumeration.scan(g)
    # the DP route has no player limit for a single rule
    assert shapley_shubik(g).values == (F(1, 29),) * 29


def _johnston_brute(g):
    raw = [F(0)] * g.n
    for mask in range(1, 1 << g.n):
        crit = critical_players(g, mask)
        for i in crit:
            raw[i] += F(1, len(crit))
    tot = sum(raw)
    return [r / tot for r in raw]


@settings(max_examples=200, deadline=None)
@given(weighted_games(max_n=7))
def test_ssi_routes_agree_with_permutation_oracle(g):
    perm = ssi_by_permutations(g)
    assert list(shapley_shubik(g, "dp").values) == perm
    assert list(shapley_shubik(g, "enumerate").values) == perm


@settings(max_examples=100, deadline=None)
@given(multi_rule_games(max_n=6))
def test_ssi_multi_rule_matches_permutations(g):
    assert list(shapley_shubik(g).values) == ssi_by_permutations(g)


@settings(max_examples=150, deadline=None)
@given(weighted_games(max_n=9))
def test_swing_counts_routes_agree(g):
    assert swing_counts_dp(g) == [list(r) for r in enumeration.scan(g).swings]
    assert raw_banzhaf(g, "dp") == brute_swings(g)


@settings(max_examples=100, deadline=None)
@given(multi_rule_games(max_n=7))
def test_johnston_and_mwc_indices_match_brute_force(g):
    assert list(johnston(g).values) == _johnston_brute(g)
    mwc = brute_minimal_winning(g)
    assert {int(m) for m in enumeration.scan(g).minimal_winning} == mwc
    pg = [sum(1 for m in mwc if m >> i & 1) for i in range(g.n)]
    assert list(public_good(g).values) == [F(c, sum(pg)) for c in pg]
    dp = [sum((F(1, len(members(m))) for m in mwc if m >> i & 1), F(0)) for i in range(g.n)]
    assert list(deegan_packel(g).values) == [d / sum(dp) for d in dp]


@settings(max_examples=100, deadline=None)
@given(weighted_games(max_n=8), st.sampled_from(["ssi", "banzhaf", "johnston", "deegan_packel",
                                                 "public_good"]))
def test_profiles_sum_to_one_and_dummies_get_zero(g, kind):
    p = compute(g, kind)
    assert sum(p.values) == 1
    for i in range(g.n):
        dummy = all(not (g.is_winning(m | 1 << i) and not g.is_winning(m))
                    for m in range(1 << g.n) if not m >> i & 1)
        if dummy:
            assert p.values[i] == 0
