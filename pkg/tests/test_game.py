import json
from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import brute_minimal_winning, eec1958, multi_rule_games, vetoer_game, weighted_games
from powerkit.game import (
    CapabilityError,
    GameError,
    WeightedRule,
    critical_players,
    dummies,
    game_from_dict,
    intersect_games,
    iter_winning,
    load_game,
    make_game,
    make_weighted_game,
    mask_of,
    members,
    minimal_winning_coalitions,
    to_fraction,
    vetoers,
)


def test_to_fraction_parses_common_forms():
    assert to_fraction(3) == 3
    assert to_fraction(0.62) == Fraction(62, 100)
    assert to_fraction("45/63") == Fraction(5, 7)
    with pytest.raises(GameError):
        to_fraction("abc")
    with pytest.raises(GameError):
        to_fraction(True)


def test_rule_validation():
    with pytest.raises(GameError, match="void"):
        WeightedRule((1, 1), 3)
    with pytest.raises(GameError):
        WeightedRule((1, -1), 1)
    with pytest.raises(GameError):
        WeightedRule((1, 1), 0)


def test_integer_form_is_reduced():
    r = WeightedRule(("1/2", "1/2", 1), "3/2")
    assert r.integer_form() == ((1, 1, 2), 3)
    assert WeightedRule((10, 20), 30).integer_form() == ((1, 2), 3)


def test_eec1958_winning_structure():
    g = eec1958()
    assert g.is_winning(g.coalition(["DE", "IT", "FR"]))
    assert not g.is_winning(g.coalition(["DE", "IT", "BE", "NL"]) & ~(1 << 3))
    assert g.is_winning(g.coalition(["DE", "IT", "BE", "NL"]))
    assert not g.is_winning(g.coalition(["DE", "IT", "BE", "LU"]))
    assert minimal_winning_coalitions(g) == {7, 27, 29, 30}
    assert dummies(g) == {5}
    assert vetoers(g) == set()
    assert g.value(0) == 0


def test_vetoer_game_structure():
    g = vetoer_game()
    assert vetoers(g) == {0}
    assert minimal_winning_coalitions(g) == {0b011, 0b101}
    assert critical_players(g, 0b111) == [0]
    assert critical_players(g, 0b011) == [0, 1]
    assert critical_players(g, 0b110) == []


def test_coalition_out_of_range():
    with pytest.raises(GameError):
        eec1958().is_winning(1 << 6)


def test_construction_errors():
    with pytest.raises(GameError):
        make_weighted_game(["a", "b"], [1], 1)
    with pytest.raises(GameError):
        make_weighted_game(["a", "a"], [1, 1], 1)
    with pytest.raises(GameError):
        make_game(["a", "b"], [])
    with pytest.raises(GameError):
        make_game(["a", "b"], [([1, 1, 1], 1)])
    g = make_weighted_game(["a", "b"], [1, 1], 1)
    h = make_weighted_game(["a", "c"], [1, 1], 1)
    with pytest.raises(GameError):
        intersect_games([g, h])


def test_enumeration_capability_limit():
    g = make_weighted_game([str(i) for i in range(31)], [1] * 31, 16)
    with pytest.raises(CapabilityError):
        minimal_winning_coalitions(g)
    with pytest.raises(CapabilityError):
        next(iter_winning(g))


def test_intersection_needs_all_rules():
    a = make_weighted_game(["x", "y", "z"], [1, 1, 1], 2)
    b = make_weighted_game(["x", "y", "z"], [5, 1, 1], 5)
    g = intersect_games([a, b])
    assert g.is_winning(0b011) and g.is_winning(0b101)
    assert not g.is_winning(0b110)


def test_dict_roundtrip_and_file_errors(tmp_path):
    g = eec1958()
    assert game_from_dict(g.to_dict()) == g
    p = tmp_path / "g.json"
    p.write_text(json.dumps(g.to_dict()))
    assert load_game(p) == g
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"members": ["a"], "rules": [{"weights": [1], "quota": 2}]}))
    with pytest.raises(GameError, match="bad.json"):
        load_game(bad)
    with pytest.raises(GameError, match="missing"):
        game_from_dict({"members": ["a"]})


def test_mask_helpers():
    assert members(0b10110) == [1, 2, 4]
    assert mask_of([1, 2, 4]) == 0b10110


@settings(max_examples=150, deadline=None)
@given(weighted_games(max_n=8))
def test_minimal_winning_matches_brute_force(g):
    assert minimal_winning_coalitions(g) == brute_minimal_winning(g)


@settings(max_examples=100, deadline=None)
@given(multi_rule_games())
def test_minimal_winning_matches_brute_force_multi_rule(g):
    assert minimal_winning_coalitions(g) == brute_minimal_winning(g)


@settings(max_examples=100, deadline=None)
@given(weighted_games(max_n=7))
def test_games_are_monotone_and_proper_grand(g):
    assert g.is_winning(g.grand)
    for mask in range(1 << g.n):
        if g.is_winning(mask):
            for i in range(g.n):
                assert g.is_winning(mask | 1 << i)
