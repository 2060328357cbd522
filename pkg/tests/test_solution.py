import random
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from conftest import (
    eec1958,
    has_imputations,
    multi_rule_games,
    random_weighted,
    vetoer_game,
    weighted_games,
)
from powerkit.game import CapabilityError, GameError, make_game, make_weighted_game
from powerkit.indices import shapley_shubik
from powerkit.solution import (
    Span,
    core_nonempty,
    excess,
    excess_vector,
    has_justified_objection,
    in_bargaining_set,
    is_imputation,
    least_core,
    least_core_is_point,
    max_excess,
    min_cost_winning,
    nucleolus,
    nucleolus_certificate,
    nucleolus_oracle,
    verify_certificate,
)


def _least_core_scipy(g):
    """min eps s.t. x(S) + eps >= v(S) for proper S, x(N) = 1, x_i >= v(i)."""
    n = g.n
    A, b = [], []
    for m in range(1, g.grand):
        A.append([-(m >> i & 1) for i in range(n)] + [-1])
        b.append(-g.value(m))
    bounds = [(g.value(1 << i), None) for i in range(n)] + [(None, None)]
    res = linprog([0] * n + [1], A_ub=A, b_ub=b, A_eq=[[1] * n + [0]], b_eq=[1],
                  bounds=bounds, method="highs")
    return res.fun


def _sorted_excess(g, x):
    return sorted(excess_vector(g, x), reverse=True)


def _random_imputation(g, rng):
    n = g.n
    lower = [F(g.value(1 << i)) for i in range(n)]
    rest = 1 - sum(lower)
    raw = [rng.randint(0, 20) for _ in range(n)]
    if sum(raw) == 0:
        raw[0] = 1
    return [lower[i] + rest * F(raw[i], sum(raw)) for i in range(n)]


def test_eec1958_least_core_is_not_a_point():
    g = eec1958()
    lc = least_core(g)
    assert lc.epsilon_star == F(1, 4)
    assert lc.unique is False
    assert is_imputation(g, lc.witness)
    assert max_excess(g, lc.witness)[0] == F(1, 4)
    # Belgium and the Netherlands share 1/4 in any proportion on the least core
    for split in (F(0), F(1, 8), F(1, 4)):
        y = (F(1, 4),) * 3 + (split, F(1, 4) - split, F(0))
        assert max_excess(g, y)[0] == F(1, 4)


def test_eec1958_nucleolus_and_certificate():
    g = eec1958()
    expect = (F(1, 4),) * 3 + (F(1, 8),) * 2 + (F(0),)
    assert nucleolus(g).values == expect
    assert nucleolus_oracle(g).values == expect
    cert = nucleolus_certificate(g)
    assert len(cert.rounds) >= 2
    assert verify_certificate(g, cert)
    text = cert.render(g)
    assert "round 1: level 1/4" in text


def test_vetoer_game_solutions():
    g = vetoer_game()
    assert nucleolus(g).values == (1, 0, 0)
    assert least_core(g).epsilon_star == 0
    assert core_nonempty(g)
    ssi = shapley_shubik(g).values
    assert has_justified_objection(g, ssi) == (True, (0, 1))
    assert has_justified_objection(g, (1, 0, 0)) == (False, None)
    assert in_bargaining_set(g, (1, 0, 0))


def test_small_reference_games():
    maj = make_weighted_game("abc", [1, 1, 1], 2)
    assert nucleolus(maj).values == (F(1, 3),) * 3
    assert least_core(maj).epsilon_star == F(1, 3)
    assert not core_nonempty(maj)
    dictator = make_weighted_game("abc", [3, 1, 1], 3)
    assert nucleolus(dictator).values == (1, 0, 0)
    unanimity = make_weighted_game("abc", [1, 1, 1], 3)
    assert least_core(unanimity).epsilon_star == F(-1, 3)
    assert nucleolus(unanimity).values == (F(1, 3),) * 3
    single = make_weighted_game(["solo"], [1], 1)
    assert nucleolus(single).values == (1,)


def test_eu9_least_core_is_a_point():
    g = make_weighted_game([str(i) for i in range(9)], [10, 10, 10, 10, 5, 5, 2, 3, 3], 41)
    lc = least_core(g)
    assert lc.unique
    assert nucleolus(g).values == (F(1, 4),) * 4 + (F(0),) * 5


def test_empty_imputation_set_is_rejected():
    g = make_weighted_game("ab", [8, 3], 1)
    with pytest.raises(GameError, match="imputation"):
        nucleolus(g)
    with pytest.raises(GameError, match="imputation"):
        nucleolus_oracle(g)


def test_span():
    s = Span(3)
    assert s.add([1, 1, 1])
    assert s.add([1, 0, 0])
    assert not s.add([0, 1, 1])
    assert s.contains([2, 3, 3])
    assert s.rank == 2


def test_objection_search_size_limit():
    g = make_weighted_game([str(i) for i in range(6)], [1] * 6, 4)
    with pytest.raises(CapabilityError):
        has_justified_objection(g, (F(1, 6),) * 6)


@settings(max_examples=150, deadline=None)
@given(weighted_games(max_n=8), st.integers(0, 10**6))
def test_separation_methods_agree(g, seed):
    rng = random.Random(seed)
    x = [F(rng.randint(0, 12), rng.randint(1, 6)) for _ in range(g.n)]
    dp = min_cost_winning(g, x, "dp")
    bb = min_cost_winning(g, x, "bb")
    table = min_cost_winning(g, x, "table")
    brute = min((sum((x[i] for i in range(g.n) if m >> i & 1), F(0)), m)
                for m in range(1, 1 << g.n) if g.is_winning(m))
    assert dp == bb == table == brute


@settings(max_examples=120, deadline=None)
@given(multi_rule_games(max_n=7))
def test_least_core_value_matches_scipy(g):
    assume(has_imputations(g))
    assert abs(float(least_core(g).epsilon_star) - _least_core_scipy(g)) < 1e-9


@settings(max_examples=120, deadline=None)
@given(multi_rule_games(max_n=7))
def test_nucleolus_matches_oracle_and_certificate(g):
    assume(has_imputations(g))
    nu = nucleolus(g)
    assert nu.values == nucleolus_oracle(g).values
    assert verify_certificate(g, nucleolus_certificate(g))
    assert max_excess(g, nu.values)[0] == least_core(g).epsilon_star


@settings(max_examples=80, deadline=None)
@given(weighted_games(max_n=6), st.integers(0, 10**6))
def test_nucleolus_is_lexicographic_minimum(g, seed):
    assume(has_imputations(g))
    rng = random.Random(seed)
    nu = list(nucleolus(g).values)
    base = _sorted_excess(g, nu)
    candidates = [_random_imputation(g, rng) for _ in range(10)]
    candidates.append(list(shapley_shubik(g).values))
    for y in candidates:
        if is_imputation(g, y):
            assert base <= _sorted_excess(g, y)


@settings(max_examples=60, deadline=None)
@given(weighted_games(max_n=4))
def test_nucleolus_in_bargaining_set(g):
    assume(has_imputations(g))
    assert in_bargaining_set(g, nucleolus(g).values)


@settings(max_examples=60, deadline=None)
@given(weighted_games(max_n=7))
def test_core_contains_nucleolus_when_nonempty(g):
    assume(has_imputations(g))
    if core_nonempty(g):
        nu = nucleolus(g).values
        assert all(excess(g, m, nu) <= 0 for m in range(1, g.grand))


def test_max_excess_scan_matches_python_loop():
    rng = random.Random(7)
    for _ in range(20):
        g = random_weighted(rng, rng.randint(2, 9))
        x = nucleolus(g).values
        best = max((excess(g, m, x), -m) for m in range(1, g.grand)) if g.n > 1 else None
        e, m = max_excess(g, x)
        assert (e, -m) == best


def test_table_separation_on_a_nice_sized_game():
    rng = np.random.default_rng(3)
    n = 14
    rules = [(list(rng.integers(1, 30, n)), 0) for _ in range(2)]
    rules = [(w, int(sum(w) * 2 // 3)) for w, _ in rules]
    g = make_game([str(i) for i in range(n)], rules)
    x = [F(int(v), 97) for v in rng.integers(0, 20, n)]
    assert min_cost_winning(g, x, "table") == min_cost_winning(g, x, "bb")


@settings(max_examples=80, deadline=None)
@given(multi_rule_games(max_n=7))
def test_pinned_shortcut_matches_full_probe(g):
    assume(has_imputations(g))
    lc = least_core(g)
    assert lc.unique == least_core_is_point(g, lc.epsilon_star, lc.witness)
