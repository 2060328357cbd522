import random
from fractions import Fraction
from itertools import permutations
from math import factorial

import pytest
from hypothesis import strategies as st

from powerkit.game import VotingGame, make_game, make_weighted_game

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}
ACCEPTANCE_TITLES = {
    1: "six-member 1958 game: SSI and nucleolus",
    2: "three-player vetoer game",
    3: "coalition wealth of the two MWC types",
    4: "Council 1958-2002 vs printed values",
    5: "Nice era 2003-2012 vs printed values and timing",
    6: "nucleolus == oracle, SSI routes agree",
    7: "power panel summary statistics",
    8: "econometric estimator properties",
    9: "rescaling, symmetry and dummy invariances",
}


@pytest.fixture
def acceptance():
    def record(k: int, ok: bool, detail: str = ""):
        ACCEPTANCE[k] = (bool(ok), detail)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    ran = any("test_acceptance" in str(r.nodeid)
              for key in ("passed", "failed", "error")
              for r in terminalreporter.stats.get(key, []))
    if not ran:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_TITLES):
        if k not in ACCEPTANCE:
            tr.write_line(f"criterion {k}: NOT RUN  {ACCEPTANCE_TITLES[k]}")
            continue
        ok, detail = ACCEPTANCE[k]
        tr.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {ACCEPTANCE_TITLES[k]}  [{detail}]")


# --- games ------------------------------------------------------------------------

def eec1958() -> VotingGame:
    return make_weighted_game(["DE", "IT", "FR", "BE", "NL", "LU"], [4, 4, 4, 2, 2, 1], 12, "eec1958")


def vetoer_game() -> VotingGame:
    return make_weighted_game(["1", "2", "3"], [2, 1, 1], 3, "vetoer")


def random_weighted(rng: random.Random, n: int, wmax: int = 9) -> VotingGame:
    """Random weighted game with a nonempty imputation set."""
    while True:
        ws = [rng.randint(0, wmax) for _ in range(n)]
        if sum(ws) == 0:
            ws[0] = 1
        q = rng.randint(1, sum(ws))
        g = make_weighted_game([f"p{i}" for i in range(n)], ws, q, "random")
        if has_imputations(g):
            return g


def has_imputations(g: VotingGame) -> bool:
    """At most one player wins alone (otherwise no imputation exists)."""
    return sum(g.value(1 << i) for i in range(g.n)) <= 1


@st.composite
def weighted_games(draw, min_n=1, max_n=8, wmax=9):
    n = draw(st.integers(min_n, max_n))
    ws = draw(st.lists(st.integers(0, wmax), min_size=n, max_size=n))
    if sum(ws) == 0:
        ws[0] = 1
    q = draw(st.integers(1, sum(ws)))
    return make_weighted_game([f"p{i}" for i in range(n)], ws, q, "hyp")


@st.composite
def multi_rule_games(draw, min_n=2, max_n=7):
    n = draw(st.integers(min_n, max_n))
    k = draw(st.integers(1, 3))
    rules = []
    for _ in range(k):
        ws = draw(st.lists(st.integers(0, 9), min_size=n, max_size=n))
        if sum(ws) == 0:
            ws[0] = 1
        rules.append((ws, draw(st.integers(1, sum(ws)))))
    return make_game([f"p{i}" for i in range(n)], rules, "hyp-multi")


# --- independent oracles -------------------------------------------------------------

def ssi_by_permutations(game: VotingGame) -> list[Fraction]:
    """Pivot counting over all n! voting orders."""
    n = game.n
    counts = [0] * n
    for order in permutations(range(n)):
        mask = 0
        for i in order:
            mask |= 1 << i
            if game.is_winning(mask):
                counts[i] += 1
                break
    total = factorial(n)
    return [Fraction(c, total) for c in counts]


def ssi_by_subsets(game: VotingGame) -> list[Fraction]:
    """Pivot weights |S|!(n-|S|-1)!/n! summed over losing S that i turns winning."""
    n = game.n
    coef = [Fraction(factorial(k) * factorial(n - k - 1), factorial(n)) for k in range(n)]
    win = [game.is_winning(m) for m in range(1 << n)]
    out = [Fraction(0)] * n
    for mask in range(1 << n):
        if win[mask]:
            continue
        k = bin(mask).count("1")
        for i in range(n):
            if not mask >> i & 1 and win[mask | 1 << i]:
                out[i] += coef[k]
    return out


def brute_swings(game: VotingGame) -> list[int]:
    n = game.n
    out = [0] * n
    for mask in range(1 << n):
        for i in range(n):
            if not mask >> i & 1 and not game.is_winning(mask) and game.is_winning(mask | 1 << i):
                out[i] += 1
    return out


def brute_minimal_winning(game: VotingGame) -> set[int]:
    n = game.n
    out = set()
    for mask in range(1, 1 << n):
        if game.is_winning(mask) and all(
                not game.is_winning(mask & ~(1 << i)) for i in range(n) if mask >> i & 1):
            out.add(mask)
    return out


# --- shared Council computations (slow; computed once per session) -----------------------

@pytest.fixture(scope="session")
def council_configs():
    from powerkit.eu import load_council_configs
    return load_council_configs()


@pytest.fixture(scope="session")
def council_tables(council_configs):
    """period start -> (PowerTable with ssi and nucleolus, {kind: seconds})."""
    import time

    from powerkit import enumeration, solution
    from powerkit.eu import PowerRow, PowerTable, period_power_table

    out = {}
    for cfg in council_configs:
        timing, parts = {}, {}
        for kind in ("ssi", "nucleolus"):
            for cached in (solution._solve_cached, solution._mwc_bits, enumeration.scan):
                cached.cache_clear()
            t0 = time.perf_counter()
            parts[kind] = period_power_table(cfg, [kind]).column(kind)
            timing[kind] = time.perf_counter() - t0
        rows = tuple(PowerRow(c, {k: parts[k][c] for k in parts}) for c in cfg.members)
        out[cfg.start] = (PowerTable(cfg.period, cfg.name, ("ssi", "nucleolus"), rows), timing)
    return out


@pytest.fixture(scope="session")
def power_panel_rows(council_configs, council_tables):
    from powerkit.eu import build_power_panel
    return build_power_panel(council_configs, tables=[t for t, _ in council_tables.values()])
