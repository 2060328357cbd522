"""Least core, nucleolus and bargaining-set checks for simple voting games.

The least-core programme

    min eps  s.t.  v(S) - x(S) <= eps   for all proper nonempty S,
                   x(N) = 1,  x_i >= v({i})

is solved through its dual, in which every coalition is a column::

    max  sum_S v(S) y_S + mu + sum_i v({i}) s_i
    s.t. sum_{S∋i} y_S + mu + s_i = 0      (one row per player)
         sum_S y_S = 1                     (row for eps)
         y, s >= 0,  mu free

The simplex multipliers of the dual are the payoff vector ``x`` and ``eps``,
so a coalition's reduced cost is its excess minus ``eps``: pricing a column
is exactly finding a coalition whose excess exceeds the current level.
Coalitions are generated on demand by a separation oracle.

Refinement: coalitions with a positive dual weight have excess ``eps`` in
every optimal solution; they are frozen at that level and the programme is
re-solved over the coalitions outside the linear span of the frozen ones.
The payoff is unique once the frozen system has rank ``n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Iterable, Sequence

import numpy as np

from . import enumeration
from .game import CapabilityError, GameError, VotingGame, members
from .indices import PowerProfile
from .lp import RationalLP

ZERO = Fraction(0)
ONE = Fraction(1)
ORACLE_MAX_PLAYERS = 15
OBJECTION_MAX_PLAYERS = 5


# --- payoffs and excesses -------------------------------------------------------

def _as_payoff(x) -> tuple[Fraction, ...]:
    if isinstance(x, PowerProfile):
        x = x.values
    return tuple(Fraction(v) for v in x)


def coalition_payoff(x: Sequence[Fraction], mask: int) -> Fraction:
    return sum((x[i] for i in members(mask)), ZERO)


def excess(game: VotingGame, mask: int, x) -> Fraction:
    x = _as_payoff(x)
    return game.value(mask) - coalition_payoff(x, mask)


def is_imputation(game: VotingGame, x) -> bool:
    x = _as_payoff(x)
    return (len(x) == game.n and sum(x) == 1
            and all(x[i] >= game.value(1 << i) for i in range(game.n)))


def excess_vector(game: VotingGame, x) -> list[Fraction]:
    """All ``2**n - 1`` excesses, sorted non-increasingly."""
    x = _as_payoff(x)
    if game.n > 20:
        raise CapabilityError("excess vector enumeration supports n <= 20")
    return sorted((excess(game, m, x) for m in range(1, 1 << game.n)), reverse=True)


# --- exact linear span ------------------------------------------------------------

class Span:
    """Incrementally maintained row-echelon basis of rational vectors."""

    def __init__(self, n: int):
        self.n = n
        self.rows: list[tuple[int, list[Fraction]]] = []  # (pivot column, row)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _reduce(self, vec) -> list[Fraction]:
        v = [Fraction(a) for a in vec]
        for p, row in self.rows:
            if v[p]:
                f = v[p]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def contains(self, vec) -> bool:
        return not any(self._reduce(vec))

    def add(self, vec) -> bool:
        v = self._reduce(vec)
        for p, a in enumerate(v):
            if a:
                row = [b / a for b in v]
                # keep the basis fully reduced so that _reduce is one pass
                self.rows = [(q, [c - r[p] * d for c, d in zip(r, row)]) if r[p] else (q, r)
                             for q, r in self.rows]
                self.rows.append((p, row))
                return True
        return False


def indicator(mask: int, n: int) -> list[int]:
    return [(mask >> i) & 1 for i in range(n)]


# --- separation oracles --------------------------------------------------------

def _dp_min_winning(game: VotingGame, x: Sequence[Fraction]) -> tuple[Fraction, int]:
    ws, q = game.int_rules[0]
    best: list[tuple[Fraction, int] | None] = [None] * (q + 1)
    best[0] = (ZERO, 0)
    for i, wi in enumerate(ws):
        new = list(best)
        bit = 1 << i
        xi = x[i]
        for w, cur in enumerate(best):
            if cur is None:
                continue
            w2 = min(q, w + wi)
            cand = (cur[0] + xi, cur[1] | bit)
            if new[w2] is None or cand < new[w2]:
                new[w2] = cand
        best = new
    return best[q]


@lru_cache(maxsize=4)
def _mwc_bits(game: VotingGame) -> tuple[np.ndarray, np.ndarray]:
    mwc = enumeration.scan(game).minimal_winning
    return mwc, enumeration.mask_bits(mwc, game.n).astype(np.float64)


def _table_min_winning(game: VotingGame, x: Sequence[Fraction]) -> tuple[Fraction, int]:
    masks, bits = _mwc_bits(game)
    costs = bits @ np.array([float(v) for v in x])
    near = np.flatnonzero(costs <= costs.min() + 1e-9)
    den = lcm(*(v.denominator for v in x))
    xi = [int(v * den) for v in x]
    if sum(abs(v) for v in xi) >= 2**62:
        return min((coalition_payoff(x, int(masks[k])), int(masks[k])) for k in near)
    # exact re-check of the float shortlist in integer units of 1/den
    exact = bits[near].astype(np.int64) @ np.array(xi, dtype=np.int64)
    best = exact.min()
    return Fraction(int(best), den), int(masks[near[exact == best]].min())


def _bb_min_winning(game: VotingGame, x: Sequence[Fraction]) -> tuple[Fraction, int]:
    """Depth-first branch and bound for ``min x(S)`` over winning ``S``."""
    n = game.n
    rules = game.int_rules
    order = sorted(range(n), key=lambda i: (x[i], i))
    suffix = [[0] * (n + 1) for _ in rules]
    for k, (ws, _) in enumerate(rules):
        for pos in range(n - 1, -1, -1):
            suffix[k][pos] = suffix[k][pos + 1] + ws[order[pos]]
    best = [None]

    def rec(pos, mask, cost, tots):
        if all(t >= q for t, (_, q) in zip(tots, rules)):
            cand = (cost, mask)
            if best[0] is None or cand < best[0]:
                best[0] = cand
            return
        if pos == n:
            return
        if best[0] is not None and cost > best[0][0]:
            return
        for k, (_, q) in enumerate(rules):
            if tots[k] + suffix[k][pos] < q:
                return
        i = order[pos]
        rec(pos + 1, mask | (1 << i), cost + x[i],
            [t + ws[i] for t, (ws, _) in zip(tots, rules)])
        rec(pos + 1, mask, cost, tots)

    rec(0, 0, ZERO, [0] * len(rules))
    return best[0]


def min_cost_winning(game: VotingGame, x: Sequence[Fraction], method: str = "auto") -> tuple[Fraction, int]:
    """Lexicographically smallest ``(x(S), S)`` over winning coalitions, for ``x >= 0``."""
    if method == "auto":
        if game.is_single_rule() and game.int_rules[0][1] <= 200_000:
            method = "dp"
        elif game.n <= enumeration.MAX_TABLE_PLAYERS and game.n > 12:
            method = "table"
        else:
            method = "bb"
    if method == "dp":
        return _dp_min_winning(game, x)
    if method == "table":
        return _table_min_winning(game, x)
    if method == "bb":
        return _bb_min_winning(game, x)
    raise ValueError(f"unknown separation method {method!r}")


def _coalitions_cheaper_than(x: Sequence[Fraction], bound: Fraction, n: int) -> Iterable[tuple[Fraction, int]]:
    """Every nonempty coalition with ``x(S) < bound`` (``x >= 0``)."""
    order = sorted(range(n), key=lambda i: (-x[i], i))
    stack = [(0, 0, ZERO)]
    while stack:
        pos, mask, cost = stack.pop()
        if pos == n:
            if mask:
                yield cost, mask
            continue
        i = order[pos]
        stack.append((pos + 1, mask, cost))
        c2 = cost + x[i]
        if c2 < bound:
            stack.append((pos + 1, mask | (1 << i), c2))


# --- the restricted master problem ------------------------------------------------

@dataclass
class Round:
    level: Fraction
    frozen: list[int]


@dataclass
class _Master:
    game: VotingGame
    fixed: list[tuple[int, Fraction]]  # (coalition, frozen excess level)
    pool: list[int]
    lp: RationalLP = field(init=False)
    ycol: dict[int, int] = field(init=False, default_factory=dict)

    def __post_init__(self):
        g = self.game
        n = g.n
        lp = RationalLP([0] * n + [1])
        ones = {i: 1 for i in range(n)}
        lp.add_column(ones, 1, "mu+")
        lp.add_column({i: -1 for i in range(n)}, -1, "mu-")
        self.scol = [lp.add_column({i: 1}, g.value(1 << i), ("s", i)) for i in range(n)]
        for mask, level in self.fixed:
            col = {i: 1 for i in members(mask)}
            rhs = g.value(mask) - level
            lp.add_column(col, rhs, ("z+", mask))
            lp.add_column({i: -1 for i in col}, -rhs, ("z-", mask))
        self.lp = lp
        for mask in self.pool:
            self.add(mask)

    def add(self, mask: int) -> None:
        if mask in self.ycol:
            return
        col = {i: 1 for i in members(mask)}
        col[self.game.n] = 1
        self.ycol[mask] = self.lp.add_column(col, self.game.value(mask), ("y", mask))

    def solve(self) -> tuple[list[Fraction], Fraction]:
        status = self.lp.solve()
        if status != "optimal":
            raise RuntimeError(f"least-core programme ended {status}")
        pi = self.lp.duals()
        return pi[:self.game.n], pi[self.game.n]

    def positive(self) -> tuple[list[int], list[int]]:
        vals = self.lp.values()
        coal = sorted(m for m, j in self.ycol.items() if vals[j] > 0)
        bounds = [i for i, j in enumerate(self.scol) if vals[j] > 0]
        return coal, bounds


def _singleton_columns(game: VotingGame, span: Span) -> list[int]:
    return [1 << i for i in range(game.n) if not span.contains(indicator(1 << i, game.n))]


@dataclass(frozen=True)
class LeastCoreResult:
    epsilon_star: Fraction
    witness: tuple[Fraction, ...]
    binding: frozenset[int]
    unique: bool
    columns_generated: int = 0


@dataclass(frozen=True)
class NucleolusCertificate:
    rounds: tuple[Round, ...]
    x: tuple[Fraction, ...]

    def render(self, game: VotingGame) -> str:
        lines = [f"# nucleolus certificate for {game.name}",
                 "payoff: " + " ".join(f"{lb}={v}" for lb, v in zip(game.labels, self.x))]
        for k, r in enumerate(self.rounds, 1):
            lines.append(f"round {k}: level {r.level}")
            for m in r.frozen:
                names = ",".join(game.labels[i] for i in members(m))
                lines.append(f"  frozen {m:#x} {{{names}}}")
        return "\n".join(lines) + "\n"


def _round_one(game: VotingGame, separation: str = "auto"):
    n = game.n
    grand = game.grand
    master = _Master(game, [], [1 << i for i in range(n)])
    while True:
        x, eps = master.solve()
        cost, mask = min_cost_winning(game, x, separation)
        if mask != grand and 1 - cost > eps:
            master.add(mask)
            continue
        return master, x, eps


def _face_bound(game: VotingGame, eps: Fraction, coeffs: Sequence[int], pool: Iterable[int],
                separation: str = "auto") -> Fraction:
    """``min coeffs.x`` over the least core ``{x imputation: e(S, x) <= eps}``.

    Dual with one row per player and coalition columns priced by the same
    separation oracle as the least-core programme.
    """
    n = game.n
    grand = game.grand
    lp = RationalLP(list(coeffs))
    lp.add_column({i: 1 for i in range(n)}, 1, "mu+")
    lp.add_column({i: -1 for i in range(n)}, -1, "mu-")
    for i in range(n):
        lp.add_column({i: 1}, game.value(1 << i), ("s", i))
    seen = set()

    def add(mask):
        if mask not in seen:
            seen.add(mask)
            lp.add_column({i: 1 for i in members(mask)}, game.value(mask) - eps, ("y", mask))

    for m in [1 << i for i in range(n)] + list(pool):
        add(m)
    while True:
        status = lp.solve()
        if status != "optimal":
            raise RuntimeError(f"least-core face programme ended {status}")
        x = lp.duals()
        cost, mask = min_cost_winning(game, x, separation)
        if mask != grand and 1 - cost > eps and mask not in seen:
            add(mask)
            continue
        return lp.objective()


def least_core_is_point(game: VotingGame, eps: Fraction, witness: Sequence[Fraction],
                        pool: Iterable[int] = (), separation: str = "auto",
                        pinned: Span | None = None) -> bool:
    """Whether every coordinate is pinned on the least core (up to 2n auxiliary LPs).

    ``pinned`` spans rows tight on the whole least core (positive duals, by
    complementary slackness); coordinates inside it need no probe.
    """
    pool = list(pool)
    n = game.n
    for i in range(n):
        e = [1 if k == i else 0 for k in range(n)]
        if pinned is not None and pinned.contains(e):
            continue
        if _face_bound(game, eps, e, pool, separation) != witness[i]:
            return False
        if -_face_bound(game, eps, [-v for v in e], pool, separation) != witness[i]:
            return False
    return True


def _find_violated(game: VotingGame, x, eps, span: Span) -> int | None:
    """Coalition outside ``span`` of maximal excess above ``eps`` (lowest mask on ties)."""
    n = game.n
    grand = game.grand
    best = None
    bound = max(1 - eps, -eps)
    for cost, mask in _coalitions_cheaper_than(x, bound, n):
        if mask == grand:
            continue
        e = game.value(mask) - cost
        if e <= eps:
            continue
        if best is not None and (e < best[0] or (e == best[0] and mask > best[1])):
            continue
        if span.contains(indicator(mask, n)):
            continue
        best = (e, mask)
    return None if best is None else best[1]


def check_imputations_exist(game: VotingGame) -> None:
    solo = [game.labels[i] for i in range(game.n) if game.value(1 << i)]
    if len(solo) > 1:
        raise GameError(f"imputation set is empty: {', '.join(solo)} each win alone")


def _solve(game: VotingGame, separation: str = "auto"):
    check_imputations_exist(game)
    n = game.n
    if n == 1:
        return LeastCoreResult(ZERO, (ONE,), frozenset(), True), NucleolusCertificate((), (ONE,))
    span = Span(n)
    span.add([1] * n)
    fixed: list[tuple[int, Fraction]] = []
    rounds: list[Round] = []

    master, x, eps = _round_one(game, separation)
    least = None
    while True:
        coal, bounds = master.positive()
        for m in coal:
            span.add(indicator(m, n))
            fixed.append((m, eps))
        for i in bounds:
            if span.add(indicator(1 << i, n)):
                fixed.append((1 << i, game.value(1 << i) - x[i]))
        rounds.append(Round(eps, coal))
        if least is None:
            # complementary slackness settles most games; otherwise probe the face
            unique = span.rank == n or least_core_is_point(
                game, eps, x, master.ycol, separation, pinned=span)
            least = LeastCoreResult(
                eps, tuple(x),
                frozenset(m for m in master.ycol if game.value(m) - coalition_payoff(x, m) == eps),
                unique, len(master.ycol))
            if unique:
                return least, NucleolusCertificate(tuple(rounds), tuple(x))
        if span.rank == n:
            return least, NucleolusCertificate(tuple(rounds), tuple(x))
        pool = [m for m in master.ycol if not span.contains(indicator(m, n))]
        pool += [m for m in _singleton_columns(game, span) if m not in pool]
        master = _Master(game, list(fixed), pool)
        while True:
            x, eps = master.solve()
            mask = _find_violated(game, x, eps, span)
            if mask is None:
                break
            master.add(mask)


@lru_cache(maxsize=64)
def _solve_cached(game: VotingGame, separation: str):
    return _solve(game, separation)


def least_core(game: VotingGame, separation: str = "auto") -> LeastCoreResult:
    return _solve_cached(game, separation)[0]


def nucleolus(game: VotingGame, separation: str = "auto") -> PowerProfile:
    _, cert = _solve_cached(game, separation)
    return PowerProfile(cert.x, "nucleolus", tuple(game.labels))


def nucleolus_certificate(game: VotingGame, separation: str = "auto") -> NucleolusCertificate:
    return _solve_cached(game, separation)[1]


def core_nonempty(game: VotingGame) -> bool:
    return least_core(game).epsilon_star <= 0


def max_excess(game: VotingGame, x) -> tuple[Fraction, int]:
    """Largest excess over proper nonempty coalitions, by exhaustive table scan.

    Shares no code with the separation oracles, so it can audit them.
    Returns ``(excess, coalition)``; ties go to the lowest bit pattern.
    """
    x = _as_payoff(x)
    n = game.n
    if n == 1:
        return ZERO, 0
    den = lcm(*(v.denominator for v in x))
    xi = [int(v * den) for v in x]
    if sum(xi) >= 2**62:
        raise CapabilityError("payoff denominators too large for the table scan")
    win = enumeration.winning_table(game)
    n_lo = min(n, 14)
    lo = enumeration._subset_sums(xi[:n_lo])
    hi = enumeration._subset_sums(xi[n_lo:])
    view = win.reshape(len(hi), len(lo))
    rows = max(1, (1 << 22) // len(lo))
    best = None
    floor = np.iinfo(np.int64).min
    for start in range(0, len(hi), rows):
        cost = hi[start:start + rows, None] + lo[None, :]
        exc = np.where(view[start:start + rows], den - cost, -cost)
        if start == 0:
            exc[0, 0] = floor  # empty coalition
        if start + rows >= len(hi):
            exc[-1, -1] = floor  # grand coalition
        k = int(np.argmax(exc))
        val = int(exc.flat[k])
        if best is None or val > best[0]:
            best = (val, start * len(lo) + k)
    return Fraction(best[0], den), best[1]


def verify_certificate(game: VotingGame, cert: NucleolusCertificate) -> bool:
    """Independent audit: no coalition's excess exceeds the top frozen level,
    and every frozen coalition sits exactly at its recorded level."""
    x = cert.x
    if not is_imputation(game, x):
        return False
    if not cert.rounds:
        return True
    top = max(r.level for r in cert.rounds)
    worst, _ = max_excess(game, x)
    if worst > top:
        return False
    return all(excess(game, m, x) == r.level for r in cert.rounds for m in r.frozen)


# --- sequential-LP oracle over the explicit coalition list ------------------------

def _nullspace_int(basis: list[list[Fraction]], n: int) -> np.ndarray:
    """Integer matrix whose columns span the orthogonal complement of ``basis``."""
    rows = [list(r) for r in basis]
    piv_cols = []
    r = 0
    for c in range(n):
        p = next((k for k in range(r, len(rows)) if rows[k][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = rows[r][c]
        rows[r] = [v / inv for v in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][c]:
                f = rows[k][c]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
        piv_cols.append(c)
        r += 1
    free = [c for c in range(n) if c not in piv_cols]
    vecs = []
    for fc in free:
        v = [ZERO] * n
        v[fc] = ONE
        for k, pc in enumerate(piv_cols):
            v[pc] = -rows[k][fc]
        d = lcm(*(a.denominator for a in v))
        vecs.append([int(a * d) for a in v])
    return np.array(vecs, dtype=object).T if vecs else np.zeros((n, 0), dtype=object)


def nucleolus_oracle(game: VotingGame) -> PowerProfile:
    """Nucleolus by sequential LPs over all ``2**n - 2`` proper coalitions.

    Every round prices the complete coalition list; frozen coalitions are
    those carrying positive dual weight, the remaining list is filtered by
    an explicit null-space test, and the final payoff is recovered by
    solving the frozen equality system.
    """
    n = game.n
    if n > ORACLE_MAX_PLAYERS:
        raise CapabilityError(
            f"nucleolus oracle supports n <= {ORACLE_MAX_PLAYERS}, game has n = {n}")
    if n == 1:
        return PowerProfile((ONE,), "nucleolus", tuple(game.labels))
    masks = np.arange(1, (1 << n) - 1, dtype=np.int64)
    bits = enumeration.mask_bits(masks, n).astype(object)
    win = enumeration.winning_table(game)[masks]
    value = win.astype(np.int64)
    lower = [game.value(1 << i) for i in range(n)]
    if sum(lower) > 1:
        raise GameError("imputation set is empty")

    equalities: list[tuple[list[int], Fraction]] = [([1] * n, ONE)]
    live = np.ones(len(masks), dtype=bool)
    basis: list[list[Fraction]] = [[ONE] * n]

    while True:
        lp = RationalLP([0] * n + [1])
        for coeffs, rhs in equalities:
            col = {i: c for i, c in enumerate(coeffs) if c}
            lp.add_column(col, rhs, "eq+")
            lp.add_column({i: -c for i, c in col.items()}, -rhs, "eq-")
        scols = [lp.add_column({i: 1}, lower[i], ("s", i)) for i in range(n)]
        cols: dict[int, int] = {}
        # seed with every live coalition of size one so the dual is feasible
        for k in np.flatnonzero(live & (bits.sum(axis=1) == 1)):
            cols[int(k)] = lp.add_column(
                {**{i: 1 for i in range(n) if bits[k, i]}, n: 1}, int(value[k]), ("y", int(k)))
        if not cols:
            k = int(np.flatnonzero(live)[0])
            cols[k] = lp.add_column({**{i: 1 for i in range(n) if bits[k, i]}, n: 1},
                                    int(value[k]), ("y", k))
        while True:
            assert lp.solve() == "optimal"
            pi = lp.duals()
            d = lcm(*(p.denominator for p in pi))
            pint = np.array([int(p * d) for p in pi], dtype=object)
            # reduced cost * d = v(S)*d - x(S)*d - eps*d
            red = value.astype(object) * d - bits.dot(pint[:n]) - pint[n]
            red[~live] = 0
            k = int(np.argmax(red))
            if red[k] <= 0:
                break
            cols[k] = lp.add_column({**{i: 1 for i in range(n) if bits[k, i]}, n: 1},
                                    int(value[k]), ("y", k))
        eps = pi[n]
        vals = lp.values()
        tight = [k for k, j in cols.items() if vals[j] > 0]
        for k in tight:
            row = [int(b) for b in bits[k]]
            equalities.append((row, Fraction(int(value[k])) - eps))
            basis.append([Fraction(b) for b in row])
        for i, j in enumerate(scols):
            if vals[j] > 0:
                row = [1 if t == i else 0 for t in range(n)]
                equalities.append((row, lower[i]))
                basis.append([Fraction(b) for b in row])
        null = _nullspace_int(basis, n)
        if null.shape[1] == 0:
            return PowerProfile(_solve_equalities(equalities, n), "nucleolus", tuple(game.labels))
        live &= np.any(bits.dot(null) != 0, axis=1)


def _solve_equalities(eqs: list[tuple[list[int], Fraction]], n: int) -> tuple[Fraction, ...]:
    rows = [[Fraction(c) for c in coeffs] + [Fraction(r)] for coeffs, r in eqs]
    piv = []
    r = 0
    for c in range(n):
        p = next((k for k in range(r, len(rows)) if rows[k][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = rows[r][c]
        rows[r] = [v / inv for v in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][c]:
                f = rows[k][c]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
        piv.append(c)
        r += 1
    if len(piv) != n:
        raise RuntimeError("frozen system is not of full rank")
    if any(row[n] for row in rows[r:]):
        raise RuntimeError("frozen system is inconsistent")
    return tuple(rows[k][n] for k in range(n))


# --- bargaining set ---------------------------------------------------------------

def _objection_slack(game: VotingGame, x, i: int, j: int, s: int) -> Fraction | None:
    """Largest ``t >= 0`` such that some objection ``y`` of ``i`` against ``j``
    via ``s`` beats ``x`` by ``t`` on ``s`` and beats every counter-objection
    coalition by ``t``.  ``None`` if even ``t = 0`` is infeasible."""
    n = game.n
    mem = members(s)
    delta = game.value(s) - coalition_payoff(x, s)
    ts = [t for t in range(1, 1 << n) if t >> j & 1 and not t >> i & 1]
    # y = x + u on S.  Rows: u_k - t - a_k = 0 (k in S); sum u = delta;
    # per T: u(T∩S) - t - r_T = v(T) - x(T)
    rhs = [ZERO] * len(mem) + [delta]
    for t in ts:
        rhs.append(game.value(t) - coalition_payoff(x, t))
    lp = RationalLP(rhs)
    pos = {k: r for r, k in enumerate(mem)}
    for k in mem:
        col = {pos[k]: 1, len(mem): 1}
        for r, t in enumerate(ts):
            if t >> k & 1:
                col[len(mem) + 1 + r] = 1
        lp.add_column(col, 0, ("u", k))
    tcol = {r: -1 for r in range(len(mem))}
    for r in range(len(ts)):
        tcol[len(mem) + 1 + r] = -1
    jt = lp.add_column(tcol, 1, "t")
    for r in range(len(mem)):
        lp.add_column({r: -1}, 0, ("a", r))
    for r in range(len(ts)):
        lp.add_column({len(mem) + 1 + r: -1}, 0, ("r", r))
    status = lp.solve()
    if status == "infeasible":
        return None
    if status == "unbounded":
        raise RuntimeError("objection programme unbounded")
    return lp.value(jt)


def has_justified_objection(game: VotingGame, x) -> tuple[bool, tuple[int, int] | None]:
    """Whether some player has an objection that admits no counter-objection.

    Returns ``(True, (i, j))`` for the first justified objection of ``i``
    against ``j`` found, else ``(False, None)``.
    """
    n = game.n
    if n > OBJECTION_MAX_PLAYERS:
        raise CapabilityError(
            f"objection search supports n <= {OBJECTION_MAX_PLAYERS}, game has n = {n}")
    x = _as_payoff(x)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for s in range(1, 1 << n):
                if not s >> i & 1 or s >> j & 1:
                    continue
                if game.value(s) <= coalition_payoff(x, s):
                    continue  # no objection through s
                slack = _objection_slack(game, x, i, j, s)
                if slack is not None and slack > 0:
                    return True, (i, j)
    return False, None


def in_bargaining_set(game: VotingGame, x) -> bool:
    return not has_justified_objection(game, x)[0]
