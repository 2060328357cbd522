"""Shapley-Shubik index and the related a-priori power indices.

All results are exact rationals.  Two independent routes compute the swing
counts the Shapley-Shubik and Banzhaf indices need:

* ``"dp"``: counting subsets by (cardinality, weight) for single-rule games
  with integer weights, removing each player from the full table by
  deconvolution;
* ``"enumerate"``: a sweep over every coalition (:mod:`powerkit.enumeration`).

Definitions of the remaining indices (normalised to sum to one):

* Johnston: in every winning coalition with ``c > 0`` critical members each
  critical member scores ``1/c``;
* Deegan-Packel: in every minimal winning coalition ``S`` each member scores
  ``1/|S|``;
* Public Good (Holler): the number of minimal winning coalitions a player
  belongs to.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from . import enumeration
from .game import (
    MAX_ENUM_PLAYERS,
    CapabilityError,
    VotingGame,
    members,
    minimal_winning_coalitions,
)

KINDS = ("ssi", "banzhaf", "johnston", "deegan_packel", "public_good", "nucleolus")

# the DP table has n * quota cells
_DP_MAX_QUOTA = 2_000_000


@dataclass(frozen=True)
class PowerProfile:
    values: tuple[Fraction, ...]
    kind: str
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if any(v < 0 for v in self.values):
            raise ValueError(f"{self.kind}: negative entry in power profile")
        if sum(self.values) != 1:
            raise ValueError(f"{self.kind}: profile sums to {sum(self.values)}, not 1")

    def __getitem__(self, i):
        return self.values[i]

    def __len__(self):
        return len(self.values)

    def as_dict(self) -> dict[str, Fraction]:
        return dict(zip(self.labels, self.values))

    def floats(self) -> list[float]:
        return [float(v) for v in self.values]


def _profile(raw: Sequence, kind: str, game: VotingGame) -> PowerProfile:
    total = sum(raw, Fraction(0))
    if total == 0:
        raise ValueError(f"{kind}: no player has any power")
    return PowerProfile(tuple(Fraction(r) / total for r in raw), kind, tuple(game.labels))


def dp_applicable(game: VotingGame) -> bool:
    if not game.is_single_rule():
        return False
    _, q = game.int_rules[0]
    return q <= _DP_MAX_QUOTA


def swing_counts_dp(game: VotingGame) -> list[list[int]]:
    """``swings[i][k]``: coalitions T of size k without i, T losing, T+i winning."""
    if not dp_applicable(game):
        raise CapabilityError("DP path needs a single rule with a moderate integer quota")
    ws, q = game.int_rules[0]
    n = game.n
    # full[k][w] = #subsets of all players with size k and weight w, for w < q
    full = [[0] * q for _ in range(n + 1)]
    full[0][0] = 1
    for wi in ws:
        for k in range(n, 0, -1):
            row, prev = full[k], full[k - 1]
            for w in range(q - 1, wi - 1, -1):
                if prev[w - wi]:
                    row[w] += prev[w - wi]
    swings = []
    for i, wi in enumerate(ws):
        # without[k][w] = full[k][w] - without[k-1][w-wi]
        without = [[0] * q for _ in range(n)]
        for k in range(n):
            row, src = without[k], full[k]
            below = without[k - 1] if k else None
            for w in range(q):
                v = src[w]
                if k and w >= wi:
                    v -= below[w - wi]
                row[w] = v
        lo = max(0, q - wi)
        swings.append([sum(without[k][lo:q]) for k in range(n)])
    return swings


def swing_counts(game: VotingGame, method: str = "auto") -> list[list[int]]:
    if method == "auto":
        method = "dp" if dp_applicable(game) else "enumerate"
    if method == "dp":
        return swing_counts_dp(game)
    if method == "enumerate":
        return [list(s) for s in enumeration.scan(game).swings]
    raise ValueError(f"unknown method {method!r}")


def shapley_shubik(game: VotingGame, method: str = "auto") -> PowerProfile:
    n = game.n
    coef = [Fraction(factorial(k) * factorial(n - k - 1), factorial(n)) for k in range(n)]
    sw = swing_counts(game, method)
    raw = [sum((c * coef[k] for k, c in enumerate(row)), Fraction(0)) for row in sw]
    return _profile(raw, "ssi", game)


def banzhaf(game: VotingGame, method: str = "auto") -> PowerProfile:
    sw = swing_counts(game, method)
    return _profile([sum(row) for row in sw], "banzhaf", game)


def raw_banzhaf(game: VotingGame, method: str = "auto") -> list[int]:
    return [sum(row) for row in swing_counts(game, method)]


def _mwcs(game: VotingGame) -> list[int]:
    if game.n <= enumeration.MAX_TABLE_PLAYERS and game.n > 16:
        return [int(m) for m in enumeration.scan(game).minimal_winning]
    if game.n > MAX_ENUM_PLAYERS:
        raise CapabilityError(
            f"minimal winning coalitions need n <= {MAX_ENUM_PLAYERS}, game has n = {game.n}")
    return sorted(minimal_winning_coalitions(game))


def johnston(game: VotingGame) -> PowerProfile:
    return _profile(list(enumeration.scan(game, johnston=True).johnston_raw), "johnston", game)


def deegan_packel(game: VotingGame) -> PowerProfile:
    raw = [Fraction(0)] * game.n
    for m in _mwcs(game):
        mem = members(m)
        share = Fraction(1, len(mem))
        for i in mem:
            raw[i] += share
    return _profile(raw, "deegan_packel", game)


def public_good(game: VotingGame) -> PowerProfile:
    raw = [0] * game.n
    for m in _mwcs(game):
        for i in members(m):
            raw[i] += 1
    return _profile(raw, "public_good", game)


def coalition_value_under_profile(profile: PowerProfile, mask: int) -> Fraction:
    return sum((profile.values[i] for i in members(mask)), Fraction(0))


def compute(game: VotingGame, kind: str) -> PowerProfile:
    """Dispatch by index name (``ssi``, ``banzhaf``, ..., ``nucleolus``)."""
    if kind == "ssi":
        return shapley_shubik(game)
    if kind == "banzhaf":
        return banzhaf(game)
    if kind == "johnston":
        return johnston(game)
    if kind == "deegan_packel":
        return deegan_packel(game)
    if kind == "public_good":
        return public_good(game)
    if kind == "nucleolus":
        from .solution import nucleolus
        return nucleolus(game)
    raise ValueError(f"unknown index {kind!r}; choose from {', '.join(KINDS)}")
