"""Simple voting games given as intersections of weighted rules.

Coalitions are plain ints used as bit patterns: bit ``i`` set means player
``i`` is a member.  Weights and quotas are exact :class:`~fractions.Fraction`
values; a coalition passes a rule when its total weight is ``>=`` the quota.
"""

from __future__ import annotations

import json
import math
import numbers
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator, Sequence

MAX_PLAYERS = 64
MAX_ENUM_PLAYERS = 30


class GameError(ValueError):
    """Malformed game definition."""


class CapabilityError(RuntimeError):
    """The requested computation is outside the supported size range."""


def to_fraction(value) -> Fraction:
    """Parse ints, floats, ``"p/q"`` strings or decimals into an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise GameError(f"not a number: {value!r}")
    if isinstance(value, numbers.Rational):
        return Fraction(value)
    if isinstance(value, float):
        # floats in game files are decimal literals, e.g. 0.62
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise GameError(f"cannot parse rational {value!r}") from exc
    raise GameError(f"not a number: {value!r}")


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def members(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(ids: Iterable[int]) -> int:
    m = 0
    for i in ids:
        m |= 1 << i
    return m


@dataclass(frozen=True)
class Player:
    id: int
    label: str


@dataclass(frozen=True)
class WeightedRule:
    weights: tuple[Fraction, ...]
    quota: Fraction

    def __post_init__(self):
        ws = tuple(to_fraction(w) for w in self.weights)
        q = to_fraction(self.quota)
        object.__setattr__(self, "weights", ws)
        object.__setattr__(self, "quota", q)
        if any(w < 0 for w in ws):
            raise GameError("negative weight")
        if q <= 0:
            raise GameError(f"quota must be positive, got {q}")
        if q > sum(ws):
            raise GameError(
                f"void game: quota {q} exceeds total weight {sum(ws)}")

    @property
    def total(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def weight_of(self, mask: int) -> Fraction:
        return sum((self.weights[i] for i in members(mask)), Fraction(0))

    def passes(self, mask: int) -> bool:
        return self.weight_of(mask) >= self.quota

    def integer_form(self) -> tuple[tuple[int, ...], int]:
        """Equivalent rule with integer weights and quota (same winning sets)."""
        den = math.lcm(*(w.denominator for w in self.weights), self.quota.denominator)
        ws = tuple(int(w * den) for w in self.weights)
        q = int(self.quota * den)
        g = math.gcd(q, *ws)
        return tuple(w // g for w in ws), q // g

    def scaled(self, factor) -> "WeightedRule":
        f = to_fraction(factor)
        if f <= 0:
            raise GameError("scale factor must be positive")
        return WeightedRule(tuple(w * f for w in self.weights), self.quota * f)


@dataclass(frozen=True)
class VotingGame:
    players: tuple[Player, ...]
    rules: tuple[WeightedRule, ...]
    name: str = "game"
    _int_rules: tuple = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self):
        players = tuple(self.players)
        rules = tuple(self.rules)
        object.__setattr__(self, "players", players)
        object.__setattr__(self, "rules", rules)
        n = len(players)
        if n == 0:
            raise GameError("a game needs at least one player")
        if n > MAX_PLAYERS:
            raise GameError(f"at most {MAX_PLAYERS} players are supported, got {n}")
        if [p.id for p in players] != list(range(n)):
            raise GameError("player ids must be 0..n-1 in order")
        if not rules:
            raise GameError("a game needs at least one rule")
        for r in rules:
            if len(r.weights) != n:
                raise GameError(
                    f"rule has {len(r.weights)} weights for {n} players")
        object.__setattr__(self, "_int_rules", tuple(r.integer_form() for r in rules))

    @property
    def n(self) -> int:
        return len(self.players)

    @property
    def labels(self) -> list[str]:
        return [p.label for p in self.players]

    @property
    def grand(self) -> int:
        return (1 << self.n) - 1

    @property
    def int_rules(self) -> tuple[tuple[tuple[int, ...], int], ...]:
        return self._int_rules

    def is_single_rule(self) -> bool:
        return len(self.rules) == 1

    def index(self, label: str) -> int:
        for p in self.players:
            if p.label == label:
                return p.id
        raise KeyError(label)

    def coalition(self, labels: Iterable[str]) -> int:
        return mask_of(self.index(lb) for lb in labels)

    def is_winning(self, mask: int) -> bool:
        if mask >> self.n:
            raise GameError(f"coalition {mask:#x} has bits outside the {self.n} players")
        for ws, q in self._int_rules:
            tot = 0
            m, i = mask, 0
            while m:
                if m & 1:
                    tot += ws[i]
                m >>= 1
                i += 1
            if tot < q:
                return False
        return True

    def value(self, mask: int) -> int:
        return 1 if mask and self.is_winning(mask) else 0

    def scaled(self, factors: Sequence) -> "VotingGame":
        """Same game with rule ``k`` rescaled by ``factors[k]``."""
        rules = tuple(r.scaled(f) for r, f in zip(self.rules, factors, strict=True))
        return VotingGame(self.players, rules, self.name)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "members": self.labels,
            "rules": [
                {"weights": [str(w) for w in r.weights], "quota": str(r.quota)}
                for r in self.rules
            ],
        }


def _players(labels: Sequence[str]) -> tuple[Player, ...]:
    labels = [str(lb) for lb in labels]
    if len(set(labels)) != len(labels):
        raise GameError("duplicate player labels")
    return tuple(Player(i, lb) for i, lb in enumerate(labels))


def make_weighted_game(labels: Sequence[str], weights: Sequence, quota,
                       name: str = "weighted") -> VotingGame:
    if len(labels) != len(weights):
        raise GameError(f"{len(labels)} labels but {len(weights)} weights")
    return VotingGame(_players(labels), (WeightedRule(tuple(weights), quota),), name)


def make_game(labels: Sequence[str], rules: Sequence[tuple[Sequence, object]],
              name: str = "game") -> VotingGame:
    return VotingGame(_players(labels),
                      tuple(WeightedRule(tuple(w), q) for w, q in rules), name)


def intersect_games(games: Sequence[VotingGame], name: str | None = None) -> VotingGame:
    if not games:
        raise GameError("nothing to intersect")
    base = games[0]
    for g in games[1:]:
        if g.labels != base.labels:
            raise GameError("games are defined over different players")
    rules = tuple(r for g in games for r in g.rules)
    return VotingGame(base.players, rules, name or base.name)


def load_game(path) -> VotingGame:
    path = Path(path)
    with open(path) as fh:
        doc = json.load(fh)
    return game_from_dict(doc, source=str(path))


def game_from_dict(doc: dict, source: str = "<dict>") -> VotingGame:
    try:
        labels = doc["members"]
        rules = [(r["weights"], r["quota"]) for r in doc["rules"]]
    except (KeyError, TypeError) as exc:
        raise GameError(f"{source}: missing field {exc}") from exc
    try:
        return make_game(labels, rules, name=doc.get("name", Path(source).stem))
    except GameError as exc:
        raise GameError(f"{source}: {exc}") from exc


# --- structural queries -------------------------------------------------------

def _check_enum(game: VotingGame, limit: int = MAX_ENUM_PLAYERS) -> None:
    if game.n > limit:
        raise CapabilityError(
            f"exhaustive enumeration supports n <= {limit}, game has n = {game.n}")


def iter_winning(game: VotingGame) -> Iterator[int]:
    _check_enum(game)
    for mask in range(1, 1 << game.n):
        if game.is_winning(mask):
            yield mask


def minimal_winning_coalitions(game: VotingGame) -> set[int]:
    """Winning coalitions all of whose proper subsets lose.

    Depth-first over players with pruning: a branch is abandoned once the
    remaining players cannot lift any rule to its quota.
    """
    _check_enum(game)
    n = game.n
    rules = game.int_rules
    suffix = [[0] * (n + 1) for _ in rules]
    for k, (ws, _) in enumerate(rules):
        for i in range(n - 1, -1, -1):
            suffix[k][i] = suffix[k][i + 1] + ws[i]
    out: set[int] = set()

    def is_min(mask):
        for i in members(mask):
            if game.is_winning(mask & ~(1 << i)):
                return False
        return True

    def rec(i, mask, tots):
        if all(t >= q for t, (_, q) in zip(tots, rules)):
            if is_min(mask):
                out.add(mask)
            return  # supersets are not minimal
        if i == n:
            return
        for k, (_, q) in enumerate(rules):
            if tots[k] + suffix[k][i] < q:
                return
        rec(i + 1, mask | (1 << i), [t + ws[i] for t, (ws, _) in zip(tots, rules)])
        rec(i + 1, mask, tots)

    rec(0, 0, [0] * len(rules))
    return out


def critical_players(game: VotingGame, mask: int) -> list[int]:
    if not game.is_winning(mask):
        return []
    return [i for i in members(mask) if not game.is_winning(mask & ~(1 << i))]


def dummies(game: VotingGame) -> set[int]:
    """Players that are critical in no winning coalition.

    A player is non-dummy iff it is critical in some minimal winning
    coalition, and every member of a minimal winning coalition is critical.
    """
    active = 0
    for m in minimal_winning_coalitions(game):
        active |= m
    return {i for i in range(game.n) if not active >> i & 1}


def vetoers(game: VotingGame) -> set[int]:
    # i is a vetoer iff N \ {i} loses
    return {i for i in range(game.n) if not game.is_winning(game.grand & ~(1 << i))}


def subsets_of_size(n: int, k: int) -> Iterator[int]:
    for c in combinations(range(n), k):
        yield mask_of(c)
