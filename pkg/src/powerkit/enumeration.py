"""Vectorised exhaustive enumeration of all 2**n coalitions.

The winning table is a flat boolean array indexed by coalition bit pattern.
It is built from a low/high split of the players so that per-rule weight
sums never need a full ``2**n`` integer array.  Per-player passes view the
table as ``(2**(n-1-i), 2, 2**i)``: slice ``[:, 0, :]`` are coalitions
without player ``i`` and ``[:, 1, :]`` the same coalitions with ``i`` added.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .game import CapabilityError, VotingGame

# 2**28 booleans plus the popcount table is ~0.6 GB of working memory.
MAX_TABLE_PLAYERS = 28
_CHUNK = 1 << 22


def _subset_sums(ws) -> np.ndarray:
    arr = np.zeros(1, dtype=np.int64)
    for w in ws:
        arr = np.concatenate([arr, arr + w])
    return arr


def popcounts(n: int) -> np.ndarray:
    arr = np.zeros(1, dtype=np.uint8)
    for _ in range(n):
        arr = np.concatenate([arr, arr + 1])
    return arr


def _check(game: VotingGame) -> None:
    if game.n > MAX_TABLE_PLAYERS:
        raise CapabilityError(
            f"coalition table supports n <= {MAX_TABLE_PLAYERS}, game has n = {game.n}")
    for ws, q in game.int_rules:
        if sum(ws) >= 2**62:
            raise CapabilityError("rule weights too large for 64-bit enumeration")


def winning_table(game: VotingGame) -> np.ndarray:
    """Boolean array ``W`` with ``W[mask]`` true iff ``mask`` wins (``W[0]`` false)."""
    _check(game)
    n = game.n
    n_lo = min(n, 14)
    n_hi = n - n_lo
    size_lo = 1 << n_lo
    win = np.ones(1 << n, dtype=bool)
    view = win.reshape(1 << n_hi, size_lo)
    rows = max(1, _CHUNK // size_lo)
    for ws, q in game.int_rules:
        lo = _subset_sums(ws[:n_lo])
        hi = _subset_sums(ws[n_lo:])
        for start in range(0, 1 << n_hi, rows):
            block = hi[start:start + rows, None] + lo[None, :]
            view[start:start + rows] &= block >= q
    win[0] = False
    return win


@dataclass(frozen=True)
class Scan:
    """Exact counts gathered by one sweep over the coalition table.

    ``swings[i][k]`` is the number of coalitions ``T`` with ``i`` not in ``T``,
    ``|T| = k``, ``T`` losing and ``T + i`` winning.
    """

    n: int
    swings: tuple[tuple[int, ...], ...]
    minimal_winning: np.ndarray  # sorted int64 bit patterns
    johnston_raw: tuple[Fraction, ...] | None = None


def _player_view(arr: np.ndarray, n: int, i: int) -> np.ndarray:
    return arr.reshape(1 << (n - 1 - i), 2, 1 << i)


@lru_cache(maxsize=8)
def scan(game: VotingGame, johnston: bool = False) -> Scan:
    n = game.n
    win = winning_table(game)
    pc = popcounts(n)
    nonmin = np.zeros_like(win)
    ccount = np.zeros(1 << n, dtype=np.uint8) if johnston else None
    swings = []
    for i in range(n):
        w3 = _player_view(win, n, i)
        with_i, without_i = w3[:, 1, :], w3[:, 0, :]
        crit = with_i & ~without_i
        sizes = _player_view(pc, n, i)[:, 0, :][crit]
        swings.append(tuple(int(c) for c in np.bincount(sizes, minlength=n)[:n]))
        _player_view(nonmin, n, i)[:, 1, :] |= with_i & without_i
        if johnston:
            _player_view(ccount, n, i)[:, 1, :] += crit
        del crit, sizes
    mwc = np.flatnonzero(win & ~nonmin).astype(np.int64)
    del nonmin
    jraw = None
    if johnston:
        vals = []
        for i in range(n):
            w3 = _player_view(win, n, i)
            crit = w3[:, 1, :] & ~w3[:, 0, :]
            cnt = np.bincount(_player_view(ccount, n, i)[:, 1, :][crit], minlength=n + 1)
            vals.append(sum((Fraction(int(c), k) for k, c in enumerate(cnt) if k and c),
                            Fraction(0)))
        jraw = tuple(vals)
    return Scan(n, tuple(swings), mwc, jraw)


def mask_bits(masks: np.ndarray, n: int) -> np.ndarray:
    """``(len(masks), n)`` 0/1 matrix of coalition memberships."""
    return ((masks[:, None] >> np.arange(n, dtype=np.int64)[None, :]) & 1).astype(np.int8)
