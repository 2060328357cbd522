"""EU Council of Ministers voting configurations, 1958-2012.

Each configuration file is a game file (``name``, ``members``, ``rules``)
extended with ``period: [first_year, last_year]``, a ``source_note`` and,
for the Nice-era games, a population vector plus ``population_quota_share``;
the population vector becomes one more weighted rule with quota
``share * total population``.
"""

from __future__ import annotations

import csv
import json
import os
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .game import GameError, VotingGame, WeightedRule, make_game, to_fraction
from .indices import PowerProfile, compute
from .report import round_half_even

DATA_ENV = "POWERKIT_DATA"
PANEL_YEARS = range(1976, 2013)
NICE_START = 2003
# printed values are 3-decimal; the Nice era also depends on population vintage
TOLERANCE = Decimal("0.0005")
NICE_TOLERANCE = Decimal("0.002")


def default_tolerance(period_start: int) -> Decimal:
    return NICE_TOLERANCE if period_start >= NICE_START else TOLERANCE


def data_dir() -> Path:
    """Shipped data directory, or ``$POWERKIT_DATA`` when set."""
    env = os.environ.get(DATA_ENV)
    if env:
        return Path(env)
    return Path(str(resources.files("powerkit") / "data"))


def council_dir() -> Path:
    base = data_dir()
    return base / "council" if (base / "council").is_dir() else base


@dataclass(frozen=True)
class CouncilConfig:
    period: tuple[int, int]
    members: tuple[str, ...]
    rules: tuple[WeightedRule, ...]
    name: str
    source_note: str = ""
    path: str = ""

    @property
    def start(self) -> int:
        return self.period[0]

    def covers(self, year: int) -> bool:
        return self.period[0] <= year <= self.period[1]

    def game(self) -> VotingGame:
        return make_game(self.members, [(r.weights, r.quota) for r in self.rules], self.name)


def config_from_dict(doc: dict, source: str = "<dict>") -> CouncilConfig:
    try:
        members = tuple(doc["members"])
        a, b = (int(y) for y in doc["period"])
        rules = [WeightedRule(tuple(r["weights"]), r["quota"]) for r in doc["rules"]]
        if "populations" in doc:
            pops = tuple(to_fraction(p) for p in doc["populations"])
            share = to_fraction(doc.get("population_quota_share", "62/100"))
            rules.append(WeightedRule(pops, share * sum(pops)))
    except (KeyError, TypeError, ValueError) as exc:
        raise GameError(f"{source}: malformed council file ({exc})") from exc
    if a > b:
        raise GameError(f"{source}: period {a}-{b} is reversed")
    cfg = CouncilConfig((a, b), members, tuple(rules), doc.get("name", Path(source).stem),
                        doc.get("source_note", ""), source)
    try:
        cfg.game()
    except GameError as exc:
        raise GameError(f"{source}: {exc}") from exc
    return cfg


def load_council_configs(path=None) -> list[CouncilConfig]:
    path = Path(path) if path is not None else council_dir()
    if not path.is_dir():
        raise GameError(f"{path}: not a directory")
    configs = []
    for f in sorted(path.glob("*.json")):
        with open(f) as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise GameError(f"{f}: invalid JSON ({exc})") from exc
        configs.append(config_from_dict(doc, str(f)))
    configs.sort(key=lambda c: c.period)
    for prev, cur in zip(configs, configs[1:]):
        if cur.period[0] <= prev.period[1]:
            raise GameError(f"{cur.path}: period {cur.period} overlaps {prev.path} {prev.period}")
    return configs


def config_for_year(configs: Sequence[CouncilConfig], year: int) -> CouncilConfig:
    hits = [c for c in configs if c.covers(year)]
    if len(hits) != 1:
        raise GameError(f"year {year} is covered by {len(hits)} configurations")
    return hits[0]


# --- rendering ---------------------------------------------------------------

@dataclass(frozen=True)
class PowerRow:
    country: str
    values: dict  # kind -> Fraction


@dataclass(frozen=True)
class PowerTable:
    period: tuple[int, int]
    name: str
    kinds: tuple[str, ...]
    rows: tuple[PowerRow, ...]

    def column(self, kind: str) -> dict[str, Fraction]:
        return {r.country: r.values[kind] for r in self.rows}


def period_power_table(config: CouncilConfig, kinds: Iterable[str] = ("ssi", "nucleolus")) -> PowerTable:
    game = config.game()
    kinds = tuple(kinds)
    profiles: dict[str, PowerProfile] = {k: compute(game, k) for k in kinds}
    rows = tuple(PowerRow(c, {k: profiles[k].values[i] for k in kinds})
                 for i, c in enumerate(config.members))
    return PowerTable(config.period, config.name, kinds, rows)


# --- reference comparison ---------------------------------------------------------

@dataclass(frozen=True)
class ReferenceCell:
    period: int
    country: str
    index: str
    value: Decimal


def load_reference(path=None) -> list[ReferenceCell]:
    path = Path(path) if path is not None else data_dir() / "reference.csv"
    out = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            out.append(ReferenceCell(int(row["period"]), row["country"],
                                     row["index"].strip().lower(), Decimal(row["value"])))
    return out


def load_allowlist(path=None) -> set[tuple[int, str, str]]:
    path = Path(path) if path is not None else data_dir() / "allowlist.csv"
    if not Path(path).exists():
        return set()
    with open(path, newline="") as fh:
        return {(int(r["period"]), r["country"], r["index"]) for r in csv.DictReader(fh)}


@dataclass(frozen=True)
class Discrepancy:
    period: int
    country: str
    index: str
    computed: Decimal | None
    reported: Decimal | None
    allowlisted: bool = False

    @property
    def diff(self) -> Decimal | None:
        if self.computed is None or self.reported is None:
            return None
        return abs(self.computed - self.reported)


def compare_to_reference(tables: Sequence[PowerTable], reference: Sequence[ReferenceCell],
                         tolerance=Decimal("0.0005"), places: int = 3,
                         allowlist: set | None = None) -> list[Discrepancy]:
    """Cells whose rounded computed value differs from the print by more than
    ``tolerance``; reference cells with no computed counterpart are reported
    with ``computed=None``.  Cells in ``allowlist`` are flagged but kept."""
    allowlist = allowlist or set()
    tol = Decimal(str(tolerance))
    computed = {}
    for t in tables:
        for r in t.rows:
            for k, v in r.values.items():
                computed[(t.period[0], r.country, k)] = round_half_even(v, places)
    periods = {t.period[0] for t in tables}
    kinds = {k for t in tables for k in t.kinds}
    out = []
    for cell in reference:
        if cell.period not in periods or cell.index not in kinds:
            continue
        key = (cell.period, cell.country, cell.index)
        got = computed.get(key)
        if got is None or abs(got - cell.value) > tol:
            out.append(Discrepancy(*key, got, cell.value, key in allowlist))
    return out


# --- panel ----------------------------------------------------------------------

@dataclass(frozen=True)
class PowerPanelRow:
    country: str
    year: int
    p_ssi: Fraction
    p_nucl: Fraction


def build_power_panel(configs: Sequence[CouncilConfig], years: Iterable[int] = PANEL_YEARS,
                      tables: Iterable[PowerTable] = ()) -> list[PowerPanelRow]:
    """One row per member and year; ``tables`` may supply precomputed period tables."""
    cache = {t.period: t for t in tables if {"ssi", "nucleolus"} <= set(t.kinds)}
    rows = []
    for year in years:
        cfg = config_for_year(configs, year)
        if cfg.period not in cache:
            cache[cfg.period] = period_power_table(cfg, ("ssi", "nucleolus"))
        t = cache[cfg.period]
        for r in t.rows:
            rows.append(PowerPanelRow(r.country, year, r.values["ssi"], r.values["nucleolus"]))
    return rows


def write_power_panel(rows: Sequence[PowerPanelRow], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["country", "year", "p_ssi", "p_nucl"])
        for r in rows:
            w.writerow([r.country, r.year, repr(float(r.p_ssi)), repr(float(r.p_nucl))])
