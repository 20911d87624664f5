"""Game-log parsing, per-team aggregation and half-integer run binning.

Canonical input is one CSV row per team per game::

    season,team,opponent,runs_scored,runs_allowed
    2011,SEA,TEX,3,1

so each physical game appears twice. :func:`convert_public_log` turns the
common home/away layout (or a raw Retrosheet game log) into this form.
"""

from collections import OrderedDict
import csv
from dataclasses import dataclass, field
import io
import math

import numpy as np

from .errors import ParseError, ValidationError

CANONICAL_HEADER = ["season", "team", "opponent", "runs_scored", "runs_allowed"]
PUBLIC_HEADER = ["date", "home_team", "away_team", "home_score", "away_score"]
DEFAULT_NUM_BINS = 13


@dataclass(frozen=True)
class GameRecord:
    season: int
    team: str
    opponent: str
    runs_scored: int
    runs_allowed: int
    line: int = field(default=0, compare=False)

    def __post_init__(self):
        if self.runs_scored < 0 or self.runs_allowed < 0:
            raise ValidationError(
                f"runs must be non-negative, got {self.runs_scored}-{self.runs_allowed}",
                self.line or None,
            )
        if self.runs_scored == self.runs_allowed:
            raise ValidationError(
                f"tied score {self.runs_scored}-{self.runs_allowed}; "
                "baseball games cannot end in a tie",
                self.line or None,
            )

    @property
    def won(self):
        return self.runs_scored > self.runs_allowed


@dataclass(frozen=True)
class TeamSeason:
    season: int
    team: str
    games: tuple

    def __post_init__(self):
        if not self.games:
            raise ValidationError(f"{self.season} {self.team}: no games")
        for g in self.games:
            if g.season != self.season or g.team != self.team:
                raise ValidationError(
                    f"record for {g.season} {g.team} placed in {self.season} {self.team}",
                    g.line or None,
                )

    @property
    def runs_scored(self):
        return np.array([g.runs_scored for g in self.games], dtype=int)

    @property
    def runs_allowed(self):
        return np.array([g.runs_allowed for g in self.games], dtype=int)

    @property
    def n_games(self):
        return len(self.games)

    @property
    def wins(self):
        return sum(g.won for g in self.games)

    @property
    def losses(self):
        return self.n_games - self.wins

    def as_array(self):
        """``(n_games, 2)`` array of ``[runs_scored, runs_allowed]``."""
        return np.column_stack([self.runs_scored, self.runs_allowed])


@dataclass(frozen=True)
class BinnedHistogram:
    """Game counts per run bin; edges start at -0.5 and the last edge is +inf."""

    bin_edges: tuple
    counts: tuple

    def __post_init__(self):
        if len(self.bin_edges) != len(self.counts) + 1:
            raise ValidationError("histogram needs len(counts) + 1 edges")
        if any(c < 0 for c in self.counts):
            raise ValidationError("histogram counts must be non-negative")

    @property
    def num_bins(self):
        return len(self.counts)

    @property
    def n_games(self):
        return int(round(sum(self.counts)))

    def counts_array(self):
        return np.asarray(self.counts, dtype=float)

    def same_scheme(self, other):
        return tuple(self.bin_edges) == tuple(other.bin_edges)

    def expand(self):
        """Integer scores reproducing the counts (each bin's centre, i.e. its score)."""
        return [k for k, c in enumerate(self.counts) for _ in range(int(c))]


def bin_edges(num_bins=DEFAULT_NUM_BINS):
    """``[-1/2, 1/2, 3/2, ..., num_bins - 3/2, inf]``: bins centred on 0..num_bins-2 plus overflow."""
    if num_bins < 2:
        raise ValueError(f"num_bins must be at least 2, got {num_bins}")
    return tuple(k - 0.5 for k in range(num_bins)) + (math.inf,)


def bin_runs(runs, num_bins=DEFAULT_NUM_BINS):
    """Histogram of integer scores; the final bin absorbs every score >= num_bins - 1."""
    edges = bin_edges(num_bins)
    runs = np.asarray(runs, dtype=int).ravel()
    if runs.size and runs.min() < 0:
        raise ValidationError("runs must be non-negative")
    idx = np.minimum(runs, num_bins - 1)
    counts = np.bincount(idx, minlength=num_bins)
    return BinnedHistogram(edges, tuple(int(c) for c in counts))


def _int_field(value, name, line):
    try:
        return int(value.strip())
    except (ValueError, AttributeError):
        raise ParseError(f"{name} is not an integer: {value!r}", line) from None


def parse_game_log(stream):
    """Parse canonical team-perspective CSV rows into :class:`GameRecord` values.

    ``stream`` is any iterable of text lines (an open file, ``io.StringIO``).
    Raises :class:`ParseError` on malformed rows and :class:`ValidationError`
    on negative runs or ties, both carrying the 1-based line number.
    """
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    reader = csv.reader(stream)
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("empty input; expected a header row", 1) from None
    header = [h.strip().lstrip("\ufeff") for h in header]
    if header != CANONICAL_HEADER:
        raise ParseError(f"expected header {','.join(CANONICAL_HEADER)}, got {','.join(header)}", 1)

    records = []
    for row in reader:
        line = reader.line_num
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != len(CANONICAL_HEADER):
            raise ParseError(f"expected {len(CANONICAL_HEADER)} fields, got {len(row)}", line)
        season = _int_field(row[0], "season", line)
        team, opp = row[1].strip(), row[2].strip()
        if not team or not opp:
            raise ParseError("team and opponent must be non-empty", line)
        rs = _int_field(row[3], "runs_scored", line)
        ra = _int_field(row[4], "runs_allowed", line)
        records.append(GameRecord(season, team, opp, rs, ra, line))
    return records


def read_game_log(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return parse_game_log(fh)


def group_team_seasons(records):
    """Group records by ``(season, team)`` preserving first-appearance order."""
    groups = OrderedDict()
    for r in records:
        groups.setdefault((r.season, r.team), []).append(r)
    return [TeamSeason(season, team, tuple(games)) for (season, team), games in groups.items()]


def _season_from_date(value, line):
    digits = value.strip().replace("-", "").replace("/", "")
    if len(digits) < 4 or not digits[:4].isdigit():
        raise ParseError(f"cannot read a year from date {value!r}", line)
    return int(digits[:4])


def _public_rows(stream):
    reader = csv.reader(stream)
    header = [h.strip().lstrip("\ufeff") for h in next(reader, [])]
    if header != PUBLIC_HEADER:
        raise ParseError(f"expected header {','.join(PUBLIC_HEADER)}", 1)
    for row in reader:
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != len(PUBLIC_HEADER):
            raise ParseError(f"expected {len(PUBLIC_HEADER)} fields, got {len(row)}", reader.line_num)
        yield reader.line_num, row[0], row[1], row[2], row[3], row[4]


def _retrosheet_rows(stream):
    # Retrosheet GLyyyy.TXT: date, game no, day, visitor, v-league, v-game no,
    # home, h-league, h-game no, visitor score, home score, ...
    reader = csv.reader(stream)
    for row in reader:
        if not row:
            continue
        if len(row) < 11:
            raise ParseError(f"game-log row too short ({len(row)} fields)", reader.line_num)
        yield reader.line_num, row[0], row[6], row[3], row[10], row[9]


def convert_public_log(stream, out, fmt="public", skip_ties=True):
    """Write canonical CSV for a home/away game log; returns the number of games read.

    ``fmt`` is ``"public"`` (header ``date,home_team,away_team,home_score,away_score``)
    or ``"retrosheet"`` (raw GLyyyy.TXT). Tied games (suspended or called) are
    dropped when ``skip_ties`` is true, otherwise rejected.
    """
    rows = _public_rows(stream) if fmt == "public" else _retrosheet_rows(stream)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CANONICAL_HEADER)
    n = 0
    for line, date, home, away, hs, as_ in rows:
        season = _season_from_date(date, line)
        home, away = home.strip().strip('"'), away.strip().strip('"')
        h = _int_field(hs, "home_score", line)
        a = _int_field(as_, "away_score", line)
        if h == a:
            if skip_ties:
                continue
            raise ValidationError(f"tied game {home} {h}-{a} {away}", line)
        if h < 0 or a < 0:
            raise ValidationError("scores must be non-negative", line)
        writer.writerow([season, home, away, h, a])
        writer.writerow([season, away, home, a, h])
        n += 1
    return n
