import io

from hypothesis import given, strategies as st
import numpy as np
import pytest

from weibull_pythag.errors import ParseError, ValidationError
from weibull_pythag.ingestion import (
    BinnedHistogram,
    GameRecord,
    TeamSeason,
    bin_edges,
    bin_runs,
    convert_public_log,
    group_team_seasons,
    parse_game_log,
)

HEADER = "season,team,opponent,runs_scored,runs_allowed\n"


def test_parse_single_row():
    recs = parse_game_log(io.StringIO(HEADER + "2011,SEA,TEX,3,1\n"))
    assert recs == [GameRecord(2011, "SEA", "TEX", 3, 1)]
    assert recs[0].line == 2


def test_parse_crlf_and_blank_lines():
    text = HEADER.replace("\n", "\r\n") + "2011,SEA,TEX,3,1\r\n\r\n2011,TEX,SEA,1,3\r\n"
    recs = parse_game_log(io.StringIO(text, newline=""))
    assert [r.team for r in recs] == ["SEA", "TEX"]


def test_parse_empty_after_header():
    assert parse_game_log(io.StringIO(HEADER)) == []


def test_tie_rejected_with_line():
    with pytest.raises(ValidationError, match="line 3.*tie"):
        parse_game_log(io.StringIO(HEADER + "2011,SEA,TEX,3,1\n2011,SEA,TEX,4,4\n"))


def test_negative_rejected():
    with pytest.raises(ValidationError, match="line 2"):
        parse_game_log(io.StringIO(HEADER + "2011,SEA,TEX,-1,2\n"))


@pytest.mark.parametrize("row", ["2011,SEA,TEX,3\n", "2011,SEA,TEX,x,1\n", "20a1,SEA,TEX,3,1\n", "2011,,TEX,3,1\n"])
def test_malformed_rows(row):
    with pytest.raises(ParseError, match="line 2"):
        parse_game_log(io.StringIO(HEADER + row))


def test_bad_header():
    with pytest.raises(ParseError, match="line 1"):
        parse_game_log(io.StringIO("a,b,c\n"))


def test_team_season_grouping():
    text = HEADER + "2011,SEA,TEX,3,1\n2011,TEX,SEA,1,3\n2011,SEA,OAK,2,5\n2012,SEA,OAK,6,0\n"
    groups = group_team_seasons(parse_game_log(io.StringIO(text)))
    assert [(g.season, g.team, g.n_games) for g in groups] == [(2011, "SEA", 2), (2011, "TEX", 1), (2012, "SEA", 1)]
    sea = groups[0]
    assert (sea.wins, sea.losses) == (1, 1)
    assert sea.as_array().tolist() == [[3, 1], [2, 5]]
    with pytest.raises(ValidationError):
        TeamSeason(2011, "SEA", ())


def test_bin_edges_half_integers():
    e = bin_edges(4)
    assert e == (-0.5, 0.5, 1.5, 2.5, float("inf"))


def test_bin_runs_examples():
    assert bin_runs([0, 0, 1], 3).counts == (2, 1, 0)
    assert bin_runs([25], 13).counts[-1] == 1
    assert sum(bin_runs([25], 13).counts) == 1


@given(st.lists(st.integers(0, 11), max_size=200))
def test_rebin_expansion_identity(runs):
    h = bin_runs(runs, 13)
    assert bin_runs(h.expand(), 13) == h
    assert h.n_games == len(runs)


@given(st.integers(0, 40), st.integers(2, 20))
def test_score_lands_in_centred_bin(s, nbins):
    h = bin_runs([s], nbins)
    k = h.counts.index(1)
    lo, hi = h.bin_edges[k], h.bin_edges[k + 1]
    assert lo <= s < hi
    if s <= nbins - 2:
        assert (lo + hi) / 2 == s


def test_histogram_invariants():
    with pytest.raises(ValidationError):
        BinnedHistogram((0.0, 1.0), (1, 2))
    with pytest.raises(ValidationError):
        bin_runs([-1])


def test_convert_public():
    src = io.StringIO(
        "date,home_team,away_team,home_score,away_score\n"
        "2011-04-01,SEA,OAK,3,1\n"
        "2011-04-02,SEA,OAK,2,2\n"
        "2011-04-03,OAK,SEA,7,4\n"
    )
    out = io.StringIO()
    assert convert_public_log(src, out) == 2
    recs = parse_game_log(io.StringIO(out.getvalue()))
    assert [(r.team, r.opponent, r.runs_scored, r.runs_allowed) for r in recs] == [
        ("SEA", "OAK", 3, 1), ("OAK", "SEA", 1, 3), ("OAK", "SEA", 7, 4), ("SEA", "OAK", 4, 7),
    ]
    assert all(r.season == 2011 for r in recs)
    src.seek(0)
    with pytest.raises(ValidationError, match="line 3"):
        convert_public_log(src, io.StringIO(), skip_ties=False)


def test_convert_retrosheet():
    row = '"20110401","0","Fri","SEA","AL",1,"OAK","AL",1,2,0,' + ",".join(['""'] * 150)
    out = io.StringIO()
    assert convert_public_log(io.StringIO(row + "\n"), out, fmt="retrosheet") == 1
    recs = parse_game_log(io.StringIO(out.getvalue()))
    assert [(r.team, r.runs_scored, r.runs_allowed) for r in recs] == [("OAK", 0, 2), ("SEA", 2, 0)]


def test_fixture_file_is_valid(team_seasons_2011):
    assert len(team_seasons_2011) == 10
    assert all(ts.n_games == 162 for ts in team_seasons_2011)
    assert sum(ts.wins for ts in team_seasons_2011) == sum(ts.losses for ts in team_seasons_2011)
