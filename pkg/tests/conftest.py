from pathlib import Path

import pytest

from weibull_pythag.fitting import FitConfig
from weibull_pythag.ingestion import group_team_seasons, read_game_log
from weibull_pythag.report import ReportConfig, run_season

DATA = Path(__file__).parent / "data"
SEASON_2011 = DATA / "synthetic_2011.csv"
SEASON_2012 = DATA / "synthetic_2012.csv"


@pytest.fixture(scope="session")
def team_seasons_2011():
    return group_team_seasons(read_game_log(SEASON_2011))


@pytest.fixture(scope="session")
def report_2011():
    return run_season(SEASON_2011, ReportConfig(fit=FitConfig(seed=7)))


ACCEPTANCE_LINES = []


@pytest.fixture
def verdict():
    """Record one PASS/FAIL line for an acceptance criterion, then assert it."""

    def record(number, title, checks):
        ok = all(passed for _, passed in checks)
        failed = [label for label, passed in checks if not passed]
        line = f"{'PASS' if ok else 'FAIL'}  criterion {number}: {title}"
        if failed:
            line += "  [failed: " + "; ".join(failed) + "]"
        ACCEPTANCE_LINES.append((number, line))
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
