"""Regenerate the synthetic league fixtures in this directory.

Each team's runs in a game are a continuous draw from its own two-Weibull
mixture (location -1/2) rounded to the nearest integer; ties are broken by
giving one extra run to a randomly chosen side, as in extra innings. 10
teams meet 18 times each, 162 games per team.

    python tests/data/make_synthetic.py
"""

import csv
import itertools
from pathlib import Path

import numpy as np

from weibull_pythag.simulator import sample_mixture
from weibull_pythag.weibull import MixtureSide

HERE = Path(__file__).parent
TEAMS = ["ANA", "BAL", "BOS", "CHA", "CLE", "DET", "NYA", "OAK", "SEA", "TEX"]


def team_sides(rng):
    sides = {}
    for t in TEAMS:
        g = float(rng.uniform(1.6, 2.0))
        off = MixtureSide(float(rng.uniform(4.5, 6.5)), float(rng.uniform(2.0, 3.5)),
                          float(rng.uniform(0.3, 0.8)), -0.5, g)
        sides[t] = (off,)
    return sides


def season_rows(season, seed, meetings=18):
    rng = np.random.default_rng(seed)
    sides = team_sides(rng)
    rows = []
    for _ in range(meetings):
        for home, away in itertools.combinations(TEAMS, 2):
            h = sample_mixture(sides[home][0], 1, rng)[0]
            a = sample_mixture(sides[away][0], 1, rng)[0]
            h, a = max(0, int(np.floor(h + 0.5))), max(0, int(np.floor(a + 0.5)))
            if h == a:
                if rng.random() < 0.5:
                    h += 1
                else:
                    a += 1
            rows.append((season, home, away, h, a))
            rows.append((season, away, home, a, h))
    return rows


def write(path, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["season", "team", "opponent", "runs_scored", "runs_allowed"])
        w.writerows(rows)


if __name__ == "__main__":
    write(HERE / "synthetic_2011.csv", season_rows(2011, 2011))
    write(HERE / "synthetic_2012.csv", season_rows(2012, 2012))
