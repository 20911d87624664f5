"""Season-level batch driver: fit every team, compare predictions, aggregate.

Each team gets a mixture fit, a single-Weibull fit and the fixed-exponent
pythWL prediction. Games off is predicted wins minus observed wins; both the
signed and absolute values are kept. Aggregates use sample statistics
(``statistics.stdev``, n - 1 denominator).
"""

from concurrent.futures import ProcessPoolExecutor
import csv
from dataclasses import asdict, dataclass, field, fields
import json
import logging
import os
import statistics

from .baselines import PYTHWL_EXPONENT, predicted_wins, pyth_wl
from .errors import ConvergenceError, EvaluationError, FitError, ValidationError
from .fitting import FitConfig, fit_mixture, fit_single_weibull
from .ingestion import bin_runs, group_team_seasons, read_game_log
from .stats_tests import (
    N_COMPARISONS,
    build_contingency,
    gof_statistic,
    independence_test,
    welch_t_test,
)
from .weibull import mixture_win_pct

logger = logging.getLogger(__name__)

METHODS = ("mixture", "single", "pythwl")


@dataclass(frozen=True)
class ReportConfig:
    fit: FitConfig = field(default_factory=FitConfig)
    exponent: float = PYTHWL_EXPONENT
    n_comparisons: int = N_COMPARISONS
    contingency_dim: int = 12
    workers: int = 1

    def to_dict(self):
        return {
            "num_bins": self.fit.num_bins,
            "multistart_count": self.fit.multistart_count,
            "max_iterations": self.fit.max_iterations,
            "convergence_tol": self.fit.convergence_tol,
            "seed": self.fit.seed,
            "exponent": self.exponent,
            "n_comparisons": self.n_comparisons,
            "contingency_dim": self.contingency_dim,
        }


@dataclass
class TeamRow:
    team: str
    games: int
    observed_wins: int
    observed_losses: int
    runs_scored: int
    runs_allowed: int
    predicted_win_pct: float
    predicted_wins: float
    games_off: float
    abs_games_off: float
    gamma: float
    c1: float
    c1_allowed: float
    alpha_rs1: float
    alpha_rs2: float
    alpha_ra1: float
    alpha_ra2: float
    objective: float
    gof_statistic: float
    gof_df: int
    gof_passes: dict
    independence_statistic: float | None
    independence_df: int | None
    independence_passes: dict | None
    independence_note: str
    single_win_pct: float
    single_predicted_wins: float
    single_games_off: float
    single_abs_games_off: float
    single_gamma: float
    single_objective: float
    pythwl_win_pct: float
    pythwl_predicted_wins: float
    pythwl_games_off: float
    pythwl_abs_games_off: float

    def games_off_for(self, method):
        return {
            "mixture": self.games_off,
            "single": self.single_games_off,
            "pythwl": self.pythwl_games_off,
        }[method]

    def abs_games_off_for(self, method):
        return {
            "mixture": self.abs_games_off,
            "single": self.single_abs_games_off,
            "pythwl": self.pythwl_abs_games_off,
        }[method]


def summary(values):
    """``{"n", "mean", "median", "sd"}`` with ``sd`` None for fewer than two values."""
    values = list(values)
    if not values:
        return {"n": 0, "mean": None, "median": None, "sd": None}
    return {
        "n": len(values),
        "mean": statistics.fmean(values),
        "median": statistics.median(values),
        "sd": statistics.stdev(values) if len(values) > 1 else None,
    }


def aggregate_rows(rows):
    """League aggregates recomputed from team rows."""
    agg = {
        "gamma": summary(r.gamma for r in rows),
        "c1": summary(r.c1 for r in rows),
        "c1_allowed": summary(r.c1_allowed for r in rows),
        "single_gamma": summary(r.single_gamma for r in rows),
    }
    for method in METHODS:
        agg[method] = {
            "games_off": summary(r.games_off_for(method) for r in rows),
            "abs_games_off": summary(r.abs_games_off_for(method) for r in rows),
        }
    return agg


def _ttests(rows):
    out = {}
    mix = [r.abs_games_off for r in rows]
    for other in ("single", "pythwl"):
        key = f"mixture_vs_{other}"
        try:
            out[key] = welch_t_test(mix, [r.abs_games_off_for(other) for r in rows]).to_dict()
        except ValueError as exc:
            out[key] = {"error": str(exc)}
    return out


@dataclass
class SeasonReport:
    season: int
    rows: list
    aggregates: dict
    t_tests: dict
    config: dict

    def to_dict(self):
        return {
            "season": self.season,
            "config": self.config,
            "rows": [asdict(r) for r in self.rows],
            "aggregates": self.aggregates,
            "t_tests": self.t_tests,
        }

    @classmethod
    def from_dict(cls, d):
        names = {f.name for f in fields(TeamRow)}
        rows = [TeamRow(**{k: v for k, v in r.items() if k in names}) for r in d["rows"]]
        return cls(d["season"], rows, d["aggregates"], d["t_tests"], d["config"])

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def analyse_team(team_season, config):
    """Fit, predict and test one team-season; returns a :class:`TeamRow`."""
    label = f"{team_season.season} {team_season.team}"
    cfg = config.fit
    rs_hist = bin_runs(team_season.runs_scored, cfg.num_bins)
    ra_hist = bin_runs(team_season.runs_allowed, cfg.num_bins)
    try:
        single = fit_single_weibull(rs_hist, ra_hist, cfg)
    except FitError as exc:
        logger.warning("%s: single-Weibull fit did not converge; using incumbent", label)
        single = exc.best
    try:
        mix = fit_mixture(rs_hist, ra_hist, cfg, single_fit=single)
    except FitError as exc:
        raise FitError(f"{label}: {exc}", best=exc.best) from exc
    except ValidationError as exc:
        raise ValidationError(f"{label}: {exc}") from exc

    games = team_season.n_games
    wins = team_season.wins
    rs_total = int(team_season.runs_scored.sum())
    ra_total = int(team_season.runs_allowed.sum())

    p = mix.params
    win_pct = mixture_win_pct(p)
    pred = predicted_wins(win_pct, games)
    single_pct = mixture_win_pct(single.params)
    single_pred = predicted_wins(single_pct, games)
    pyth_pct = pyth_wl(rs_total, ra_total, config.exponent)
    pyth_pred = predicted_wins(pyth_pct, games)

    gof = gof_statistic(rs_hist, ra_hist, p, n_params=7, n_comparisons=config.n_comparisons)
    ind_stat = ind_df = ind_passes = None
    note = ""
    try:
        table = build_contingency(team_season, config.contingency_dim)
        ind = independence_test(table, config.n_comparisons)
        ind_stat, ind_df, ind_passes = ind.statistic, ind.df, ind.passes
        notes = []
        if table.dropped:
            notes.append(f"{table.dropped} overflow-tie games excluded")
        if ind.small_cells:
            notes.append(f"{len(ind.small_cells)} cells with expected < 0.5")
        note = "; ".join(notes)
    except (EvaluationError, ConvergenceError) as exc:
        note = f"not evaluated: {exc}"

    return TeamRow(
        team=team_season.team,
        games=games,
        observed_wins=wins,
        observed_losses=games - wins,
        runs_scored=rs_total,
        runs_allowed=ra_total,
        predicted_win_pct=win_pct,
        predicted_wins=pred,
        games_off=pred - wins,
        abs_games_off=abs(pred - wins),
        gamma=p.gamma,
        c1=p.scored.weight1,
        c1_allowed=p.allowed.weight1,
        alpha_rs1=p.scored.alpha1,
        alpha_rs2=p.scored.alpha2,
        alpha_ra1=p.allowed.alpha1,
        alpha_ra2=p.allowed.alpha2,
        objective=mix.objective,
        gof_statistic=gof.statistic,
        gof_df=gof.df,
        gof_passes=gof.passes,
        independence_statistic=ind_stat,
        independence_df=ind_df,
        independence_passes=ind_passes,
        independence_note=note,
        single_win_pct=single_pct,
        single_predicted_wins=single_pred,
        single_games_off=single_pred - wins,
        single_abs_games_off=abs(single_pred - wins),
        single_gamma=single.params.gamma,
        single_objective=single.objective,
        pythwl_win_pct=pyth_pct,
        pythwl_predicted_wins=pyth_pred,
        pythwl_games_off=pyth_pred - wins,
        pythwl_abs_games_off=abs(pyth_pred - wins),
    )


def _map_teams(team_seasons, config):
    if config.workers > 1 and len(team_seasons) > 1:
        with ProcessPoolExecutor(config.workers) as pool:
            return list(pool.map(analyse_team, team_seasons, [config] * len(team_seasons)))
    return [analyse_team(ts, config) for ts in team_seasons]


def season_report(season, team_seasons, config):
    rows = _map_teams(sorted(team_seasons, key=lambda ts: ts.team), config)
    return SeasonReport(season, rows, aggregate_rows(rows), _ttests(rows), config.to_dict())


def _load(paths):
    records = []
    for path in paths:
        records.extend(read_game_log(path))
    by_season = {}
    for ts in group_team_seasons(records):
        by_season.setdefault(ts.season, []).append(ts)
    return by_season


def run_season(input_path, config=None, season=None):
    """Report for one season from a canonical CSV.

    If the file covers several seasons, ``season`` selects one.
    """
    config = config or ReportConfig()
    by_season = _load([input_path])
    if not by_season:
        raise ValidationError(f"{input_path}: no games")
    if season is None:
        if len(by_season) > 1:
            raise ValidationError(
                f"{input_path} covers seasons {sorted(by_season)}; choose one")
        season = next(iter(by_season))
    if season not in by_season:
        raise ValidationError(f"{input_path}: no games for season {season}")
    return season_report(season, by_season[season], config)


@dataclass
class MultiSeasonReport:
    seasons: list
    pooled: dict
    t_tests: dict
    difference_series: list
    per_season: list

    def to_dict(self):
        return {
            "seasons": [s.to_dict() for s in self.seasons],
            "pooled": self.pooled,
            "t_tests": self.t_tests,
            "difference_series": self.difference_series,
            "per_season": self.per_season,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, d):
        return cls(
            [SeasonReport.from_dict(s) for s in d["seasons"]],
            d["pooled"], d["t_tests"], d["difference_series"], d["per_season"],
        )


def _season_entry(report):
    entry = {"season": report.season}
    for m in METHODS:
        s = report.aggregates[m]["abs_games_off"]
        entry[f"{m}_mean_abs"] = s["mean"]
        entry[f"{m}_sd_abs"] = s["sd"]
    return entry


def combine_seasons(reports):
    """Pool games-off samples across seasons and compare methods."""
    rows = [r for rep in reports for r in rep.rows]
    pooled = {m: summary(r.abs_games_off_for(m) for r in rows) for m in METHODS}
    per_season = []
    diffs = []
    for rep in sorted(reports, key=lambda r: r.season):
        entry = _season_entry(rep)
        per_season.append(entry)
        diffs.append({
            "season": rep.season,
            "pythwl_minus_mixture": entry["pythwl_mean_abs"] - entry["mixture_mean_abs"],
        })
    return MultiSeasonReport(list(reports), pooled, _ttests(rows), diffs, per_season)


def run_multi_season(input_paths, config=None, seasons=None):
    config = config or ReportConfig()
    by_season = _load(input_paths)
    wanted = sorted(by_season) if seasons is None else [s for s in seasons if s in by_season]
    if len(wanted) < 2:
        raise ValidationError(f"need at least two seasons, found {wanted}")
    reports = [season_report(s, by_season[s], config) for s in wanted]
    return combine_seasons(reports)


def format_season(report):
    """Plain-text table of one season's report."""
    head = (
        f"{'team':<6}{'G':>4}{'W':>4}{'L':>4}{'pred W':>8}{'off':>7}"
        f"{'gamma':>7}{'c1':>6}{'c1p':>6}{'GOF':>10}{'indep':>8}"
        f"{'1W off':>8}{'pyth off':>9}"
    )
    lines = [f"Season {report.season}", head, "-" * len(head)]
    for r in report.rows:
        ind = f"{r.independence_statistic:8.1f}" if r.independence_statistic is not None else f"{'n/a':>8}"
        lines.append(
            f"{r.team:<6}{r.games:>4}{r.observed_wins:>4}{r.observed_losses:>4}"
            f"{r.predicted_wins:>8.1f}{r.games_off:>7.2f}{r.gamma:>7.3f}{r.c1:>6.2f}"
            f"{r.c1_allowed:>6.2f}{r.gof_statistic:>10.1f}{ind}"
            f"{r.single_games_off:>8.2f}{r.pythwl_games_off:>9.2f}"
        )
    agg = report.aggregates
    lines.append("")
    g = agg["gamma"]
    lines.append(_fmt_summary("gamma (mixture)", g))
    for m in METHODS:
        lines.append(_fmt_summary(f"|games off| {m}", agg[m]["abs_games_off"]))
        lines.append(_fmt_summary(f"games off {m}", agg[m]["games_off"]))
    for key, t in report.t_tests.items():
        lines.append(_fmt_ttest(key, t))
    return "\n".join(lines)


def _fmt_summary(label, s):
    if s["mean"] is None:
        return f"{label:<24} n/a"
    sd = f"{s['sd']:.3f}" if s["sd"] is not None else "n/a"
    return f"{label:<24} mean {s['mean']:.3f}  sd {sd}  median {s['median']:.3f}  (n={s['n']})"


def _fmt_ttest(label, t):
    if "error" in t:
        return f"Welch {label}: {t['error']}"
    lo, hi = t["ci95"]
    return (f"Welch {label}: t = {t['t_statistic']:.3f}, df = {t['df']:.1f}, "
            f"p = {t['p_value']:.4g}, 95% CI [{lo:.3f}, {hi:.3f}]")


def format_multi(report):
    lines = [format_season(s) + "\n" for s in report.seasons]
    lines.append("Pooled over seasons " + ", ".join(str(s.season) for s in report.seasons))
    for m in METHODS:
        lines.append(_fmt_summary(f"|games off| {m}", report.pooled[m]))
    for key, t in report.t_tests.items():
        lines.append(_fmt_ttest(key, t))
    lines.append("pythWL minus mixture (mean |games off|) by season:")
    for d in report.difference_series:
        lines.append(f"  {d['season']}: {d['pythwl_minus_mixture']:+.3f}")
    return "\n".join(lines)


def write_plot_data(reports, directory):
    """Plot-ready CSV series: per-season means/sds/differences and per-team fits."""
    os.makedirs(directory, exist_ok=True)
    per_season = [_season_entry(r) for r in sorted(reports, key=lambda r: r.season)]
    path = os.path.join(directory, "season_summary.csv")
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        cols = ["season"] + [f"{m}_{s}_abs" for m in METHODS for s in ("mean", "sd")]
        w.writerow(cols + ["pythwl_minus_mixture"])
        for e in per_season:
            vals = [e["season"]] + [e[c] for c in cols[1:]]
            w.writerow(vals + [e["pythwl_mean_abs"] - e["mixture_mean_abs"]])
    written = [path]
    for rep in reports:
        p = os.path.join(directory, f"teams_{rep.season}.csv")
        with open(p, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["team", "observed_wins", "mixture_pred", "single_pred", "pythwl_pred",
                        "gamma", "c1", "c1_allowed", "gof_statistic", "independence_statistic"])
            for r in rep.rows:
                w.writerow([r.team, r.observed_wins, r.predicted_wins, r.single_predicted_wins,
                            r.pythwl_predicted_wins, r.gamma, r.c1, r.c1_allowed,
                            r.gof_statistic, r.independence_statistic])
        written.append(p)
    return written

