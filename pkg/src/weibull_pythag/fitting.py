"""Least-squares fitting of Weibull mixtures to binned runs scored / allowed.

For one team the objective is

    sum_k (RS_obs(k) - G * A_RS(k))^2 + sum_k (RA_obs(k) - G * A_RA(k))^2

where ``A(k)`` is the mixture mass in bin ``k`` and ``G`` the number of games.
The seven free parameters (four scales, the shared shape and two weights) are
searched with a multistart Nelder-Mead simplex over an unconstrained
reparametrisation: logs for scales and shape, ``c = sin(theta)^2`` for the
weights. The location is fixed at -1/2.
"""

from dataclasses import dataclass, field, replace
import logging
import math

import numpy as np
from scipy.optimize import minimize

from .errors import ContractError, FitError, ValidationError
from .ingestion import bin_edges
from .weibull import (
    DEFAULT_BETA,
    MixtureParams,
    MixtureSide,
    alpha_for_mean,
    bin_areas,
    mixture_mean,
    mixture_win_pct,
)

logger = logging.getLogger(__name__)

MIN_GAMES = 20
GAMMA_STARTS = (1.4, 1.83, 2.2)
WEIGHT_STARTS = (0.2, 0.5, 0.8)

# keeps log-parameters in a range where exp() and powers stay finite
_LOG_BOUND = 30.0


@dataclass(frozen=True)
class FitConfig:
    num_bins: int = 13
    multistart_count: int = 16
    max_iterations: int = 2000
    convergence_tol: float = 1e-8
    seed: int = 0

    def __post_init__(self):
        for name in ("num_bins", "multistart_count", "max_iterations"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.num_bins < 2:
            raise ValueError("num_bins must be at least 2")
        if not self.convergence_tol > 0:
            raise ValueError("convergence_tol must be positive")


@dataclass(frozen=True)
class FitResult:
    params: MixtureParams
    objective: float
    converged: bool
    starts_tried: int
    best_start_index: int
    n_params: int = 7
    n_games: int = 0
    iterations: int = 0
    diagnostics: dict = field(default_factory=dict, compare=False)

    @property
    def win_pct(self):
        return mixture_win_pct(self.params)

    def to_dict(self):
        return {
            "params": self.params.to_dict(),
            "objective": self.objective,
            "converged": self.converged,
            "starts_tried": self.starts_tried,
            "best_start_index": self.best_start_index,
            "n_params": self.n_params,
            "n_games": self.n_games,
            "iterations": self.iterations,
        }


def _check_scheme(rs_hist, ra_hist):
    if not rs_hist.same_scheme(ra_hist):
        raise ContractError("runs scored and runs allowed histograms use different bins")


def _check_beta(m):
    if m.beta != DEFAULT_BETA:
        raise ContractError(f"fitting requires beta = {DEFAULT_BETA}, got {m.beta}")


def ls_objective(rs_hist, ra_hist, m):
    """Sum of squared count residuals over both histograms."""
    _check_scheme(rs_hist, ra_hist)
    _check_beta(m)
    edges = rs_hist.bin_edges
    total = 0.0
    for hist, side in ((rs_hist, m.scored), (ra_hist, m.allowed)):
        expected = hist.n_games * bin_areas(side, edges)
        total += float(np.sum((hist.counts_array() - expected) ** 2))
    return total


class _Objective:
    """Fast objective on the unconstrained vector; mirrors :func:`ls_objective`."""

    def __init__(self, rs_hist, ra_hist, single):
        z = np.maximum(np.asarray(rs_hist.bin_edges, dtype=float) - DEFAULT_BETA, 0.0)
        self.z = z
        self.obs = np.concatenate([rs_hist.counts_array(), ra_hist.counts_array()])
        self.games = np.array([float(rs_hist.n_games), float(ra_hist.n_games)])[:, None]
        self.single = single
        self.n_log = 3 if single else 5

    def __call__(self, u):
        if not np.all(np.isfinite(u)) or np.any(np.abs(u[: self.n_log]) > _LOG_BOUND):
            return math.inf
        a_rs1, a_rs2, a_ra1, a_ra2, g, c1, c1p = decode(u, self.single)
        scales = np.array([a_rs1, a_rs2, a_ra1, a_ra2])[:, None]
        s = np.exp(-((self.z / scales) ** g))
        surv = np.array([[c1], [c1p]]) * s[0::2] + np.array([[1.0 - c1], [1.0 - c1p]]) * s[1::2]
        resid = self.obs - (self.games * (surv[:, :-1] - surv[:, 1:])).ravel()
        val = float(resid @ resid)
        return val if math.isfinite(val) else math.inf


def encode(m, single=False):
    s, a = m.scored, m.allowed
    if single:
        return np.array([math.log(s.alpha1), math.log(a.alpha1), math.log(m.gamma)])
    return np.array([
        math.log(s.alpha1), math.log(s.alpha2),
        math.log(a.alpha1), math.log(a.alpha2),
        math.log(m.gamma),
        math.asin(math.sqrt(s.weight1)), math.asin(math.sqrt(a.weight1)),
    ])


def decode(u, single=False):
    """Unconstrained vector to ``(a_rs1, a_rs2, a_ra1, a_ra2, gamma, c1, c1')``."""
    if single:
        a_rs, a_ra, g = (math.exp(v) for v in u)
        return a_rs, a_rs, a_ra, a_ra, g, 1.0, 1.0
    a_rs1, a_rs2, a_ra1, a_ra2, g = (math.exp(v) for v in u[:5])
    c1 = min(1.0, max(0.0, math.sin(u[5]) ** 2))
    c1p = min(1.0, max(0.0, math.sin(u[6]) ** 2))
    return a_rs1, a_rs2, a_ra1, a_ra2, g, c1, c1p


def _params_from(u, single):
    a_rs1, a_rs2, a_ra1, a_ra2, g, c1, c1p = decode(u, single)
    return MixtureParams.from_vector(a_rs1, a_rs2, a_ra1, a_ra2, g, c1, c1p)


def histogram_mean(hist):
    """Mean score from bin centres (the overflow bin counted at its lower centre)."""
    centres = np.arange(hist.num_bins, dtype=float)
    n = hist.n_games
    return float(np.dot(centres, hist.counts_array()) / n) if n else 0.0


def _split(alpha, weight, low=0.6):
    # component scales a*hi, a*low with weight*hi + (1-weight)*low = 1 (mean kept)
    hi = (1.0 - (1.0 - weight) * low) / weight
    return alpha * hi, alpha * low


def _single_starts(rs_mean, ra_mean, cfg):
    starts = []
    for g in GAMMA_STARTS:
        starts.append(MixtureParams.from_vector(
            alpha_for_mean(rs_mean, g), 1.0, alpha_for_mean(ra_mean, g), 1.0, g, 1.0, 1.0))
    rng = np.random.default_rng([cfg.seed, 1])
    while len(starts) < cfg.multistart_count:
        g = float(rng.uniform(1.2, 2.6))
        f_rs, f_ra = rng.uniform(0.8, 1.25, size=2)
        starts.append(MixtureParams.from_vector(
            alpha_for_mean(rs_mean, g) * f_rs, 1.0,
            alpha_for_mean(ra_mean, g) * f_ra, 1.0, g, 1.0, 1.0))
    return starts[: cfg.multistart_count]


def _mixture_starts(rs_mean, ra_mean, cfg, incumbent=None):
    starts = []
    if incumbent is not None:
        starts.append(incumbent)
    for g in GAMMA_STARTS:
        a_rs = alpha_for_mean(rs_mean, g)
        a_ra = alpha_for_mean(ra_mean, g)
        for w in WEIGHT_STARTS:
            rs1, rs2 = _split(a_rs, w)
            ra1, ra2 = _split(a_ra, w)
            starts.append(MixtureParams.from_vector(rs1, rs2, ra1, ra2, g, w, w))
    rng = np.random.default_rng([cfg.seed, 2])
    while len(starts) < cfg.multistart_count:
        g = float(rng.uniform(1.2, 2.6))
        w, wp = rng.uniform(0.05, 0.95, size=2)
        low, lowp = rng.uniform(0.3, 0.9, size=2)
        rs1, rs2 = _split(alpha_for_mean(rs_mean, g), w, low)
        ra1, ra2 = _split(alpha_for_mean(ra_mean, g), wp, lowp)
        starts.append(MixtureParams.from_vector(rs1, rs2, ra1, ra2, g, w, wp))
    return starts[: cfg.multistart_count]


def _cross_side_starts(m, rs_mean, ra_mean):
    # the objective separates by side for fixed gamma, so a shape that fits one
    # side well is worth trying on the other (rescaled to that side's mean)
    scale = (ra_mean - DEFAULT_BETA) / (rs_mean - DEFAULT_BETA)
    s, a, g = m.scored, m.allowed, m.gamma
    return [
        MixtureParams.from_vector(s.alpha1, s.alpha2, s.alpha1 * scale, s.alpha2 * scale,
                                  g, s.weight1, s.weight1),
        MixtureParams.from_vector(a.alpha1 / scale, a.alpha2 / scale, a.alpha1, a.alpha2,
                                  g, a.weight1, a.weight1),
    ]


def _initial_simplex(u0, single):
    n = len(u0)
    steps = np.full(n, 0.15)
    if not single:
        steps[5:] = 0.35
    simplex = np.tile(u0, (n + 1, 1))
    for i in range(n):
        simplex[i + 1, i] += steps[i]
    return simplex


def _run_start(fun, u0, single, cfg):
    """Nelder-Mead from ``u0``, restarted once from its own optimum."""
    total_iter = 0
    success = False
    u = np.asarray(u0, dtype=float)
    f_prev = fun(u)
    for _ in range(2):
        res = minimize(
            fun, u, method="Nelder-Mead",
            options={
                "initial_simplex": _initial_simplex(u, single),
                "maxiter": cfg.max_iterations,
                "maxfev": 4 * cfg.max_iterations,
                "xatol": 1e-7,
                "fatol": cfg.convergence_tol,
                "adaptive": not single,
            },
        )
        total_iter += int(res.nit)
        if res.fun <= f_prev:
            u = res.x
        success = bool(res.success)
        if abs(f_prev - res.fun) <= cfg.convergence_tol and success:
            f_prev = min(f_prev, res.fun)
            break
        f_prev = min(f_prev, res.fun)
    return u, f_prev, success, total_iter


def _check_hists(rs_hist, ra_hist, cfg):
    _check_scheme(rs_hist, ra_hist)
    if rs_hist.num_bins != cfg.num_bins:
        raise ContractError(
            f"histograms have {rs_hist.num_bins} bins but config asks for {cfg.num_bins}")
    for hist, label in ((rs_hist, "runs scored"), (ra_hist, "runs allowed")):
        if hist.n_games < MIN_GAMES:
            raise ValidationError(
                f"{label} histogram has {hist.n_games} games; at least {MIN_GAMES} required")


def _multistart(rs_hist, ra_hist, cfg, starts, single):
    fun = _Objective(rs_hist, ra_hist, single)
    best = None
    any_converged = False
    iterations = 0
    for i, start in enumerate(starts):
        u, f, ok, nit = _run_start(fun, encode(start, single), single, cfg)
        iterations += nit
        any_converged |= ok
        if best is None or f < best[1]:
            best = (u, f, i)
    u, f, idx = best
    params = _params_from(u, single)
    if not single:
        params = params.canonical()
    objective = ls_objective(rs_hist, ra_hist, params)
    result = FitResult(
        params=params,
        objective=objective,
        converged=any_converged,
        starts_tried=len(starts),
        best_start_index=idx,
        n_params=3 if single else 7,
        n_games=rs_hist.n_games,
        iterations=iterations,
        diagnostics={
            "mean_rs_model": mixture_mean(params.scored),
            "mean_ra_model": mixture_mean(params.allowed),
            "mean_rs_hist": histogram_mean(rs_hist),
            "mean_ra_hist": histogram_mean(ra_hist),
        },
    )
    if not any_converged:
        raise FitError(f"none of {len(starts)} starts converged", best=result)
    return result


def fit_single_weibull(rs_hist, ra_hist, cfg=None):
    """Fit one Weibull per side (c1 = c1' = 1): free scales for each side and a shared shape."""
    cfg = cfg or FitConfig(num_bins=rs_hist.num_bins)
    _check_hists(rs_hist, ra_hist, cfg)
    starts = _single_starts(histogram_mean(rs_hist), histogram_mean(ra_hist), cfg)
    return _multistart(rs_hist, ra_hist, cfg, starts, single=True)


def fit_mixture(rs_hist, ra_hist, cfg=None, single_fit=None):
    """Fit the seven-parameter two-Weibull mixture to one team's histograms.

    The best single-Weibull solution (computed here unless ``single_fit`` is
    given) is always one of the starts, so the returned objective never
    exceeds the single-Weibull objective. Deterministic for a given
    ``cfg.seed``. Components are reported with ``alpha1 >= alpha2``.

    After the multistart, two extra runs start from each side's fitted shape
    copied onto the other side; if one wins, ``best_start_index`` points past
    the regular starts (``starts_tried`` counts regular starts only).
    """
    cfg = cfg or FitConfig(num_bins=rs_hist.num_bins)
    _check_hists(rs_hist, ra_hist, cfg)
    if single_fit is None:
        try:
            single_fit = fit_single_weibull(rs_hist, ra_hist, cfg)
        except FitError as exc:
            single_fit = exc.best
    sp = single_fit.params
    # embed the single fit: full weight on component 1, component 2 inert
    incumbent = MixtureParams.from_vector(
        sp.scored.alpha1, sp.scored.alpha1 * 0.6,
        sp.allowed.alpha1, sp.allowed.alpha1 * 0.6, sp.gamma, 1.0, 1.0)
    rs_mean, ra_mean = histogram_mean(rs_hist), histogram_mean(ra_hist)
    starts = _mixture_starts(rs_mean, ra_mean, cfg, incumbent)
    result = _multistart(rs_hist, ra_hist, cfg, starts, single=False)
    try:
        polished = _multistart(rs_hist, ra_hist, cfg,
                               _cross_side_starts(result.params, rs_mean, ra_mean), single=False)
    except FitError as exc:
        polished = exc.best
    improved = polished.objective < result.objective
    if improved:
        result = replace(polished, starts_tried=result.starts_tried,
                         best_start_index=result.starts_tried + polished.best_start_index,
                         iterations=result.iterations + polished.iterations)
    result.diagnostics["cross_side_improved"] = improved
    if result.objective > single_fit.objective:
        # rounding in the round trip through sin^2 can cost a few ulps
        result = replace(result, params=sp, objective=single_fit.objective)
    return result


def expected_histograms(m, n_games, num_bins=13):
    """Noiseless expected counts ``G * A(k)`` for both sides (floats)."""
    edges = bin_edges(num_bins)
    return n_games * bin_areas(m.scored, edges), n_games * bin_areas(m.allowed, edges)
