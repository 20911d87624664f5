"""scikit-learn style wrappers.

:class:`WeibullRunsModel` is a density-estimator-like object in the spirit of
``GaussianMixture``: ``fit`` takes one team's games as an ``(n_games, 2)``
array of ``[runs_scored, runs_allowed]`` and exposes the fitted parameters
and the implied win percentage. :class:`PythagoreanRegressor` works at the
team-season level (``X`` = season run totals, ``y`` = observed win pct).
"""

import numpy as np
from scipy.optimize import minimize_scalar
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

from .baselines import PYTHWL_EXPONENT, pyth_wl
from .errors import ValidationError
from .fitting import FitConfig, fit_mixture, fit_single_weibull, ls_objective
from .ingestion import bin_runs
from .simulator import sample_mixture
from .weibull import mixture_win_pct


def check_games(X):
    """Validate an ``(n_games, 2)`` array of non-negative integer, non-tied scores."""
    X = check_array(X, dtype=None, ensure_min_samples=1)
    if X.shape[1] != 2:
        raise ValidationError(f"expected 2 columns [runs_scored, runs_allowed], got {X.shape[1]}")
    if not np.all(np.equal(np.mod(X, 1), 0)):
        raise ValidationError("scores must be whole numbers")
    X = X.astype(int)
    if np.any(X < 0):
        raise ValidationError("scores must be non-negative")
    ties = np.flatnonzero(X[:, 0] == X[:, 1])
    if ties.size:
        raise ValidationError(f"tied scores at rows {ties[:5].tolist()}; games cannot end tied")
    return X


class WeibullRunsModel(BaseEstimator):
    """Least-squares Weibull model of one team's runs scored and allowed.

    Parameters
    ----------
    n_components : {1, 2}
        2 fits the seven-parameter mixture, 1 the single-Weibull baseline.
    num_bins, n_starts, max_iter, tol, random_state
        Passed through to :class:`~weibull_pythag.fitting.FitConfig`.

    Attributes
    ----------
    params_ : MixtureParams
    fit_result_ : FitResult
    win_pct_ : float
    n_games_ : int
    """

    def __init__(self, n_components=2, num_bins=13, n_starts=16, max_iter=2000,
                 tol=1e-8, random_state=0):
        self.n_components = n_components
        self.num_bins = num_bins
        self.n_starts = n_starts
        self.max_iter = max_iter
        self.tol = tol
        self.random_state = random_state

    def _config(self):
        return FitConfig(
            num_bins=self.num_bins,
            multistart_count=self.n_starts,
            max_iterations=self.max_iter,
            convergence_tol=self.tol,
            seed=0 if self.random_state is None else int(self.random_state),
        )

    def _histograms(self, X):
        X = check_games(X)
        return bin_runs(X[:, 0], self.num_bins), bin_runs(X[:, 1], self.num_bins)

    def fit(self, X, y=None):
        if self.n_components not in (1, 2):
            raise ValueError(f"n_components must be 1 or 2, got {self.n_components}")
        rs, ra = self._histograms(X)
        cfg = self._config()
        fitter = fit_mixture if self.n_components == 2 else fit_single_weibull
        self.fit_result_ = fitter(rs, ra, cfg)
        self.params_ = self.fit_result_.params
        self.win_pct_ = mixture_win_pct(self.params_)
        self.n_games_ = rs.n_games
        return self

    def predict_win_pct(self):
        check_is_fitted(self, "params_")
        return self.win_pct_

    def expected_wins(self, n_games=None):
        check_is_fitted(self, "params_")
        return self.win_pct_ * (self.n_games_ if n_games is None else n_games)

    def score(self, X, y=None):
        """Negative least-squares objective of the fitted model on ``X`` (higher is better)."""
        check_is_fitted(self, "params_")
        rs, ra = self._histograms(X)
        return -ls_objective(rs, ra, self.params_)

    def sample(self, n_samples=1, random_state=None):
        """Continuous draws ``(n_samples, 2)`` of [runs_scored, runs_allowed]."""
        check_is_fitted(self, "params_")
        rng = np.random.default_rng(random_state)
        return np.column_stack([
            sample_mixture(self.params_.scored, n_samples, rng),
            sample_mixture(self.params_.allowed, n_samples, rng),
        ])


class PythagoreanRegressor(RegressorMixin, BaseEstimator):
    """``RS^e / (RS^e + RA^e)`` on season totals.

    With ``fit_exponent=False`` (default) the exponent stays at ``exponent``;
    otherwise ``fit`` chooses it by least squares against observed win pct.
    """

    def __init__(self, exponent=PYTHWL_EXPONENT, fit_exponent=False):
        self.exponent = exponent
        self.fit_exponent = fit_exponent

    def fit(self, X, y):
        X, y = check_X_y(X, y, dtype=float)
        self._check_totals(X)
        if self.fit_exponent:
            def loss(e):
                return float(np.sum((self._formula(X, e) - y) ** 2))
            res = minimize_scalar(loss, bounds=(0.5, 4.0), method="bounded")
            self.exponent_ = float(res.x)
        else:
            self.exponent_ = float(self.exponent)
        self.n_features_in_ = X.shape[1]
        return self

    @staticmethod
    def _check_totals(X):
        if X.shape[1] != 2:
            raise ValidationError("expected 2 columns [runs_scored, runs_allowed]")
        if np.any(X <= 0):
            raise ValidationError("run totals must be positive")

    @staticmethod
    def _formula(X, e):
        return 1.0 / (1.0 + (X[:, 1] / X[:, 0]) ** e)

    def predict(self, X):
        check_is_fitted(self, "exponent_")
        X = check_array(X, dtype=float)
        self._check_totals(X)
        return np.array([pyth_wl(rs, ra, self.exponent_) for rs, ra in X])
