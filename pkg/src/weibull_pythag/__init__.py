"""Win expectation from linear combinations of Weibull run distributions."""

from .baselines import BaselineKind, predicted_wins, pyth_wl
from .errors import (
    ContractError,
    ConvergenceError,
    DomainError,
    EvaluationError,
    FitError,
    ParseError,
    ValidationError,
)
from .estimators import PythagoreanRegressor, WeibullRunsModel
from .fitting import FitConfig, FitResult, fit_mixture, fit_single_weibull, ls_objective
from .ingestion import (
    BinnedHistogram,
    GameRecord,
    TeamSeason,
    bin_runs,
    group_team_seasons,
    parse_game_log,
    read_game_log,
)
from .weibull import (
    MixtureParams,
    MixtureSide,
    WeibullParams,
    mixture_win_pct,
)

__version__ = "0.1.0"
