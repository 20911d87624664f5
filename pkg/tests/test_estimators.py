import numpy as np
import pytest
from sklearn.base import clone

from weibull_pythag.errors import ValidationError
from weibull_pythag.estimators import PythagoreanRegressor, WeibullRunsModel
from weibull_pythag.fitting import FitConfig, fit_mixture
from weibull_pythag.ingestion import bin_runs


@pytest.fixture(scope="module")
def games(team_seasons_2011):
    return team_seasons_2011[3].as_array()


def test_params_and_clone():
    m = WeibullRunsModel(n_components=1, n_starts=3, random_state=4)
    assert clone(m).get_params() == m.get_params()
    assert m.get_params()["n_starts"] == 3


def test_fit_matches_functional_api(games):
    m = WeibullRunsModel(n_starts=4, random_state=2).fit(games)
    direct = fit_mixture(bin_runs(games[:, 0]), bin_runs(games[:, 1]), FitConfig(multistart_count=4, seed=2))
    assert m.params_ == direct.params
    assert m.predict_win_pct() == direct.win_pct
    assert m.expected_wins() == pytest.approx(direct.win_pct * 162)
    assert m.score(games) == pytest.approx(-direct.objective)


def test_single_component(games):
    m = WeibullRunsModel(n_components=1, n_starts=3).fit(games)
    assert m.fit_result_.n_params == 3
    assert m.params_.scored.weight1 == 1.0


def test_sample_shape(games):
    m = WeibullRunsModel(n_starts=3).fit(games)
    s = m.sample(500, random_state=0)
    assert s.shape == (500, 2) and np.all(s > -0.5)
    assert np.array_equal(s, m.sample(500, random_state=0))


def test_input_validation():
    with pytest.raises(ValidationError):
        WeibullRunsModel().fit(np.array([[1, 1], [2, 3]]))
    with pytest.raises(ValidationError):
        WeibullRunsModel().fit(np.array([[1, 2, 3]]))
    with pytest.raises(ValidationError):
        WeibullRunsModel().fit(np.array([[1.5, 2]]))
    with pytest.raises(ValueError):
        WeibullRunsModel(n_components=3).fit(np.array([[1, 2]] * 30))


def test_regressor_fixed_and_fitted():
    X = np.array([[800.0, 700.0], [650.0, 720.0], [700.0, 700.0], [760.0, 640.0]])
    fixed = PythagoreanRegressor(exponent=2).fit(X, np.zeros(4))
    assert fixed.predict(X)[2] == 0.5
    assert fixed.predict(X[:1])[0] == pytest.approx(0.5664, abs=1e-4)
    y = PythagoreanRegressor(exponent=1.7).fit(X, np.zeros(4)).predict(X)
    fitted = PythagoreanRegressor(fit_exponent=True).fit(X, y)
    assert fitted.exponent_ == pytest.approx(1.7, abs=1e-4)
    assert fitted.score(X, y) == pytest.approx(1.0, abs=1e-8)
    with pytest.raises(ValidationError):
        fixed.predict(np.array([[0.0, 10.0]]))
