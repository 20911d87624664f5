from hypothesis import given, strategies as st
import pytest

from weibull_pythag.baselines import (
    PYTHWL_EXPONENT,
    BaselineKind,
    predicted_wins,
    pyth_wl,
    shifted_pythagorean,
)
from weibull_pythag.errors import DomainError
from weibull_pythag.special_fn import gamma_fn
from weibull_pythag.weibull import MixtureParams, mixture_win_pct

totals = st.floats(1.0, 2000.0)
exps = st.floats(0.2, 5.0)


def test_examples():
    assert pyth_wl(700, 700, 1.3) == 0.5
    assert pyth_wl(800, 700, 2) == pytest.approx(800 ** 2 / (800 ** 2 + 700 ** 2), abs=1e-15)
    assert pyth_wl(800, 700, 2) == pytest.approx(0.5664, abs=1e-4)
    assert PYTHWL_EXPONENT == 1.83
    assert BaselineKind.pythwl183().exponent == 1.83
    assert BaselineKind.james2().win_pct(800, 700) == pyth_wl(800, 700, 2)
    with pytest.raises(DomainError):
        BaselineKind.custom(-1)


def test_domain():
    with pytest.raises(DomainError):
        pyth_wl(0, 5)
    with pytest.raises(DomainError):
        pyth_wl(5, 5, 0)
    with pytest.raises(DomainError):
        predicted_wins(0.5, 0)


def test_predicted_wins():
    assert predicted_wins(0.5, 162) == 81
    assert predicted_wins(1.0, 162) == 162
    assert predicted_wins(0.556, 162) == pytest.approx(90.07, abs=0.01)


@given(totals, totals, exps)
def test_complement(rs, ra, e):
    assert pyth_wl(rs, ra, e) + pyth_wl(ra, rs, e) == pytest.approx(1.0, abs=1e-15)


@given(totals, totals, exps)
def test_monotone(rs, ra, e):
    w = pyth_wl(rs, ra, e)
    assert pyth_wl(rs * 1.01, ra, e) > w or w == 1.0
    assert pyth_wl(rs, ra * 1.01, e) < w or w == 0.0


@given(st.floats(2.0, 8.0), st.floats(2.0, 8.0), st.floats(1.2, 2.6))
def test_single_weibull_reduces_to_shifted_formula(rs_obs, ra_obs, g):
    beta = -0.5
    a_rs = (rs_obs - beta) / gamma_fn(1 + 1 / g)
    a_ra = (ra_obs - beta) / gamma_fn(1 + 1 / g)
    m = MixtureParams.from_vector(a_rs, a_rs, a_ra, a_ra, g, 1.0, 1.0)
    expected = (rs_obs + 0.5) ** g / ((rs_obs + 0.5) ** g + (ra_obs + 0.5) ** g)
    assert mixture_win_pct(m) == pytest.approx(expected, rel=1e-12)
    assert shifted_pythagorean(rs_obs, ra_obs, g) == pytest.approx(expected, rel=1e-12)
