import math

from hypothesis import given, settings, strategies as st
import pytest
from scipy import stats

from weibull_pythag.errors import DomainError
from weibull_pythag.special_fn import (
    betainc,
    chi2_cdf,
    chi2_inverse_cdf,
    chi2_sf,
    gamma_fn,
    log_gamma,
    student_t_ppf,
    student_t_sf,
)


@pytest.mark.parametrize("x, expected", [
    (1.0, 1.0),
    (1.5, math.sqrt(math.pi) / 2),
    (5.0, 24.0),
    (0.5, math.sqrt(math.pi)),
    (11.0, 3628800.0),
])
def test_gamma_known_values(x, expected):
    assert gamma_fn(x) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("x", [0.5, 0.73, 1.0, 2.5, 7.1, 19.9, 33.3, 50.0])
def test_gamma_matches_math_gamma(x):
    assert gamma_fn(x) == pytest.approx(math.gamma(x), rel=1e-12)
    assert log_gamma(x) == pytest.approx(math.lgamma(x), abs=1e-12)


@pytest.mark.parametrize("bad", [0.0, -1.0, math.inf, math.nan])
def test_gamma_domain(bad):
    with pytest.raises(DomainError):
        gamma_fn(bad)


@given(st.floats(min_value=0.5, max_value=20.0))
def test_gamma_recurrence(x):
    assert gamma_fn(x + 1) == pytest.approx(x * gamma_fn(x), rel=1e-10)


@pytest.mark.parametrize("p, df, expected", [
    (0.95, 16, 26.3),
    (0.99, 16, 32.0),
    (0.95, 109, 134.37),
    (0.99, 109, 146.26),
])
def test_chi2_quantiles_reported_values(p, df, expected):
    assert chi2_inverse_cdf(p, df) == pytest.approx(expected, abs=0.05)


@pytest.mark.parametrize("df", [1, 2, 5, 16, 40, 109, 250])
@pytest.mark.parametrize("p", [1e-4, 0.05, 0.5, 0.9, 0.95, 0.99, 1 - 0.01 / 30])
def test_chi2_quantile_against_scipy(p, df):
    assert chi2_inverse_cdf(p, df) == pytest.approx(stats.chi2.ppf(p, df), abs=1e-6)


@pytest.mark.parametrize("p", [0.5, 0.9, 0.95, 0.99])
@pytest.mark.parametrize("df", [1, 16, 109])
def test_chi2_roundtrip(p, df):
    assert chi2_sf(chi2_inverse_cdf(p, df), df) == pytest.approx(1 - p, abs=1e-6)


def test_chi2_sf_examples():
    assert chi2_sf(0, 16) == 1.0
    assert chi2_sf(26.296, 16) == pytest.approx(0.05, abs=1e-3)
    assert chi2_sf(146.26, 109) == pytest.approx(0.01, abs=1e-3)


def test_chi2_domain():
    with pytest.raises(DomainError):
        chi2_sf(-1.0, 3)
    for p in (0.0, 1.0, -0.1, 1.5):
        with pytest.raises(DomainError):
            chi2_inverse_cdf(p, 4)
    with pytest.raises(DomainError):
        chi2_cdf(1.0, 0)


@settings(max_examples=50)
@given(st.floats(0.0, 300.0), st.floats(0.0, 300.0), st.integers(1, 120))
def test_chi2_sf_monotone(x1, x2, df):
    lo, hi = sorted((x1, x2))
    assert chi2_sf(hi, df) <= chi2_sf(lo, df) + 1e-15


@pytest.mark.parametrize("a, b, x", [(0.5, 0.5, 0.3), (5, 0.5, 0.9), (2.3, 7.1, 0.2), (40, 30, 0.6)])
def test_betainc_against_scipy(a, b, x):
    from scipy.special import betainc as sp_betainc
    assert betainc(a, b, x) == pytest.approx(sp_betainc(a, b, x), abs=1e-13)


def test_student_t_examples():
    assert student_t_sf(0, 10) == 0.5
    # 0.050037631032923593: quadrature of the t density over [1.812, inf)
    assert student_t_sf(1.812, 10) == pytest.approx(0.050037631032923593, abs=1e-12)
    assert student_t_sf(1.812, 10) == pytest.approx(0.05, abs=1e-3)
    assert student_t_sf(-1.812, 10) == pytest.approx(0.95, abs=1e-3)


@pytest.mark.parametrize("df", [1, 2.5, 7.3, 30, 400])
@pytest.mark.parametrize("t", [-5.0, -1.2, 0.3, 2.0, 8.0])
def test_student_t_against_scipy(t, df):
    assert student_t_sf(t, df) == pytest.approx(stats.t.sf(t, df), abs=1e-12)


@pytest.mark.parametrize("df", [2, 7.3, 30])
def test_student_t_ppf(df):
    assert student_t_ppf(0.975, df) == pytest.approx(stats.t.ppf(0.975, df), abs=1e-9)
    assert student_t_ppf(0.025, df) == pytest.approx(-stats.t.ppf(0.975, df), abs=1e-9)


@given(st.floats(-20, 20), st.floats(-20, 20), st.floats(0.5, 100))
def test_student_t_sf_monotone(t1, t2, df):
    lo, hi = sorted((t1, t2))
    assert student_t_sf(hi, df) <= student_t_sf(lo, df) + 1e-15


def test_student_t_domain():
    with pytest.raises(DomainError):
        student_t_sf(math.nan, 3)
    with pytest.raises(DomainError):
        student_t_sf(1.0, 0)
