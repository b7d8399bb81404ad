from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dynorient.params import (
    NO_RANK,
    ParameterError,
    Parameters,
    RankTable,
    as_fraction,
    ceil_log,
    derive_parameters,
)


# Expected b and eta values below were computed with mpmath at 50 digits.

@pytest.mark.parametrize("n, b", [(2, 4), (8, 8), (16, 10), (64, 14), (1000, 22)])
def test_approx_oalpha_b(n, b):
    p = derive_parameters("approx_Oalpha", n)
    assert (p.theta, p.eta, p.b) == (0, 3, b)


@pytest.mark.parametrize("eps, n, b", [
    (0.5, 1024, 373), (1, 16, 42), (0.5, 16, 150), (0.25, 16, 565), (1, 64, 62), (0.25, 12, 507),
])
def test_eps_density_b(eps, n, b):
    p = derive_parameters("eps_density", n, epsilon=eps)
    assert p.b == b
    assert p.gamma == as_fraction(eps) / 2
    assert (p.theta, p.eta) == (0, 3)


@pytest.mark.parametrize("n, eta", [(8, 3), (16, 3), (64, 5), (2980, 8), (2981, 9)])
def test_additive_log_eta(n, eta):
    p = derive_parameters("additive_log", n)
    assert (p.theta, p.b, p.eta) == (1, 1, eta)


def test_lambda_is_exact():
    p = derive_parameters("eps_density", 1024, epsilon=0.5)
    assert p.lam == Fraction(3, 64 * 373)


def test_floats_convert_through_repr():
    assert as_fraction(0.1) == Fraction(1, 10)
    assert as_fraction("3/7") == Fraction(3, 7)


def test_rejects_unsatisfiable_theta_zero():
    # b/eta <= floor(b/2) fails for b = 3, eta = 1
    with pytest.raises(ParameterError):
        Parameters(0, 1, 3, 1, 8)
    with pytest.raises(ParameterError):
        Parameters(0, 3, 2, 1, 8)  # eta/b > 1


def test_rejects_bad_inputs():
    for args in [(2, 3, 4, 1, 8), (0, 3, 0, 1, 8), (0, 0, 4, 1, 8), (0, 3, 4, 0, 8), (0, 3, 4, 1, 1)]:
        with pytest.raises(ParameterError):
            Parameters(*args)
    with pytest.raises(ParameterError):
        derive_parameters("eps_density", 16)
    with pytest.raises(ParameterError):
        derive_parameters("eps_density", 16, epsilon=2)
    with pytest.raises(ParameterError):
        derive_parameters("nope", 16)


@pytest.mark.parametrize("mode", ["approx_Oalpha", "additive_log", "eps_density"])
@pytest.mark.parametrize("n", [2, 3, 16, 100, 5000])
def test_derived_sets_satisfy_constraints(mode, n):
    p = derive_parameters(mode, n, epsilon=Fraction(1, 2))
    assert (1 + p.lam) ** 5 <= 1 + p.slack
    if p.theta == 0:
        assert p.slack <= 1
        assert p.b / p.eta <= p.b // 2


def test_ceil_log():
    assert ceil_log(Fraction(2), 16) == 4
    assert ceil_log(Fraction(2), 17) == 5
    assert ceil_log(Fraction(3, 2), 1) == 0


def test_scan_width():
    p = derive_parameters("additive_log", 64)
    assert p.scan_width == 2 * 64 // 5 + 1  # ceil(2 * 64 / 5) = 26


@given(st.integers(1, 10**6), st.sampled_from([Fraction(1, 64), Fraction(3, 640), Fraction(1, 7000)]))
def test_rank_matches_exact_definition(d, lam):
    r = RankTable(lam)(d)
    base = 1 + lam
    assert base ** r <= d < base ** (r + 1)


def test_rank_of_zero_is_sentinel():
    assert RankTable(Fraction(1, 64))(0) == NO_RANK


@given(st.integers(0, 500), st.integers(0, 500))
def test_flip_predicates_match_rational_forms(high, low):
    p = derive_parameters("approx_Oalpha", 64)
    lam, theta, q = p.lam, p.theta, p.quarter
    assert p.exceeds(high, low) == (high > max((1 + lam) * low + theta, low + 1, q))
    assert p.reaches(high, low) == (high >= max((1 + lam) * low, q))
    assert p.stale(high, low) == (high > (1 + lam) * low)
