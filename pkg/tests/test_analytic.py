import pytest

from wqbern.analytic import (
    generating_function_check,
    generating_function_exact,
    generating_function_series,
    series_number_check,
    terms_needed,
)
from wqbern.errors import ToleranceNotMet
from wqbern.qbern import polynomial_value_at_integer


def test_number_series_examples():
    r = series_number_check(1, 1, 0.5, M_terms=60)
    assert r.lhs == pytest.approx(-1 / 1.5)
    assert r.abs_error < 1e-12
    r = series_number_check(2, 1, 0.5)
    assert r.lhs == pytest.approx(0.5 / (1.5 * 1.75), rel=1e-14)
    assert r.abs_error < 1e-12
    assert series_number_check(1, 3, 0.25).abs_error < 1e-12


@pytest.mark.parametrize("alpha", [1, 2, 3])
@pytest.mark.parametrize("q", [0.25, 0.5])
def test_number_series_grid(alpha, q):
    for n in range(1, 8):
        assert series_number_check(n, alpha, q).passed


def test_generating_function_examples():
    r = generating_function_check(1, 0.5, 0.1, 0, M_terms=80, N_terms=12)
    assert r.abs_error < 1e-10 and r.statement == "C3"
    r = generating_function_check(2, 0.3, 0.2, 1)
    assert r.abs_error < 1e-10 and r.statement == "GF-poly"


def test_t_zero_collapses_to_one():
    for q in (0.25, 0.5):
        assert generating_function_series(2, q, 0.0, 0, 200) == pytest.approx(1.0, abs=1e-15)
        assert generating_function_exact(2, q, 0.0, 0, 10) == 1.0


def test_printed_weight_fails_off_zero():
    # the variant without q^(alpha x) only matches at x = 0
    good = generating_function_check(2, 0.3, 0.2, 1)
    bad = generating_function_check(2, 0.3, 0.2, 1, form="printed")
    assert good.passed and not bad.passed
    assert bad.abs_error > 0.1
    assert generating_function_check(2, 0.3, 0.2, 0, form="printed").passed


def test_tolerance_error_raised_on_request():
    with pytest.raises(ToleranceNotMet):
        generating_function_check(1, 0.5, 0.1, 1, form="printed", raise_on_fail=True)
    with pytest.raises(ToleranceNotMet):
        series_number_check(3, 1, 0.5, M_terms=3, raise_on_fail=True)


def test_complex_q():
    q = 0.3 + 0.4j
    assert generating_function_check(2, q, 0.1, 1).passed
    assert series_number_check(2, 1, q).passed


def test_truncation_monotone():
    prev = float("inf")
    for M in (5, 10, 20, 40, 80):
        err = series_number_check(3, 2, 0.5, M_terms=M).abs_error
        assert err <= prev * (1 + 1e-9) + 1e-15
        prev = err
    prev = float("inf")
    for N in (2, 4, 6, 8, 12, 16):
        err = generating_function_check(1, 0.5, 0.2, 1, M_terms=120, N_terms=N).abs_error
        assert err <= prev * (1 + 1e-9) + 1e-15
        prev = err


@pytest.mark.parametrize("x", [0, 1, 2])
def test_derivative_at_zero_is_first_coefficient(x):
    q, alpha, h = 0.5, 2, 1e-6
    M = 200
    deriv = (generating_function_series(alpha, q, h, x, M) - generating_function_series(alpha, q, -h, x, M)) / (2 * h)
    b1 = polynomial_value_at_integer(1, alpha, x)(q)
    assert deriv == pytest.approx(b1, abs=1e-4)


def test_terms_needed_bounds():
    M = terms_needed(0.5, 1e-10)
    assert 0.5**M / 0.5 < 1e-11
    with pytest.raises(ValueError):
        terms_needed(1.0, 1e-10)
    with pytest.raises(ValueError):
        generating_function_check(1, 0.5, 0.9)
