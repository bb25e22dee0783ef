import math

import numpy as np
import pytest
from scipy import special

from app.modules.common.errors import (
    BParameterPole,
    DomainError,
    PoleAtNonpositiveInteger,
    QuadratureNotConverged,
)
from app.modules.specialfn import (
    bessel_k,
    gamma_sign,
    log_bessel_k,
    log_gamma,
    log_gamma_ratio,
    pfq,
    quad_semi_infinite,
)


def test_bessel_k_reference_value():
    assert bessel_k(0, 1.0) == pytest.approx(0.42102443824070834, rel=1e-14)


def test_log_bessel_k_large_argument():
    # K_(1/2)(x) = sqrt(pi / 2x) e^(-x)
    expected = 0.5 * math.log(math.pi / 1600.0) - 800.0
    assert log_bessel_k(0.5, 800.0) == pytest.approx(expected, rel=1e-12)


def test_log_bessel_k_small_argument():
    expected = math.log(0.5) + 2 * math.log(2 / 1e-200)
    assert log_bessel_k(2, 1e-200) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("x", [0.1, 1.0, 7.5])
def test_bessel_k_is_even_in_the_order(x):
    assert bessel_k(-0.5, x) == pytest.approx(bessel_k(0.5, x), rel=1e-15)
    assert log_bessel_k(-1.5, x) == pytest.approx(log_bessel_k(1.5, x), rel=1e-14)


@pytest.mark.parametrize("nu, x", [(0, 0.0), (1, -2.0), (11, 1.0), (0, math.inf)])
def test_bessel_k_domain(nu, x):
    with pytest.raises(DomainError):
        bessel_k(nu, x)


def test_log_gamma():
    assert log_gamma(5) == pytest.approx(math.log(24))
    assert gamma_sign(-0.5) == -1
    with pytest.raises(PoleAtNonpositiveInteger):
        log_gamma(-2)
    with pytest.raises(PoleAtNonpositiveInteger):
        gamma_sign(0)


def test_log_gamma_recursion():
    for x in np.linspace(0.5, 100.0, 200):
        assert log_gamma(x + 1) - log_gamma(x) == pytest.approx(math.log(x), abs=1e-12)


def test_log_gamma_ratio():
    value, sign = log_gamma_ratio([5], [3])
    assert value == pytest.approx(math.log(12))
    assert sign == 1
    _, sign = log_gamma_ratio([-0.5], [1])
    assert sign == -1


def test_zero_f_one_is_a_bessel_function():
    result = pfq([], [1], 1)
    assert result.converged
    assert result.value == pytest.approx(2.2795853023360673, rel=1e-14)
    assert result.value == pytest.approx(special.iv(0, 2.0), rel=1e-14)


def test_one_f_one_is_the_exponential():
    assert pfq([1], [1], 2.0).value == pytest.approx(math.exp(2.0), rel=1e-14)


def test_terminating_series():
    result = pfq([-2], [1], 1)
    assert result.value == pytest.approx(-0.5)
    assert result.bound == 0.0
    assert result.converged


def test_complex_argument():
    z = 0.5 + 0.5j
    result = pfq([], [2, 3], z)
    expected = sum(z**n / (math.factorial(n) * math.factorial(n + 1) * math.factorial(n + 2) / 2) for n in range(40))
    assert isinstance(result.value, complex)
    assert result.value == pytest.approx(expected, rel=1e-14)


def test_series_parameter_errors():
    with pytest.raises(BParameterPole):
        pfq([], [-2], 1.0)
    with pytest.raises(DomainError):
        pfq([1, 2], [3], 0.5)


def test_quadrature_of_exponential():
    assert quad_semi_infinite(lambda r: math.exp(-r)) == pytest.approx(1.0, abs=1e-10)


def test_quadrature_reports_non_convergence():
    with pytest.raises(QuadratureNotConverged):
        quad_semi_infinite(lambda r: math.exp(-r), min_degree=4, max_degree=4)


def test_quadrature_of_a_gamma_moment():
    assert quad_semi_infinite(lambda r: r**3 * math.exp(-r)) == pytest.approx(6.0, rel=1e-10)


def series_terms(a, b, z, count):
    term, terms = 1.0, [1.0]
    for n in range(count - 1):
        ratio = z / (n + 1)
        for value in a:
            ratio *= value + n
        for value in b:
            ratio /= value + n
        term *= ratio
        terms.append(term)
    return terms


@pytest.mark.parametrize("a, b, z", [([], [2, 3], 5.0), ([1.5], [2.5], 3.0), ([], [0.5], 12.0)])
def test_tail_bound_covers_the_next_fifty_terms(a, b, z):
    result = pfq(a, b, z, tol=1e-8)
    assert result.converged
    terms = series_terms(a, b, z, result.terms_used + 50)
    assert sum(terms[: result.terms_used]) == pytest.approx(result.value, rel=1e-14)
    extra = sum(abs(t) for t in terms[result.terms_used :])
    assert extra <= result.bound * abs(result.value)
