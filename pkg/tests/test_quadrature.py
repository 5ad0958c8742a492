import math

import numpy as np
import pytest

from catweak.errors import QuadratureError
from catweak.quadrature import integrate


def test_gaussian_integral():
    value = integrate(lambda x: np.exp(-(x**2)), -12, 12)
    assert value == pytest.approx(math.sqrt(math.pi), abs=1e-13)


def test_oscillatory_gaussian():
    # int e^{-x^2/2} cos(k x) dx = sqrt(2 pi) e^{-k^2/2}
    k = 7.5
    value = integrate(lambda x: np.exp(-(x**2) / 2) * np.cos(k * x), -15, 15)
    assert value == pytest.approx(math.sqrt(2 * math.pi) * math.exp(-(k**2) / 2), abs=1e-13)


def test_complex_integrand_returns_complex():
    value = integrate(lambda x: np.exp(-(x**2) + 1j * x), -12, 12)
    assert isinstance(value, complex)
    assert value.real == pytest.approx(math.sqrt(math.pi) * math.exp(-0.25), abs=1e-13)
    assert abs(value.imag) < 1e-14


@pytest.mark.parametrize("n", [0, 1, 5, 11])
def test_polynomials(n):
    assert integrate(lambda x: x**n, 0.0, 2.0) == pytest.approx(2.0 ** (n + 1) / (n + 1), rel=1e-13)


def test_nonconvergence_is_reported():
    with pytest.raises(QuadratureError):
        integrate(lambda x: np.sign(x - 0.3) * np.sin(1e4 * x**2), -1, 1, max_level=3)


def test_empty_interval():
    with pytest.raises(ValueError):
        integrate(np.exp, 1.0, 1.0)
