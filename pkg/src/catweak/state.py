"""Two-branch Gaussian cat state and its exact densities.

The state is

    Psi(x) = N * (a * psi_plus(x) + b * psi_minus(x)),
    psi_pm(x) = (2 pi eta^2)^(-1/4) exp(-(x -+ x0)^2 / (4 eta^2) +- i p0 x / hbar),

with |a|^2 + |b|^2 = 1 and N = 1 / sqrt(1 + 2 I Re(conj(a) b)), where
I = <psi_plus|psi_minus> is real for this family.

Complex amplitudes are plain Python ``complex`` values.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DegenerateStateError, GridResolutionWarning
from .quadrature import integrate

UNIT_TOL = 1e-12
DEGENERACY_TOL = 1e-14


def as_complex(value, name: str = "value") -> complex:
    """Coerce ``value`` (number or ``[re, im]`` pair) to a finite complex."""
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError(f"{name}: expected [re, im], got {value!r}")
        value = complex(float(value[0]), float(value[1]))
    z = complex(value)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"{name} must be finite, got {z!r}")
    return z


@dataclass(frozen=True)
class CatState:
    """Superposition of two Gaussian packets at +-x0 carrying momenta +-p0."""

    a: complex
    b: complex
    x0: float
    p0: float
    eta: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "a", as_complex(self.a, "a"))
        object.__setattr__(self, "b", as_complex(self.b, "b"))
        for name in ("x0", "p0", "eta", "hbar"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        if self.eta <= 0 or self.hbar <= 0:
            raise ValueError("eta and hbar must be positive")
        if self.x0 < 0 or self.p0 < 0:
            raise ValueError("x0 and p0 must be non-negative; put signs into a, b")
        weight = abs(self.a) ** 2 + abs(self.b) ** 2
        if abs(weight - 1.0) > UNIT_TOL:
            raise ValueError(f"|a|^2 + |b|^2 = {weight!r}, expected 1")
        if self.norm_denominator <= DEGENERACY_TOL:
            raise DegenerateStateError(
                f"1 + 2 I Re(a* b) = {self.norm_denominator:.3e}: the branches cancel"
            )

    @classmethod
    def from_phi(cls, phi: float, x0: float, p0: float, eta: float = 1.0, hbar: float = 1.0):
        """Amplitudes a = e^{i phi}/sqrt2, b = e^{-i phi}/sqrt2."""
        a = complex(math.cos(phi), math.sin(phi)) / math.sqrt(2)
        return cls(a, a.conjugate(), x0, p0, eta, hbar)

    @cached_property
    def inner_product(self) -> float:
        return inner_product_I(self)

    @cached_property
    def norm_denominator(self) -> float:
        return 1.0 + 2.0 * self.inner_product * (self.a.conjugate() * self.b).real

    @cached_property
    def normalization(self) -> float:
        return 1.0 / math.sqrt(self.norm_denominator)

    @property
    def span(self) -> float:
        """Half-width of the window holding all but ~e^-50 of the density."""
        return self.x0 + 10.0 * self.eta


def inner_product_I(state: CatState) -> float:
    """Closed-form <psi_plus|psi_minus>; always in [0, 1]."""
    eta, hbar = state.eta, state.hbar
    return math.exp(-2.0 * state.p0**2 * eta**2 / hbar**2 - state.x0**2 / (2.0 * eta**2))


def normalization(state: CatState) -> float:
    return state.normalization


def branch(state: CatState, x, sign: int) -> np.ndarray:
    """Normalised component packet psi_plus (sign=+1) or psi_minus (sign=-1)."""
    x = np.asarray(x, dtype=float)
    eta = state.eta
    envelope = -((x - sign * state.x0) ** 2) / (4.0 * eta**2)
    phase = sign * state.p0 * x / state.hbar
    return (2.0 * np.pi * eta**2) ** -0.25 * np.exp(envelope + 1j * phase)


def wavefunction(state: CatState, x) -> np.ndarray:
    return state.normalization * (state.a * branch(state, x, +1) + state.b * branch(state, x, -1))


def momentum_branch(state: CatState, p, sign: int) -> np.ndarray:
    """Fourier transform (unitary, e^{-ipx/hbar}) of ``branch(state, ., sign)``."""
    p = np.asarray(p, dtype=float)
    eta, hbar = state.eta, state.hbar
    prefactor = (2.0 * eta**2 / (np.pi * hbar**2)) ** 0.25
    phase = (state.p0 * state.x0 - sign * p * state.x0) / hbar
    return prefactor * np.exp(-(eta**2) * (p - sign * state.p0) ** 2 / hbar**2 + 1j * phase)


def momentum_wavefunction(state: CatState, p) -> np.ndarray:
    return state.normalization * (
        state.a * momentum_branch(state, p, +1) + state.b * momentum_branch(state, p, -1)
    )


def _check_grid(grid: np.ndarray, half_width: float, max_step: float, label: str) -> None:
    if grid.ndim != 1 or grid.size < 2:
        return
    if grid.min() > -half_width or grid.max() < half_width:
        warnings.warn(
            f"{label} grid [{grid.min():g}, {grid.max():g}] does not cover +-{half_width:g}",
            GridResolutionWarning,
            stacklevel=3,
        )
    step = float(np.max(np.diff(grid)))
    if step > max_step:
        warnings.warn(
            f"{label} grid spacing {step:g} exceeds {max_step:g}",
            GridResolutionWarning,
            stacklevel=3,
        )


def position_density(state: CatState, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    _check_grid(x, state.x0 + 6.0 * state.eta, state.eta / 10.0, "position")
    return np.abs(wavefunction(state, x)) ** 2


def momentum_density(state: CatState, p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    width = state.hbar / (2.0 * state.eta)
    _check_grid(p, state.p0 + 6.0 * width, width / 10.0, "momentum")
    return np.abs(momentum_wavefunction(state, p)) ** 2


# -- quadrature oracles -------------------------------------------------------
# These rebuild every quantity from psi_pm alone; none of them touch the
# closed forms above except the component packets themselves.


def inner_product_quadrature(state: CatState, atol: float = 1e-13) -> float:
    L = state.span
    value = integrate(
        lambda x: np.conj(branch(state, x, +1)) * branch(state, x, -1), -L, L, atol=atol
    )
    return value.real


def _analytic_branch(state: CatState, z, sign: int, conjugate: bool) -> np.ndarray:
    """Entire continuation of psi_pm (or of conj(psi_pm) on the real axis) to complex z."""
    eta = state.eta
    phase = sign * state.p0 * z / state.hbar
    if conjugate:
        phase = -phase
    envelope = -((z - sign * state.x0) ** 2) / (4.0 * eta**2)
    return (2.0 * np.pi * eta**2) ** -0.25 * np.exp(envelope + 1j * phase)


def inner_product_contour(state: CatState, rtol: float = 1e-13) -> float:
    """<psi_plus|psi_minus> integrated along Im z = -2 p0 eta^2 / hbar.

    On the real axis the integrand oscillates and the result can be 1e-14 of
    its magnitude, which double precision cannot resolve. The product is
    entire and decays in the strip, so the line through its stationary point
    gives the same integral without cancellation.
    """
    shift = -2.0 * state.p0 * state.eta**2 / state.hbar
    L = 12.0 * state.eta
    # scale out the integrand's size at the stationary point
    centre = 1j * shift
    peak = abs(_analytic_branch(state, centre, +1, True) * _analytic_branch(state, centre, -1, False))
    if peak == 0.0:
        return 0.0
    value = integrate(
        lambda t: _analytic_branch(state, t + 1j * shift, +1, True)
        * _analytic_branch(state, t + 1j * shift, -1, False)
        / peak,
        -L,
        L,
        atol=rtol,
    )
    return value.real * peak


def raw_superposition(state: CatState, x) -> np.ndarray:
    """a psi_plus + b psi_minus, without the global normalisation."""
    return state.a * branch(state, x, +1) + state.b * branch(state, x, -1)


def norm_quadrature(state: CatState, atol: float = 1e-13) -> float:
    """Integral of |a psi_plus + b psi_minus|^2, i.e. 1/N^2, by quadrature."""
    L = state.span
    return integrate(lambda x: np.abs(raw_superposition(state, x)) ** 2, -L, L, atol=atol)


def momentum_wavefunction_quadrature(state: CatState, p: float, atol: float = 1e-12) -> complex:
    """Phi(p) = (2 pi hbar)^(-1/2) int Psi(x) e^{-ipx/hbar} dx with quadrature normalisation."""
    L = state.span
    scale = 1.0 / math.sqrt(norm_quadrature(state))
    value = integrate(
        lambda x: raw_superposition(state, x) * np.exp(-1j * p * x / state.hbar), -L, L, atol=atol
    )
    return scale * value / math.sqrt(2.0 * math.pi * state.hbar)
