"""Wigner function of the cat state on a phase-space grid.

Convention: W(x, p) = (1/(pi hbar)) int Psi*(x+y) Psi(x-y) e^{2ipy/hbar} dy,
so that int int W dx dp = 1 and |W| <= 1/(pi hbar).

For the two-branch state the transform splits into two positive Gaussian
kernels at (+-x0, +-p0) and one interference kernel centred at the origin:

    W = N^2/(pi hbar) [ |a|^2 G(x-x0, p-p0) + |b|^2 G(x+x0, p+p0)
                        + 2 G(x, p) Re(a* b e^{-i theta}) ],
    G(u, v) = exp(-u^2/(2 eta^2) - 2 eta^2 v^2 / hbar^2),
    theta   = 2 (p0 x - x0 p) / hbar.

The interference kernel has unit height regardless of the branch
separation; the overlap I only appears after integrating over phase space.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import CatWeakError, GridResolutionWarning, QuadratureError
from .quadrature import integrate
from .state import CatState, norm_quadrature, raw_superposition

BOUND_SLACK = 1e-9


@dataclass(frozen=True)
class PhaseSpaceGrid:
    x_min: float
    x_max: float
    p_min: float
    p_max: float
    nx: int = 512
    np: int = 512

    def __post_init__(self):
        if not (self.x_max > self.x_min and self.p_max > self.p_min):
            raise ValueError("grid bounds must satisfy max > min on both axes")
        if self.nx < 16 or self.np < 16:
            raise ValueError("grid needs at least 16 points per axis")

    @classmethod
    def default_for(cls, state: CatState, nx: int = 512, np_: int = 512) -> "PhaseSpaceGrid":
        xh = state.x0 + 6.0 * state.eta
        ph = state.p0 + 6.0 * state.hbar / (2.0 * state.eta)
        return cls(-xh, xh, -ph, ph, nx, np_)

    @property
    def x(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.nx)

    @property
    def p(self) -> np.ndarray:
        return np.linspace(self.p_min, self.p_max, self.np)

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / (self.nx - 1)

    @property
    def dp(self) -> float:
        return (self.p_max - self.p_min) / (self.np - 1)

    def as_dict(self) -> dict:
        return {
            "x_min": self.x_min,
            "x_max": self.x_max,
            "p_min": self.p_min,
            "p_max": self.p_max,
            "nx": self.nx,
            "np": self.np,
        }


@dataclass(frozen=True)
class WignerField:
    grid: PhaseSpaceGrid
    values: np.ndarray  # values[i, j] = W(x_i, p_j)
    min_value: float
    total_mass: float


def _kernel(u, v, eta, hbar):
    return np.exp(-(u**2) / (2.0 * eta**2) - 2.0 * eta**2 * v**2 / hbar**2)


def wigner_closed(state: CatState, x, p):
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    eta, hbar, x0, p0 = state.eta, state.hbar, state.x0, state.p0
    a, b = state.a, state.b
    theta = 2.0 * (p0 * x - x0 * p) / hbar
    cross = a.conjugate() * b
    w = (
        abs(a) ** 2 * _kernel(x - x0, p - p0, eta, hbar)
        + abs(b) ** 2 * _kernel(x + x0, p + p0, eta, hbar)
        + 2.0 * _kernel(x, p, eta, hbar) * (cross.real * np.cos(theta) + cross.imag * np.sin(theta))
    )
    w = state.normalization**2 * w / (math.pi * hbar)
    return w if w.ndim else float(w)


def wigner_quadrature(state: CatState, x: float, p: float, atol: float = 1e-13) -> float:
    """Independent oracle: the defining transform by adaptive quadrature."""
    L = state.span + abs(x)
    norm = norm_quadrature(state)
    value = integrate(
        lambda y: np.conj(raw_superposition(state, x + y))
        * raw_superposition(state, x - y)
        * np.exp(2j * p * y / state.hbar),
        -L,
        L,
        atol=atol,
    )
    value = value / (norm * math.pi * state.hbar)
    if abs(value.imag) > 1e-10:
        raise QuadratureError(f"Wigner integral has imaginary residue {value.imag:.3e}")
    return value.real


def wigner_field(state: CatState, grid: PhaseSpaceGrid | None = None) -> WignerField:
    grid = grid or PhaseSpaceGrid.default_for(state)
    if grid.dx > state.eta / 8.0 or grid.dp > state.hbar / (16.0 * state.eta):
        warnings.warn(
            f"Wigner grid spacing (dx={grid.dx:g}, dp={grid.dp:g}) is coarser than "
            f"(eta/8, hbar/(16 eta)) = ({state.eta / 8:g}, {state.hbar / (16 * state.eta):g})",
            GridResolutionWarning,
            stacklevel=2,
        )
    X, P = np.meshgrid(grid.x, grid.p, indexing="ij")
    values = wigner_closed(state, X, P)
    bound = 1.0 / (math.pi * state.hbar) + BOUND_SLACK
    peak = float(np.max(np.abs(values)))
    if peak > bound:
        raise CatWeakError(f"|W| reached {peak!r}, above the bound 1/(pi hbar)")
    mass = float(np.trapezoid(np.trapezoid(values, grid.p, axis=1), grid.x))
    return WignerField(grid, values, float(values.min()), mass)


def marginals(field: WignerField) -> tuple[np.ndarray, np.ndarray]:
    """(int W dp on the x grid, int W dx on the p grid)."""
    g = field.grid
    return np.trapezoid(field.values, g.p, axis=1), np.trapezoid(field.values, g.x, axis=0)
