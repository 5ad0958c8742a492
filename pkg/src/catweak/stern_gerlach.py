"""Stern-Gerlach weak measurement of sigma_x with post-selection on |up_z>.

A spin-1/2 packet crosses a gradient field B = (B x, 0, 0) for a time tau.
Spreading is neglected, so each spin-x branch is the initial Gaussian
displaced by +-p' tau / (2m) and boosted by +-p', with p' = mu B tau.
The y and z factors are common to both branches and are dropped; every
quantity here lives on the x axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InverseMapError
from .quadrature import integrate
from .state import CatState
from .weak import SpinSelection, branch_amplitudes


@dataclass(frozen=True)
class SGConfig:
    B: float
    tau: float
    mu: float = 1.0
    m: float = 1.0
    eta: float = 1.0
    p_y: float = 1.0
    d: Optional[float] = None
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("B", "tau", "mu", "m", "eta", "p_y", "hbar"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite")
            object.__setattr__(self, name, value)
        if self.B < 0:
            raise ValueError("field gradient B must be non-negative")
        for name in ("tau", "mu", "m", "eta", "p_y", "hbar"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.d is not None:
            transit = self.p_y * self.tau / self.m
            if abs(self.d - transit) > 1e-9 * max(1.0, abs(transit)):
                raise ValueError(f"d = {self.d!r} inconsistent with p_y tau / m = {transit!r}")

    @property
    def drift_momentum(self) -> float:
        return self.mu * self.B * self.tau


@dataclass(frozen=True)
class EvolvedPacketPair:
    drift_momentum: float
    center_offset: float
    phase_delta: float
    eta: float
    hbar: float

    def packet(self, x, sign: int, include_delta: bool = True) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        eta = self.eta
        phase = sign * self.drift_momentum * x / self.hbar
        if include_delta:
            phase = phase - self.phase_delta
        envelope = -((x - sign * self.center_offset) ** 2) / (4.0 * eta**2)
        return (2.0 * np.pi * eta**2) ** -0.25 * np.exp(envelope + 1j * phase)

    def psi_plus(self, x, include_delta: bool = True) -> np.ndarray:
        return self.packet(x, +1, include_delta)

    def psi_minus(self, x, include_delta: bool = True) -> np.ndarray:
        return self.packet(x, -1, include_delta)


def evolve_packets(cfg: SGConfig) -> EvolvedPacketPair:
    p = cfg.drift_momentum
    return EvolvedPacketPair(
        drift_momentum=p,
        center_offset=p * cfg.tau / (2.0 * cfg.m),
        phase_delta=p**2 * cfg.tau / (6.0 * cfg.m * cfg.hbar),
        eta=cfg.eta,
        hbar=cfg.hbar,
    )


def sg_inner_product(cfg: SGConfig) -> float:
    mu2B2 = (cfg.mu * cfg.B) ** 2
    return math.exp(
        -mu2B2 * cfg.tau**4 / (8.0 * cfg.m**2 * cfg.eta**2)
        - 2.0 * mu2B2 * cfg.tau**2 * cfg.eta**2 / cfg.hbar**2
    )


def _window(cfg: SGConfig) -> float:
    return evolve_packets(cfg).center_offset + 10.0 * cfg.eta


def sg_inner_product_quadrature(cfg: SGConfig, atol: float = 1e-13) -> float:
    pair = evolve_packets(cfg)
    L = _window(cfg)
    value = integrate(lambda x: np.conj(pair.psi_plus(x)) * pair.psi_minus(x), -L, L, atol=atol)
    return value.real


def entangled_state_density(cfg: SGConfig, sel: SpinSelection, x) -> np.ndarray:
    """Position density with the spin traced out (no post-selection)."""
    pair = evolve_packets(cfg)
    a, b = branch_amplitudes(sel)
    return abs(a) ** 2 * np.abs(pair.psi_plus(x)) ** 2 + abs(b) ** 2 * np.abs(pair.psi_minus(x)) ** 2


@dataclass(frozen=True)
class ReducedSpinDensity:
    """Spin state after tracing out x, in the (|up_x>, |down_x>) basis."""

    matrix: np.ndarray

    @property
    def trace(self) -> complex:
        return complex(np.trace(self.matrix))

    @property
    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(0.5 * (self.matrix + self.matrix.conj().T))

    def hermiticity_defect(self) -> float:
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T)))


def reduced_density_matrix(cfg: SGConfig, sel: SpinSelection) -> ReducedSpinDensity:
    """rho_jk = c_j c_k^* <psi_k|psi_j> for the branch amplitudes (c_up, c_down) = (a, b)."""
    a, b = branch_amplitudes(sel)
    I = sg_inner_product(cfg)
    rho = np.array(
        [[abs(a) ** 2, a * b.conjugate() * I], [a.conjugate() * b * I, abs(b) ** 2]],
        dtype=complex,
    )
    return ReducedSpinDensity(rho)


def reduced_density_matrix_quadrature(cfg: SGConfig, sel: SpinSelection) -> ReducedSpinDensity:
    """Partial trace over x of the full spinor, done numerically."""
    pair = evolve_packets(cfg)
    a, b = branch_amplitudes(sel)
    L = _window(cfg)
    comps = (lambda x: a * pair.psi_plus(x), lambda x: b * pair.psi_minus(x))
    rho = np.empty((2, 2), dtype=complex)
    for j in range(2):
        for k in range(2):
            rho[j, k] = integrate(
                lambda x, j=j, k=k: comps[j](x) * np.conj(comps[k](x)), -L, L, atol=1e-13
            )
    return ReducedSpinDensity(rho)


def to_cat_state(cfg: SGConfig) -> tuple[float, float]:
    """(x0, p0) = (p' tau / (2m), p')."""
    p = cfg.drift_momentum
    return p * cfg.tau / (2.0 * cfg.m), p


def from_cat_state(
    x0: float,
    p0: float,
    mu: float = 1.0,
    m: float = 1.0,
    eta: float = 1.0,
    p_y: float = 1.0,
    hbar: float = 1.0,
) -> SGConfig:
    """Solve tau = 2 m x0 / p0 and B = p0 / (mu tau) for a target cat geometry."""
    if x0 == 0 and p0 == 0:
        return SGConfig(B=0.0, tau=1.0, mu=mu, m=m, eta=eta, p_y=p_y, hbar=hbar)
    if p0 <= 0 or x0 <= 0:
        raise InverseMapError(
            f"(x0, p0) = ({x0!r}, {p0!r}): need both positive to fix a finite transit time"
        )
    tau = 2.0 * m * x0 / p0
    return SGConfig(B=p0 / (mu * tau), tau=tau, mu=mu, m=m, eta=eta, p_y=p_y, hbar=hbar)


def post_select(cfg: SGConfig, sel: SpinSelection) -> CatState:
    x0, p0 = to_cat_state(cfg)
    a, b = branch_amplitudes(sel)
    return CatState(a, b, x0, p0, cfg.eta, cfg.hbar)


def post_selected_wavefunction_direct(cfg: SGConfig, sel: SpinSelection, x) -> np.ndarray:
    """<up_z| applied to the full spinor, normalised by quadrature.

    Built from the sigma_z components of |up_x> = (1, 1)/sqrt2 and
    |down_x> = (1, -1)/sqrt2 and the evolved packets, independently of
    ``post_select``.
    """
    pair = evolve_packets(cfg)
    a, b = branch_amplitudes(sel)
    up_x = np.array([1.0, 1.0]) / math.sqrt(2.0)
    down_x = np.array([1.0, -1.0]) / math.sqrt(2.0)

    def up_z_component(y):
        return a * pair.psi_plus(y) * up_x[0] + b * pair.psi_minus(y) * down_x[0]

    L = _window(cfg)
    norm = integrate(lambda y: np.abs(up_z_component(y)) ** 2, -L, L, atol=1e-14)
    return up_z_component(x) / math.sqrt(norm)
