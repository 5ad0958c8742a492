"""Displacement overlap |<Psi'|Psi>|^2 with Psi' = e^{i x delta} Psi, and its zeros.

The amplitude <Psi'|Psi> is (up to complex conjugation, which the modulus
ignores) the characteristic function of the position density. For the
two-branch state it evaluates to

    N^2 e^{-eta^2 delta^2 / 2} [ |a|^2 e^{i x0 delta} + |b|^2 e^{-i x0 delta}
                                 + I (a* b e^{z} + a b* e^{-z}) ],
    z = 2 p0 eta^2 delta / hbar.

Zeros of the overlap are touch-downs of a non-negative function, so they
are located as local minima that fall below a threshold, not as sign changes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .quadrature import integrate
from .state import CatState, norm_quadrature, raw_superposition

ZERO_THRESHOLD = 1e-10
GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def overlap_amplitude(state: CatState, delta):
    delta = np.asarray(delta, dtype=float)
    eta = state.eta
    a, b, I = state.a, state.b, state.inner_product
    z = 2.0 * state.p0 * eta**2 * delta / state.hbar
    phase = state.x0 * delta
    bracket = (
        abs(a) ** 2 * np.exp(1j * phase)
        + abs(b) ** 2 * np.exp(-1j * phase)
        + I * (a.conjugate() * b * np.exp(z) + a * b.conjugate() * np.exp(-z))
    )
    amp = state.normalization**2 * np.exp(-0.5 * eta**2 * delta**2) * bracket
    return amp if amp.ndim else complex(amp)


def overlap(state: CatState, delta):
    """|<Psi'|Psi>|^2 from the closed-form amplitude."""
    return np.abs(overlap_amplitude(state, delta)) ** 2


def overlap_quadrature(state: CatState, delta: float, atol: float = 1e-12) -> float:
    """Independent oracle: |int |Psi|^2 e^{i x delta} dx|^2 by adaptive quadrature."""
    L = state.span
    norm = norm_quadrature(state)
    amp = integrate(
        lambda x: np.abs(raw_superposition(state, x)) ** 2 * np.exp(1j * x * delta),
        -L,
        L,
        atol=atol,
    )
    return abs(amp / norm) ** 2


def golden_section_min(f, lo: float, hi: float, xtol: float = 1e-13, max_iter: int = 200):
    """Minimise a unimodal ``f`` on ``[lo, hi]``; returns ``(x, f(x))``."""
    x1 = hi - GOLDEN * (hi - lo)
    x2 = lo + GOLDEN * (hi - lo)
    f1, f2 = f(x1), f(x2)
    for _ in range(max_iter):
        if hi - lo <= xtol:
            break
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - GOLDEN * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + GOLDEN * (hi - lo)
            f2 = f(x2)
    x = x1 if f1 <= f2 else x2
    return x, min(f1, f2)


@dataclass(frozen=True)
class OverlapProfile:
    deltas: np.ndarray
    values: np.ndarray
    zeros: np.ndarray
    first_zero: Optional[float]
    min_spacing: Optional[float]


def default_delta_max(state: CatState) -> float:
    # past 5/eta the envelope e^{-eta^2 delta^2} is already below ZERO_THRESHOLD
    return 5.0 / state.eta


def find_zeros(
    state: CatState,
    delta_range: Optional[tuple[float, float]] = None,
    scan_points: int = 2000,
    threshold: float = ZERO_THRESHOLD,
) -> OverlapProfile:
    """Scan the overlap on a uniform grid and refine every dip below ``threshold``.

    An empty ``zeros`` array is a valid result: it is what the I ~ 1 regime
    looks like.
    """
    lo, hi = delta_range if delta_range is not None else (0.0, default_delta_max(state))
    if lo < 0 or hi <= lo:
        raise ValueError(f"delta_range must satisfy 0 <= min < max, got {(lo, hi)}")
    if scan_points < 100:
        raise ValueError("scan_points must be at least 100")
    # keep >= 20 samples per half-period pi/x0 of the fastest fringe
    n = max(scan_points, int(math.ceil((hi - lo) * state.x0 * 20.0 / math.pi)) + 1)
    deltas = np.linspace(lo, hi, n)
    modulus = np.abs(overlap_amplitude(state, deltas))

    def objective(d):
        return abs(overlap_amplitude(state, d))

    zeros = []
    interior = np.flatnonzero(
        (modulus[1:-1] < modulus[:-2]) & (modulus[1:-1] <= modulus[2:])
    ) + 1
    for i in interior:
        d, m = golden_section_min(objective, deltas[i - 1], deltas[i + 1])
        if m * m <= threshold:
            zeros.append(d)
    zeros = np.array(sorted(zeros))
    first = float(zeros[0]) if zeros.size else None
    spacing = float(np.min(np.diff(zeros))) if zeros.size >= 2 else None
    return OverlapProfile(deltas, modulus**2, zeros, first, spacing)


@dataclass(frozen=True)
class SensitivityReport:
    inner_product: float
    first_zero: Optional[float]
    fourier_scale: float
    sub_fourier: bool


def sensitivity_report(state: CatState, delta_range=None) -> SensitivityReport:
    """Is there a displacement below the single-packet scale 1/eta that orthogonalises the state?"""
    profile = find_zeros(state, delta_range)
    scale = 1.0 / state.eta
    first = profile.first_zero
    return SensitivityReport(
        inner_product=state.inner_product,
        first_zero=first,
        fourier_scale=scale,
        sub_fourier=first is not None and first < scale,
    )
