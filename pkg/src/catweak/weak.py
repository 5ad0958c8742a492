"""Weak value of sigma_x and the weak-coupling pointer approximations.

The system is pre-selected in a1|up_z> + a2|down_z>, post-selected in
|up_z>, and sigma_x is measured weakly. The post-selected meter state is
the cat state with branch amplitudes a ~ a1 + a2, b ~ a1 - a2.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DivergentWeakValueError, RegimeError
from .state import UNIT_TOL, CatState, as_complex

WEAK_I = 0.99
STRONG_I = 0.01
# Both neglected terms are bounded at x = 4 eta: the boost p0 x |w| / hbar and the
# branch displacement x0 x |w| / (2 eta^2). Past ~0.6 the density error exceeds 0.01.
EXPANSION_LIMIT = 0.5
EXPANSION_REACH = 4.0
MIN_A1 = 1e-12


class Regime(enum.Enum):
    WEAK = "weak"
    INTERMEDIATE = "intermediate"
    STRONG = "strong"


def regime(inner_product: float) -> Regime:
    if inner_product >= WEAK_I:
        return Regime.WEAK
    if inner_product <= STRONG_I:
        return Regime.STRONG
    return Regime.INTERMEDIATE


@dataclass(frozen=True)
class SpinSelection:
    """Pre-selection a1|up_z> + a2|down_z>; observable sigma_x; post-selection <up_z|."""

    a1: complex
    a2: complex

    def __post_init__(self):
        object.__setattr__(self, "a1", as_complex(self.a1, "a1"))
        object.__setattr__(self, "a2", as_complex(self.a2, "a2"))
        weight = abs(self.a1) ** 2 + abs(self.a2) ** 2
        if abs(weight - 1.0) > UNIT_TOL:
            raise ValueError(f"|a1|^2 + |a2|^2 = {weight!r}, expected 1")

    @classmethod
    def from_phi(cls, phi: float) -> "SpinSelection":
        """Selection whose branch amplitudes are e^{+-i phi}/sqrt2."""
        return cls(math.cos(phi), 1j * math.sin(phi))


@dataclass(frozen=True)
class WeakValue:
    value: complex
    regime: Regime


def weak_value(sel: SpinSelection) -> complex:
    """<up_z| sigma_x |chi> / <up_z|chi> = a2 / a1."""
    if abs(sel.a1) <= MIN_A1:
        raise DivergentWeakValueError(
            f"|a1| = {abs(sel.a1):.3e}: post-selection is orthogonal to the pre-selection"
        )
    return sel.a2 / sel.a1


def classify(sel: SpinSelection, state: CatState) -> WeakValue:
    return WeakValue(weak_value(sel), regime(state.inner_product))


def branch_amplitudes(sel: SpinSelection) -> tuple[complex, complex]:
    r = math.sqrt(0.5)
    return (sel.a1 + sel.a2) * r, (sel.a1 - sel.a2) * r


def selection_from_branches(a: complex, b: complex) -> SpinSelection:
    """Inverse of ``branch_amplitudes``."""
    r = math.sqrt(0.5)
    return SpinSelection((a + b) * r, (a - b) * r)


def _require_weak(state: CatState, sel: SpinSelection) -> complex:
    a, b = branch_amplitudes(sel)
    if abs(a - state.a) > 1e-9 or abs(b - state.b) > 1e-9:
        raise ValueError("state amplitudes do not match branch_amplitudes(sel)")
    w = weak_value(sel)
    if regime(state.inner_product) is not Regime.WEAK:
        raise RegimeError(
            f"I = {state.inner_product:.3g} < {WEAK_I}: meter branches are "
            "distinguishable, no weak-value pointer"
        )
    x = EXPANSION_REACH * state.eta
    boost = state.p0 * x * abs(w) / state.hbar
    shift = state.x0 * x * abs(w) / (2.0 * state.eta**2)
    if max(boost, shift) > EXPANSION_LIMIT:
        raise RegimeError(
            f"first-order expansion fails at x = {EXPANSION_REACH:g} eta: "
            f"|p0 x w|/hbar = {boost:.3g}, |x0 x w|/(2 eta^2) = {shift:.3g} (limit {EXPANSION_LIMIT})"
        )
    return w


def weak_pointer_approx(state: CatState, sel: SpinSelection) -> Callable[[np.ndarray], np.ndarray]:
    """Unnormalised weak-regime meter wavefunction exp(-x^2/(4 eta^2) + i p0 x w / hbar)."""
    w = _require_weak(state, sel)
    eta, p0, hbar = state.eta, state.p0, state.hbar

    def psi(x):
        x = np.asarray(x, dtype=float)
        return np.exp(-(x**2) / (4.0 * eta**2) + 1j * p0 * x * w / hbar)

    return psi


def position_peak_prediction(state: CatState, sel: SpinSelection) -> float:
    """Maximiser of |weak_pointer_approx|^2, i.e. -2 p0 eta^2 Im(w) / hbar."""
    w = _require_weak(state, sel)
    return -2.0 * state.p0 * state.eta**2 * w.imag / state.hbar


def momentum_peak_prediction(state: CatState, sel: SpinSelection) -> float:
    """Centre p0 Re(w) of the momentum pointer; only defined for a real weak value."""
    w = _require_weak(state, sel)
    if abs(w.imag) > 1e-9:
        raise RegimeError(f"weak value {w!r} is not real; the momentum pointer is not a shifted Gaussian")
    return state.p0 * w.real
