"""Gaussian cat states: displacement-overlap zeros, Wigner negativity, and
weak-value pointer shifts from a Stern-Gerlach weak measurement."""

from .errors import (
    CatWeakError,
    ConfigError,
    DegenerateStateError,
    DivergentWeakValueError,
    GridResolutionWarning,
    InverseMapError,
    QuadratureError,
    RegimeError,
)
from .sensitivity import OverlapProfile, find_zeros, overlap, overlap_amplitude, sensitivity_report
from .state import CatState, inner_product_I, momentum_density, position_density, wavefunction
from .stern_gerlach import SGConfig, post_select, reduced_density_matrix, sg_inner_product
from .weak import SpinSelection, branch_amplitudes, position_peak_prediction, weak_value
from .wigner import PhaseSpaceGrid, WignerField, marginals, wigner_closed, wigner_field

__version__ = "0.1.0"
