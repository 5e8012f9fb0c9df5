"""Fourth-order interference of distorted photon wave packets.

Correlated photon pairs pass multilayer dielectric barriers in the two
arms of a Mach-Zehnder interferometer; the library computes the
normalized coincidence-count fringe R(s) versus the prism translation s
for quantum and classical light, correlated and independent sources,
along with fringe visibility, dip location, and the type-A/B indicator
that decides whether coincidence enhancement (R > 1) is possible.
"""

from .classify import (DegeneratePacketError, TypeVerdict, classify_type,
                       fourier_indicator)
from .interference import (BoundaryExtremumError, DegenerateScenarioError,
                           FringeScan, InternalConsistencyError, ScanGrid,
                           Scenario, UndefinedVisibilityError, dip_position,
                           g0, g1, g1_independent, k0, k1, k1_independent,
                           make_scenario, scan, scenario_frequency_grid,
                           visibility)
from .multilayer import (SPEED_OF_LIGHT, ComplexSpectrum, LayerSpec,
                         StackSpec, TransferCoefficients,
                         build_quarter_wave_stack, load_stack_file,
                         spectrum_to_csv, stack_from_mapping,
                         transfer_coefficients, transfer_matrix,
                         transmission_spectrum)
from .numerics import (ConvergenceError, QuadratureError, QuadratureResult,
                       integrate, refine_until)
from .spectra import (BandShape, DegenerateSpectrumError, EffectivePacket,
                      PumpSpec, band_shape_spectrum, effective_packet,
                      evaluate_band_shape, frequency_window, normalize)

__version__ = "0.1.0"

__all__ = [
    "BandShape", "BoundaryExtremumError", "ComplexSpectrum",
    "ConvergenceError", "DegeneratePacketError", "DegenerateScenarioError",
    "DegenerateSpectrumError", "EffectivePacket", "FringeScan",
    "InternalConsistencyError", "LayerSpec", "PumpSpec", "QuadratureError",
    "QuadratureResult", "SPEED_OF_LIGHT", "ScanGrid", "Scenario",
    "StackSpec", "TransferCoefficients", "TypeVerdict",
    "UndefinedVisibilityError", "band_shape_spectrum",
    "build_quarter_wave_stack", "classify_type", "dip_position",
    "effective_packet", "evaluate_band_shape", "fourier_indicator",
    "frequency_window", "g0", "g1", "g1_independent", "integrate", "k0",
    "k1", "k1_independent", "load_stack_file", "make_scenario", "normalize",
    "refine_until", "scan", "scenario_frequency_grid", "spectrum_to_csv",
    "stack_from_mapping", "transfer_coefficients", "transfer_matrix",
    "transmission_spectrum", "visibility",
]
