"""Reflection-spectroscopy simulator for pumped Kerr parametric oscillators."""

__version__ = "0.1.0"

from .model import CircuitParams, ModelParams, build_h0, circuit_derived, circuit_to_model
from .eigensystem import (
    EigenSystem,
    diagonalize,
    eigensystem_sweep,
    energy_diagram,
    transition_frequencies,
)
from .lindblad import (
    DensityMatrix,
    LindbladGenerator,
    build_generator,
    evolve,
    populations_in_eigenbasis,
    steady_state,
)
from .spectroscopy import (
    HarmonicState,
    SpectrumTrace,
    TransitionDescriptor,
    eta,
    finite_drive_gamma,
    nominal_rates,
    solve_harmonic_state,
    weak_field_gamma,
)
from .wigner import WignerGrid, wigner

__all__ = [
    "__version__",
    "CircuitParams",
    "ModelParams",
    "build_h0",
    "circuit_derived",
    "circuit_to_model",
    "EigenSystem",
    "diagonalize",
    "eigensystem_sweep",
    "energy_diagram",
    "transition_frequencies",
    "DensityMatrix",
    "LindbladGenerator",
    "build_generator",
    "evolve",
    "populations_in_eigenbasis",
    "steady_state",
    "HarmonicState",
    "SpectrumTrace",
    "TransitionDescriptor",
    "eta",
    "finite_drive_gamma",
    "nominal_rates",
    "solve_harmonic_state",
    "weak_field_gamma",
    "WignerGrid",
    "wigner",
]
