"""Relativistic spinning particle in stationary electromagnetic fields.

Phase space with inner degrees of freedom (omega, pi), second-class
constraint pair eliminated by Dirac brackets, trajectory integration,
low-energy expansion, and the Pauli-level operator realization.
"""

from .brackets import (closed_vs_direct_report, defining_property_report,
                       dirac_bracket, dirac_core)
from .dynamics import Trajectory, integrate, project_state
from .fields import FieldBackground, make_background
from .hydrogen import HydrogenModel, fine_structure_table
from .phase import (Model, PhaseState, free_model, init_state,
                    random_constrained_state)

__all__ = [
    "FieldBackground",
    "make_background",
    "Model",
    "PhaseState",
    "free_model",
    "init_state",
    "random_constrained_state",
    "dirac_bracket",
    "dirac_core",
    "defining_property_report",
    "closed_vs_direct_report",
    "Trajectory",
    "integrate",
    "project_state",
    "HydrogenModel",
    "fine_structure_table",
]

__version__ = "0.1.0"
