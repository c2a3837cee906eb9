"""Open-system dynamics of PT-symmetric two-level Hamiltonians.

Generalized density matrices evolve under a Lindblad equation whose Bloch-space
generator is exponentiated in closed form; transition probabilities follow from
traces of evolved and initial density matrices.
"""

from .core_model import NeutrinoHamiltonian, PTHamiltonian, eigenvalues, metric, mixing_angle
from .errors import (
    ConfigError,
    NonRealProbability,
    OutOfDomain,
    PhaseBoundary,
    PTLindbladError,
    StepTooLarge,
    TooManyOperators,
    UnsupportedPhase,
)
from .evolution import build_generator, cayley_hamilton_exp, propagate
from .lindblad import LindbladOperator, case_A_zero, case_B_zero, dissipator_coefficients
from .pauli import DensityMatrix, GammaVector
from .probabilities import FamilyParams, FormulaFamily, closed_form, compare, transition_probability_numeric
from .states import StateLabel, initial_density

__version__ = "0.1.0"
