"""Imaginary-time NLSE solver with feedback-based norm stabilization."""

from .control import FeedbackLaw, FeedbackState, feedback_term, update_mu
from .evolve import (
    InitialCondition,
    RunResult,
    SolverConfig,
    Termination,
    TimeSeriesRecord,
    renormalize,
    rhs,
    rk4_step,
    rk4_update,
    run,
)
from .grid import GridSpec, laplacian, quadrature_weight
from .model import (
    DivergenceError,
    PhysicsParams,
    Wavefunction,
    apply_hamiltonian,
    chemical_potential_estimate,
    energy,
    l2_error,
    norm_squared,
    soliton_reference,
)

__all__ = [
    "DivergenceError",
    "FeedbackLaw",
    "FeedbackState",
    "GridSpec",
    "InitialCondition",
    "PhysicsParams",
    "RunResult",
    "SolverConfig",
    "Termination",
    "TimeSeriesRecord",
    "Wavefunction",
    "apply_hamiltonian",
    "chemical_potential_estimate",
    "energy",
    "feedback_term",
    "l2_error",
    "laplacian",
    "norm_squared",
    "quadrature_weight",
    "renormalize",
    "rhs",
    "rk4_step",
    "rk4_update",
    "run",
    "soliton_reference",
    "update_mu",
]
