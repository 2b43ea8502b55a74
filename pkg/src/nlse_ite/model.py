"""NLSE Hamiltonian, reference soliton, and scalar observables."""

from dataclasses import dataclass

import numpy as np

from .grid import GridSpec, laplacian, quadrature_weight


class DivergenceError(ArithmeticError):
    """A non-finite value appeared: the run has blown up."""


@dataclass(frozen=True)
class PhysicsParams:
    """g < 0 is focusing (bright-soliton regime), g > 0 defocusing."""

    g: float = -1.0

    def __post_init__(self):
        if not np.isfinite(self.g):
            raise ValueError("interaction strength g must be finite")


@dataclass(frozen=True)
class Wavefunction:
    values: np.ndarray
    grid: GridSpec

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.complex128)
        if values.shape != (self.grid.points,):
            raise ValueError(
                f"wavefunction has shape {values.shape}, grid has {self.grid.points} points"
            )
        object.__setattr__(self, "values", values)

    def is_finite(self) -> bool:
        return bool(np.isfinite(self.values).all())


def apply_hamiltonian(psi: Wavefunction, params: PhysicsParams) -> np.ndarray:
    """H[psi] = -1/2 * psi'' + g |psi|^2 psi, nonlinearity element-wise."""
    if not psi.is_finite():
        raise DivergenceError("non-finite wavefunction passed to the Hamiltonian")
    v = psi.values
    return -0.5 * laplacian(v, psi.grid) + params.g * np.abs(v) ** 2 * v


def norm_squared(psi: Wavefunction) -> float:
    return float(np.sum(np.abs(psi.values) ** 2) * quadrature_weight(psi.grid))


def energy(psi: Wavefunction, params: PhysicsParams) -> float:
    """Integral of 1/2 |psi'|^2 + (g/2) |psi|^4.

    The derivative uses the centered first difference so the diagnostic stays
    independent of the evolution operator's second-difference stencil.
    """
    v = psi.values
    dv = (np.roll(v, -1) - np.roll(v, 1)) / (2.0 * psi.grid.dx)
    density = 0.5 * np.abs(dv) ** 2 + 0.5 * params.g * np.abs(v) ** 4
    return float(np.sum(density) * quadrature_weight(psi.grid))


def l2_error(psi: Wavefunction, reference: Wavefunction) -> float:
    """L2 distance between the unit-norm moduli of the two fields.

    Comparing moduli after rescaling both to unit norm makes the metric
    invariant to global phase and to amplitude drift, so it measures shape
    error only.
    """
    if psi.grid != reference.grid:
        raise ValueError("wavefunction and reference live on different grids")
    ref_norm_sq = norm_squared(reference)
    if ref_norm_sq == 0.0:
        raise ValueError("reference wavefunction has zero norm")
    psi_norm_sq = norm_squared(psi)
    if psi_norm_sq == 0.0:
        raise ValueError("wavefunction has zero norm")
    a = np.abs(psi.values) / np.sqrt(psi_norm_sq)
    b = np.abs(reference.values) / np.sqrt(ref_norm_sq)
    return float(np.sqrt(np.sum((a - b) ** 2) * quadrature_weight(psi.grid)))


def soliton_reference(grid: GridSpec) -> Wavefunction:
    """The bright-soliton profile sech(x) sampled on the grid."""
    return Wavefunction(1.0 / np.cosh(grid.coordinates), grid)


def chemical_potential_estimate(psi: Wavefunction, params: PhysicsParams) -> float:
    """Rayleigh quotient Re<psi, H psi> / ||psi||^2."""
    n_sq = norm_squared(psi)
    if n_sq == 0.0:
        raise ValueError("cannot estimate chemical potential of a zero-norm state")
    h = apply_hamiltonian(psi, params)
    inner = np.sum(np.conj(psi.values) * h) * quadrature_weight(psi.grid)
    return float(inner.real / n_sq)
