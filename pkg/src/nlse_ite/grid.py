"""Uniform periodic 1D grid, the finite-difference Laplacian, and quadrature."""

from dataclasses import dataclass
from functools import cached_property

import numpy as np


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid on [-L/2, L/2) with periodic wraparound.

    Point j sits at x_j = -L/2 + j*dx with dx = L/N, so x = 0 lies on a
    grid point whenever N is even.
    """

    length: float
    points: int

    def __post_init__(self):
        if not (self.length > 0 and np.isfinite(self.length)):
            raise ValueError(f"grid length must be positive and finite, got {self.length}")
        if self.points < 4:
            raise ValueError(f"grid needs at least 4 points, got {self.points}")

    @property
    def dx(self) -> float:
        return self.length / self.points

    @cached_property
    def coordinates(self) -> np.ndarray:
        x = -0.5 * self.length + self.dx * np.arange(self.points)
        x.flags.writeable = False
        return x


def laplacian(psi: np.ndarray, grid: GridSpec) -> np.ndarray:
    """Second-order central difference with periodic wraparound."""
    psi = np.asarray(psi)
    if psi.shape != (grid.points,):
        raise ValueError(
            f"field has shape {psi.shape}, grid has {grid.points} points"
        )
    return (np.roll(psi, -1) - 2.0 * psi + np.roll(psi, 1)) / grid.dx**2


def quadrature_weight(grid: GridSpec) -> float:
    """Weight of each sample in the periodic trapezoidal rule (= dx).

    On a uniform periodic grid the trapezoidal half-weights at the two ends
    coincide, so the rule reduces to the plain sum times dx.
    """
    return grid.dx
