"""RK4 time stepping, the projection baseline, and run orchestration."""

import enum
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .control import FeedbackLaw, FeedbackState, feedback_term, update_mu
from .grid import GridSpec
from .model import (
    DivergenceError,
    PhysicsParams,
    Wavefunction,
    apply_hamiltonian,
    energy,
    l2_error,
    norm_squared,
    soliton_reference,
)


class Termination(enum.Enum):
    CONVERGED = "converged"
    MAX_STEPS = "max_steps"
    DIVERGED = "diverged"


@dataclass(frozen=True)
class InitialCondition:
    """sech, sech/sqrt(2) (unit norm-squared), or an unnormalized Gaussian."""

    kind: str  # "sech" | "sech_normalized" | "gaussian"
    width: float = 1.0

    def __post_init__(self):
        if self.kind not in ("sech", "sech_normalized", "gaussian"):
            raise ValueError(f"unknown initial condition {self.kind!r}")
        if self.kind == "gaussian" and self.width <= 0:
            raise ValueError("gaussian width must be positive")

    @classmethod
    def parse(cls, text: str) -> "InitialCondition":
        if text.startswith("gaussian:"):
            return cls("gaussian", float(text.split(":", 1)[1]))
        if text == "gaussian":
            raise ValueError("gaussian initial condition needs a width, e.g. gaussian:2")
        return cls(text)

    def build(self, grid: GridSpec) -> Wavefunction:
        x = grid.coordinates
        if self.kind == "sech":
            values = 1.0 / np.cosh(x)
        elif self.kind == "sech_normalized":
            values = 1.0 / (np.sqrt(2.0) * np.cosh(x))
        else:
            values = np.exp(-(x**2) / (2.0 * self.width**2))
        return Wavefunction(values, grid)


@dataclass(frozen=True)
class SolverConfig:
    physics: PhysicsParams = PhysicsParams()
    grid: GridSpec = GridSpec(length=40.0, points=512)
    dtau: float = 1e-3
    max_steps: int = 20000
    law: FeedbackLaw = FeedbackLaw.TARGET_NORM
    alpha: float = 0.5
    target_norm_sq: float = 2.0
    initial: InitialCondition = InitialCondition("sech")
    renormalize_every_step: bool = False
    record_every: int = 10
    convergence_tol: float = 1e-10
    # Pin mu to a constant and bypass the controller (gauge-property checks).
    pinned_mu: float | None = None

    def __post_init__(self):
        if self.dtau <= 0:
            raise ValueError("dtau must be positive")
        if self.max_steps <= 0:
            raise ValueError("max_steps must be positive")
        if self.record_every <= 0:
            raise ValueError("record_every must be positive")
        if self.convergence_tol <= 0:
            raise ValueError("convergence_tol must be positive")
        if self.alpha < 0:
            raise ValueError("alpha must be nonnegative")
        if self.target_norm_sq <= 0:
            raise ValueError("target_norm_sq must be positive")
        if self.renormalize_every_step and self.law is not FeedbackLaw.OFF:
            raise ValueError(
                "renormalize_every_step requires law=off: projection and feedback are exclusive"
            )


@dataclass(frozen=True)
class TimeSeriesRecord:
    tau: float
    norm_sq: float
    mu: float
    l2_error: float
    energy: float


@dataclass
class RunResult:
    final_psi: Wavefunction
    series: list[TimeSeriesRecord]
    termination: Termination
    steps_taken: int
    diverged_at: int | None = None


def rhs(
    psi: Wavefunction,
    params: PhysicsParams,
    feedback: FeedbackState,
    law: FeedbackLaw,
) -> np.ndarray:
    """f(psi) = -H[psi] + feedback coupling, with mu frozen by the caller."""
    out = -apply_hamiltonian(psi, params)
    if law is not FeedbackLaw.OFF:
        out = out + feedback_term(psi, feedback, law)
    return out


def rk4_update(y, dtau: float, f: Callable):
    """One classical RK4 step for any state supporting +/* arithmetic."""
    k1 = f(y)
    k2 = f(y + 0.5 * dtau * k1)
    k3 = f(y + 0.5 * dtau * k2)
    k4 = f(y + dtau * k3)
    return y + (dtau / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def rk4_step(
    psi: Wavefunction,
    dtau: float,
    f: Callable[[Wavefunction], np.ndarray],
) -> Wavefunction:
    """RK4 step of the field; every stage is scanned for blow-up."""
    if dtau <= 0:
        raise ValueError("dtau must be positive")
    grid = psi.grid

    def f_values(values: np.ndarray) -> np.ndarray:
        k = f(Wavefunction(values, grid))
        if not np.isfinite(k).all():
            raise DivergenceError("non-finite RK4 stage value")
        return k

    return Wavefunction(rk4_update(psi.values, dtau, f_values), grid)


def renormalize(psi: Wavefunction, target_norm_sq: float) -> Wavefunction:
    if target_norm_sq <= 0:
        raise ValueError("target_norm_sq must be positive")
    n_sq = norm_squared(psi)
    if n_sq == 0.0:
        raise ValueError("cannot renormalize a zero-norm wavefunction")
    return Wavefunction(psi.values * np.sqrt(target_norm_sq / n_sq), psi.grid)


def run(config: SolverConfig) -> RunResult:
    """Evolve per config; mu is updated once per step and frozen across stages."""
    params = config.physics
    psi = config.initial.build(config.grid)
    if config.renormalize_every_step:
        # Project the initial data too, so the whole trajectory (energy
        # monotonicity included) lives on the constraint surface.
        psi = renormalize(psi, config.target_norm_sq)

    state = FeedbackState(alpha=config.alpha, target_norm_sq=config.target_norm_sq)
    if config.pinned_mu is not None:
        state.mu = config.pinned_mu
    reference = soliton_reference(config.grid)

    def observe(tau: float) -> TimeSeriesRecord:
        record = TimeSeriesRecord(
            tau=tau,
            norm_sq=norm_squared(psi),
            mu=state.mu,
            l2_error=l2_error(psi, reference),
            energy=energy(psi, params),
        )
        # |psi|^4 can overflow while psi itself is still finite
        if not all(map(np.isfinite, (record.norm_sq, record.mu, record.l2_error, record.energy))):
            raise DivergenceError("non-finite observable at recording time")
        return record

    series = [observe(0.0)]
    prev_recorded_l2 = series[0].l2_error
    termination = Termination.MAX_STEPS
    steps_taken = 0
    diverged_at = None

    # Blow-up is detected and reported explicitly; keep numpy quiet about it.
    with np.errstate(over="ignore", invalid="ignore"):
        for n in range(config.max_steps):
            try:
                current_norm_sq = norm_squared(psi)
                if config.pinned_mu is None:
                    update_mu(state, current_norm_sq, config.dtau, config.law)
                psi = rk4_step(
                    psi,
                    config.dtau,
                    lambda w: rhs(w, params, state, config.law),
                )
                if config.renormalize_every_step:
                    psi = renormalize(psi, config.target_norm_sq)
                steps_taken = n + 1
                if steps_taken % config.record_every == 0:
                    record = observe(steps_taken * config.dtau)
                    series.append(record)
                    if abs(record.l2_error - prev_recorded_l2) < config.convergence_tol:
                        termination = Termination.CONVERGED
                        break
                    prev_recorded_l2 = record.l2_error
            except DivergenceError:
                termination = Termination.DIVERGED
                diverged_at = n
                break

    return RunResult(
        final_psi=psi,
        series=series,
        termination=termination,
        steps_taken=steps_taken,
        diverged_at=diverged_at,
    )
