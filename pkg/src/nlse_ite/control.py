"""The adaptive feedback signal mu(tau) and its coupling to the field.

LITERAL applies the signal as +i*mu*psi. A purely imaginary coupling with
real mu is a gauge rotation: it cannot change the norm, so it is kept as
the faithful variant while GAUGE_REAL and TARGET_NORM apply the signal as
+mu*psi, which genuinely drives d||psi||^2/dtau by 2*mu*||psi||^2.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from .model import DivergenceError, Wavefunction


class FeedbackLaw(enum.Enum):
    OFF = "off"
    LITERAL = "literal"
    GAUGE_REAL = "gauge_real"
    TARGET_NORM = "target_norm"


@dataclass
class FeedbackState:
    """Controller memory for one run.

    prev_norm_sq is None before the first update; the one-sided difference
    is undefined there, so the first mu under the derivative laws is 0.
    """

    alpha: float = 0.5
    target_norm_sq: float = 2.0
    prev_norm_sq: float | None = None
    mu: float = 0.0


def update_mu(
    state: FeedbackState,
    current_norm_sq: float,
    dtau: float,
    law: FeedbackLaw,
) -> FeedbackState:
    """Advance the controller by one outer step; mutates and returns state."""
    if dtau <= 0:
        raise ValueError(f"dtau must be positive, got {dtau}")
    if not math.isfinite(current_norm_sq):
        raise DivergenceError("non-finite norm passed to the feedback controller")

    if law is FeedbackLaw.OFF:
        state.mu = 0.0
    elif law is FeedbackLaw.TARGET_NORM:
        state.mu = state.alpha * (state.target_norm_sq - current_norm_sq)
    else:  # LITERAL / GAUGE_REAL: discrete derivative of the norm history
        if state.prev_norm_sq is None:
            state.mu = 0.0
        else:
            state.mu = state.alpha * (current_norm_sq - state.prev_norm_sq) / dtau
        state.prev_norm_sq = current_norm_sq

    if not math.isfinite(state.mu):
        raise DivergenceError(f"feedback signal mu became non-finite ({state.mu})")
    return state


def feedback_term(psi: Wavefunction, state: FeedbackState, law: FeedbackLaw) -> np.ndarray:
    if law is FeedbackLaw.OFF:
        return np.zeros(psi.grid.points, dtype=np.complex128)
    if law is FeedbackLaw.LITERAL:
        return 1j * state.mu * psi.values
    return state.mu * psi.values
