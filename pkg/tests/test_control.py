import numpy as np
import pytest

from nlse_ite import (
    DivergenceError,
    FeedbackLaw,
    FeedbackState,
    GridSpec,
    Wavefunction,
    feedback_term,
    norm_squared,
    update_mu,
)

GRID = GridSpec(length=8.0, points=16)


def test_update_mu_no_norm_change():
    state = FeedbackState(alpha=0.7, prev_norm_sq=1.0)
    update_mu(state, 1.0, 0.01, FeedbackLaw.LITERAL)
    assert state.mu == 0.0


def test_update_mu_derivative_arithmetic():
    # alpha * (0.98 - 1.0) / 0.01 = -1.0
    state = FeedbackState(alpha=0.5, prev_norm_sq=1.0)
    update_mu(state, 0.98, 0.01, FeedbackLaw.LITERAL)
    assert state.mu == pytest.approx(-1.0)
    assert state.prev_norm_sq == 0.98


def test_update_mu_first_step_is_zero():
    for law in (FeedbackLaw.OFF, FeedbackLaw.LITERAL, FeedbackLaw.GAUGE_REAL):
        state = FeedbackState(alpha=0.9)
        update_mu(state, 1.3, 0.01, law)
        assert state.mu == 0.0


def test_update_mu_target_at_target():
    state = FeedbackState(alpha=0.5, target_norm_sq=2.0)
    update_mu(state, 2.0, 0.01, FeedbackLaw.TARGET_NORM)
    assert state.mu == 0.0
    update_mu(state, 1.5, 0.01, FeedbackLaw.TARGET_NORM)
    assert state.mu == pytest.approx(0.25)


def test_update_mu_off_forces_zero():
    state = FeedbackState(alpha=1.0, prev_norm_sq=5.0)
    state.mu = 3.0
    update_mu(state, 1.0, 0.01, FeedbackLaw.OFF)
    assert state.mu == 0.0


def test_update_mu_rejects_bad_inputs():
    with pytest.raises(ValueError):
        update_mu(FeedbackState(), 1.0, 0.0, FeedbackLaw.LITERAL)
    with pytest.raises(DivergenceError):
        update_mu(FeedbackState(), float("nan"), 0.01, FeedbackLaw.LITERAL)


def test_update_mu_replay_is_deterministic():
    norms = [1.0, 0.97, 0.95, 0.96, 0.955]

    def replay():
        state = FeedbackState(alpha=0.3)
        return [update_mu(state, n, 1e-3, FeedbackLaw.LITERAL).mu for n in norms]

    assert replay() == replay()


def test_feedback_term_off():
    psi = Wavefunction(np.ones(16), GRID)
    state = FeedbackState()
    state.mu = 4.0
    assert np.all(feedback_term(psi, state, FeedbackLaw.OFF) == 0)


def test_feedback_term_literal():
    psi = Wavefunction(np.ones(16), GRID)
    state = FeedbackState()
    state.mu = 2.0
    out = feedback_term(psi, state, FeedbackLaw.LITERAL)
    assert np.allclose(out, 2j)


def test_feedback_term_gauge_real():
    psi = Wavefunction(np.full(16, 3.0), GRID)
    state = FeedbackState()
    state.mu = -1.0
    out = feedback_term(psi, state, FeedbackLaw.GAUGE_REAL)
    assert np.allclose(out, -3.0)


def test_literal_term_is_norm_neutral():
    # Re<psi, i mu psi> = 0: the literal coupling cannot move the norm.
    rng = np.random.default_rng(21)
    psi = Wavefunction(rng.normal(size=16) + 1j * rng.normal(size=16), GRID)
    state = FeedbackState()
    state.mu = 1.7
    term = feedback_term(psi, state, FeedbackLaw.LITERAL)
    inner = np.sum(np.conj(psi.values) * term) * GRID.dx
    assert abs(inner.real) <= 1e-12 * abs(inner)


def test_real_term_drives_norm():
    rng = np.random.default_rng(22)
    psi = Wavefunction(rng.normal(size=16) + 1j * rng.normal(size=16), GRID)
    state = FeedbackState()
    state.mu = -0.8
    term = feedback_term(psi, state, FeedbackLaw.GAUGE_REAL)
    inner = np.sum(np.conj(psi.values) * term) * GRID.dx
    assert inner.real == pytest.approx(state.mu * norm_squared(psi), rel=1e-12)
