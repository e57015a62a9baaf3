"""Shared random-instance builders for the test suite."""

import numpy as np
import pytest

from railc.analysis import spectral_radius
from railc.design import DesignMethod, IlcDesign, assemble
from railc.plant import StateSpace, build_lifted


def random_state_space(rng, k_max=4, horizon=60, m_max=2):
    """Random SISO model with bounded spectral radius and true relative
    degree m: the first m-1 Markov parameters are projected out of C."""
    while True:
        k = int(rng.integers(1, k_max + 1))
        A = rng.uniform(-1.0, 1.0, size=(k, k))
        rho = spectral_radius(A)
        if rho > 1e-9:
            A *= rng.uniform(0.3, 1.0) / rho
        B = rng.normal(size=k)
        C = rng.normal(size=k)
        m = int(rng.integers(1, min(m_max, k) + 1))
        if m > 1:
            # kill C A^l B for l < m-1 by projecting C off the Krylov block
            W = np.column_stack([np.linalg.matrix_power(A, ell) @ B for ell in range(m - 1)])
            Qk, _ = np.linalg.qr(W)
            C = C - Qk @ (Qk.T @ C)
        x0 = rng.normal(scale=0.5, size=k)
        d_state = rng.normal(scale=0.2, size=horizon + m)
        v = B.copy()
        for _ in range(m - 1):
            v = A @ v
        if abs(C @ v) > 1e-3:
            return StateSpace(A=A, B=B, C=C, m=m, d_state=d_state, x0=x0)


def random_lower_triangular_plant(rng, N, diag_scale=1.0):
    """Random regular lower-triangular plant matrix with a Toeplitz-free
    structure (exercises the general analysis path)."""
    P = np.tril(rng.normal(scale=0.4, size=(N, N)))
    np.fill_diagonal(P, diag_scale * rng.uniform(0.5, 1.5, size=N) * np.where(rng.random(N) < 0.5, -1, 1))
    return P


def random_stable_design(rng, N, rho_max=0.95):
    """Random (P, design) with trial-iteration spectral radius below ``rho_max``.

    Mixes damped plant-inversion learning with symmetric Q-filters, then
    filters on the measured spectral radius.
    """
    while True:
        P = random_lower_triangular_plant(rng, N)
        c = rng.uniform(0.2, 1.2)
        L = c * np.linalg.inv(P)
        L += rng.normal(scale=0.02, size=(N, N))
        if rng.random() < 0.5:
            Q = np.eye(N)
        else:
            S = rng.normal(scale=0.05, size=(N, N))
            Q = np.eye(N) - 0.5 * (S + S.T)
        rho = spectral_radius(Q @ (np.eye(N) - L @ P))
        if rho < rho_max:
            return P, assemble(P, L, Q, DesignMethod.PD_LEARNING)


def random_lifted_instance(rng, k_max=3, N_max=20):
    """Random (state space, lifted plant, N) pair."""
    N = int(rng.integers(2, N_max + 1))
    ss = random_state_space(rng, k_max=k_max, horizon=N)
    return ss, build_lifted(ss, N), N


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
