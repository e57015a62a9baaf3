"""Discrete-time SISO plants and their lifted per-trial matrix form.

A trial is ``N`` samples of the recursion

    x(n+1) = A x(n) + B u(n) + d(n)
    y(n)   = C x(n)

with a disturbance sequence ``d`` that repeats identically on every trial.
Stacking one trial's samples turns the recursion into a single matrix
equation ``y = P u + d_lifted`` where ``P`` is lower-triangular Toeplitz in
the Markov parameters and the output window is shifted by the relative
degree ``m``: the lifted input is ``u(0..N-1)`` and the lifted output is
``y(m..m+N-1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import toeplitz

from .errors import DimensionError, RelativeDegreeMismatch

__all__ = ["StateSpace", "LiftedPlant", "build_lifted", "simulate_trial"]


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(eq=False)
class StateSpace:
    """Discrete-time LTI SISO model with a trial-invariant disturbance.

    Parameters
    ----------
    A, B, C : array_like
        State transition (k x k), input map (k x 1 or flat), output map
        (1 x k or flat).
    m : int
        Relative degree: the input-to-output delay in samples.  The first
        Markov parameter ``C A^(m-1) B`` must be nonzero.
    d_state : array_like, optional
        Scalar disturbance sequence added to every state component at each
        update.  Defaults to zero.  Entries beyond its length are treated
        as zero.
    x0 : array_like, optional
        Initial state, identical on every trial.  Defaults to zero.
    """

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    m: int = 1
    d_state: np.ndarray | None = None
    x0: np.ndarray | None = None

    def __post_init__(self):
        A = np.asarray(self.A, dtype=float)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise DimensionError(f"A must be square, got shape {A.shape}")
        k = A.shape[0]
        B = np.asarray(self.B, dtype=float).reshape(-1)
        C = np.asarray(self.C, dtype=float).reshape(-1)
        if B.size != k:
            raise DimensionError(f"B must have {k} entries, got {B.size}")
        if C.size != k:
            raise DimensionError(f"C must have {k} entries, got {C.size}")
        if int(self.m) < 1:
            raise RelativeDegreeMismatch(f"relative degree must be >= 1, got {self.m}")
        self.m = int(self.m)
        x0 = np.zeros(k) if self.x0 is None else np.asarray(self.x0, dtype=float).reshape(-1)
        if x0.size != k:
            raise DimensionError(f"x0 must have {k} entries, got {x0.size}")
        d = np.zeros(0) if self.d_state is None else np.asarray(self.d_state, dtype=float).reshape(-1)
        self.A, self.B, self.C = _freeze(A), _freeze(B), _freeze(C)
        self.x0, self.d_state = _freeze(x0), _freeze(d)
        _validate_relative_degree(self)

    @property
    def order(self) -> int:
        return self.A.shape[0]

    def first_markov_parameter(self) -> float:
        """C A^(m-1) B, the diagonal entry of the lifted plant matrix."""
        v = self.B
        for _ in range(self.m - 1):
            v = self.A @ v
        return float(self.C @ v)


def _validate_relative_degree(ss: StateSpace) -> None:
    """Check that m really is the index of the first nonzero Markov parameter.

    Markov parameters before the m-th must vanish, or inputs would reach the
    output earlier than the lifted form can represent; the m-th must be
    nonzero, or the lifted plant matrix would be singular.
    """
    scale = max(
        1.0,
        float(np.linalg.norm(ss.C) * np.linalg.norm(ss.B))
        * max(1.0, float(np.linalg.norm(ss.A, 2))) ** (ss.m - 1),
    )
    v = ss.B
    for ell in range(ss.m - 1):
        if abs(float(ss.C @ v)) > 1e-8 * scale:
            raise RelativeDegreeMismatch(
                f"C A^{ell} B = {float(ss.C @ v):.3g} is nonzero, so the relative "
                f"degree is {ell + 1}, not the declared m = {ss.m}"
            )
        v = ss.A @ v
    h0 = float(ss.C @ v)
    if abs(h0) <= 1e-12 * scale:
        raise RelativeDegreeMismatch(
            f"C A^(m-1) B = {h0:.3g} vanishes for m = {ss.m}; "
            "the lifted plant matrix would be singular"
        )


@dataclass(eq=False)
class LiftedPlant:
    """One trial of a plant as a matrix equation ``y = P u + d``."""

    P: np.ndarray
    d: np.ndarray
    N: int
    m: int = 1

    def __post_init__(self):
        P = np.asarray(self.P, dtype=float)
        d = np.asarray(self.d, dtype=float).reshape(-1)
        if P.ndim != 2 or P.shape[0] != P.shape[1]:
            raise DimensionError(f"P must be square, got shape {P.shape}")
        if P.shape[0] != int(self.N):
            raise DimensionError(f"P is {P.shape[0]}x{P.shape[0]} but N = {self.N}")
        if d.size != int(self.N):
            raise DimensionError(f"d must have {self.N} entries, got {d.size}")
        if not (np.all(np.isfinite(P)) and np.all(np.isfinite(d))):
            raise DimensionError("P and d must be finite")
        self.N = int(self.N)
        self.m = int(self.m)
        self.P, self.d = _freeze(P), _freeze(d)

    def respond(self, u: np.ndarray) -> np.ndarray:
        """Output trajectory for the input trajectory ``u``."""
        u = np.asarray(u, dtype=float).reshape(-1)
        if u.size != self.N:
            raise DimensionError(f"u must have {self.N} entries, got {u.size}")
        return self.P @ u + self.d


def _padded(seq: np.ndarray, length: int) -> np.ndarray:
    out = np.zeros(length)
    n = min(seq.size, length)
    out[:n] = seq[:n]
    return out


def simulate_trial(ss: StateSpace, u: np.ndarray, N: int | None = None) -> np.ndarray:
    """Step one trial of the recursion and return the m-shifted output window.

    Returns ``y(m), ..., y(m+N-1)``.  Inputs and disturbance samples beyond
    the supplied sequences are zero; for relative degree ``m`` those samples
    cannot reach the returned window anyway.
    """
    u = np.asarray(u, dtype=float).reshape(-1)
    if N is None:
        N = u.size
    if u.size != N:
        raise DimensionError(f"u must have {N} entries, got {u.size}")
    if N < 1:
        raise DimensionError(f"N must be >= 1, got {N}")
    horizon = N + ss.m  # outputs y(0..m+N-1), i.e. m+N-1 state updates
    uu = _padded(u, horizon - 1)
    dd = _padded(ss.d_state, horizon - 1)
    x = ss.x0.copy()
    ys = np.empty(horizon)
    for n in range(horizon):
        ys[n] = float(ss.C @ x)
        if n < horizon - 1:
            x = ss.A @ x + ss.B * uu[n] + dd[n]
    return ys[ss.m:]


def build_lifted(ss: StateSpace, N: int) -> LiftedPlant:
    """Construct the lifted plant matrix ``P`` and lifted disturbance ``d``.

    ``P[i, j] = C A^(i-j+m-1) B`` for ``i >= j`` and zero above the diagonal;
    ``d`` is the zero-input response over the shifted output window, so that
    ``simulate_trial(ss, u) == P @ u + d`` for any input.
    """
    if N < 1:
        raise DimensionError(f"N must be >= 1, got {N}")
    if ss.d_state.size and ss.d_state.size < N:
        raise DimensionError(
            f"d_state has {ss.d_state.size} entries but the trial needs at least {N}"
        )
    _validate_relative_degree(ss)
    # First column C A^(m-1+i) B, i = 0..N-1; each entry reuses the previous power.
    col = np.empty(N)
    v = ss.B
    for _ in range(ss.m - 1):
        v = ss.A @ v
    for i in range(N):
        col[i] = float(ss.C @ v)
        v = ss.A @ v
    P = toeplitz(col, np.zeros(N))
    d = simulate_trial(ss, np.zeros(N), N)
    return LiftedPlant(P=P, d=d, N=N, m=ss.m)
