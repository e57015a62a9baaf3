"""Stability and convergence certificates for lifted ILC designs.

Everything here operates on plain square matrices: the plant matrix ``P``,
the learning matrix ``L`` and the Q-filter ``Q`` of the update law
``u_{j+1} = Q (u_j + L e_j)``.  The central object is the trial-to-trial
transition operator ``P Q (I - L P) P^{-1}``; its spectral radius decides
asymptotic stability and its induced norms give monotonic convergence
rates.  Applications of ``P^{-1}`` always go through linear solves,
triangular ones when ``P`` is lower-triangular.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal

import numpy as np
import scipy.linalg as sla

from .errors import (
    ConvergenceFailure,
    DimensionError,
    NotAsymptoticallyStable,
    SingularPlant,
    SingularSystem,
)

__all__ = [
    "ConvergenceReport",
    "GammaHatCertificate",
    "ScaledDifferenceBound",
    "transition_matrix",
    "spectral_radius",
    "gamma_2",
    "gamma_inf",
    "residual_error",
    "threshold_epsilon",
    "gamma_hat",
    "gamma_hat_certificate",
    "scaled_difference_bound",
    "analyze",
    "is_regular",
    "matrix_two_norm",
]

COND_LIMIT = 1e12

Norm = Literal["two", "inf"]


def _as_square(M, name: str) -> np.ndarray:
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {M.shape}")
    return M


def _check_shapes(P, L, Q) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    P = _as_square(P, "P")
    L = _as_square(L, "L")
    Q = _as_square(Q, "Q")
    if not (P.shape == L.shape == Q.shape):
        raise DimensionError(
            f"P, L, Q must share one shape, got {P.shape}, {L.shape}, {Q.shape}"
        )
    return P, L, Q


def _is_lower_triangular(P: np.ndarray) -> bool:
    return bool(np.all(np.triu(P, 1) == 0.0))


def is_regular(M, cond_limit: float = COND_LIMIT) -> bool:
    """Whether ``M`` is invertible with condition estimate below ``cond_limit``."""
    M = _as_square(M, "M")
    if not np.all(np.isfinite(M)):
        return False
    c = np.linalg.cond(M)
    return bool(np.isfinite(c) and c <= cond_limit)


def _require_regular_plant(P: np.ndarray) -> None:
    if not np.all(np.isfinite(P)):
        raise SingularPlant("P has non-finite entries")
    c = np.linalg.cond(P)
    if not np.isfinite(c) or c > COND_LIMIT:
        raise SingularPlant(f"condition estimate of P is {c:.3g} (limit {COND_LIMIT:.0e})")


def _solve_p(P: np.ndarray, W: np.ndarray) -> np.ndarray:
    """P^{-1} W via a linear solve (triangular when P allows it)."""
    if _is_lower_triangular(P):
        return sla.solve_triangular(P, W, lower=True)
    return np.linalg.solve(P, W)


def _solve_p_right(W: np.ndarray, P: np.ndarray) -> np.ndarray:
    """W P^{-1} via a linear solve on the transposed system."""
    if _is_lower_triangular(P):
        return sla.solve_triangular(P.T, W.T, lower=False).T
    return np.linalg.solve(P.T, W.T).T


def matrix_two_norm(M) -> float:
    """Largest singular value of ``M``."""
    M = np.asarray(M, dtype=float)
    try:
        return float(np.linalg.norm(M, 2))
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise ConvergenceFailure(f"singular-value computation failed: {exc}") from exc


def _matrix_inf_norm(M: np.ndarray) -> float:
    return float(np.abs(M).sum(axis=1).max())


def _matrix_norm(M: np.ndarray, norm: Norm) -> float:
    if norm == "two":
        return matrix_two_norm(M)
    if norm == "inf":
        return _matrix_inf_norm(M)
    raise ValueError(f"norm must be 'two' or 'inf', got {norm!r}")


def transition_matrix(P, L, Q) -> np.ndarray:
    """The trial-to-trial error transition operator ``P Q (I - L P) P^{-1}``."""
    P, L, Q = _check_shapes(P, L, Q)
    _require_regular_plant(P)
    N = P.shape[0]
    W = P @ Q @ (np.eye(N) - L @ P)
    return _solve_p_right(W, P)


def spectral_radius(M) -> float:
    """Largest eigenvalue magnitude of ``M``."""
    M = _as_square(M, "M")
    if not np.all(np.isfinite(M)):
        raise ValueError("M must have finite entries")
    try:
        eigs = np.linalg.eigvals(M)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"eigenvalue iteration did not converge: {exc}") from exc
    return float(np.max(np.abs(eigs))) if M.size else 0.0


def gamma_2(P, L, Q) -> float:
    """Euclidean monotonic-convergence rate: largest singular value of the
    transition operator."""
    return matrix_two_norm(transition_matrix(P, L, Q))


def gamma_inf(P, L, Q) -> float:
    """Infinity-norm monotonic-convergence rate: max absolute row sum of the
    transition operator."""
    return _matrix_inf_norm(transition_matrix(P, L, Q))


def residual_error(P, L, Q, r, d) -> np.ndarray:
    """Limit of the error trajectory for an asymptotically stable design.

    Evaluates ``[I - P [I - Q(I - L P)]^{-1} Q L](r - d)`` through linear
    solves.  Raises ``NotAsymptoticallyStable`` when the trial iteration has
    spectral radius >= 1, in which case no limit exists.
    """
    P, L, Q = _check_shapes(P, L, Q)
    _require_regular_plant(P)
    N = P.shape[0]
    r = np.asarray(r, dtype=float).reshape(-1)
    d = np.asarray(d, dtype=float).reshape(-1)
    if r.size != N or d.size != N:
        raise DimensionError(f"r and d must have {N} entries, got {r.size} and {d.size}")
    S = Q @ (np.eye(N) - L @ P)
    rho = spectral_radius(S)
    if rho >= 1.0:
        raise NotAsymptoticallyStable(f"spectral radius {rho:.6g} >= 1")
    w = r - d
    try:
        x = np.linalg.solve(np.eye(N) - S, Q @ (L @ w))
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(f"I - Q(I - L P) is numerically singular: {exc}") from exc
    return w - P @ x


def threshold_epsilon(P, Q, r, d, norm: Norm = "inf") -> float:
    """Residual forcing-term size ``||(I - P Q P^{-1})(r - d)||`` in the
    selected vector norm."""
    P = _as_square(P, "P")
    Q = _as_square(Q, "Q")
    if P.shape != Q.shape:
        raise DimensionError(f"P and Q must share one shape, got {P.shape}, {Q.shape}")
    _require_regular_plant(P)
    r = np.asarray(r, dtype=float).reshape(-1)
    d = np.asarray(d, dtype=float).reshape(-1)
    if r.size != P.shape[0] or d.size != P.shape[0]:
        raise DimensionError("r and d must match the plant dimension")
    w = r - d
    v = w - P @ (Q @ _solve_p(P, w))
    if norm == "two":
        return float(np.linalg.norm(v, 2))
    if norm == "inf":
        return float(np.max(np.abs(v))) if v.size else 0.0
    raise ValueError(f"norm must be 'two' or 'inf', got {norm!r}")


def gamma_hat(P, L, Q, a_values: Iterable[float], norm: Norm = "two") -> float:
    """Worst-case convergence rate over partial update scales.

    Returns ``max_a ||P Q (I - a L P) P^{-1}||`` over the supplied scales,
    each in [0, 1].  With ``a_values = [1]`` this reduces to the plain rate.
    """
    P, L, Q = _check_shapes(P, L, Q)
    _require_regular_plant(P)
    a_list = [float(a) for a in a_values]
    if not a_list:
        raise ValueError("a_values must be non-empty")
    if any(a < 0.0 or a > 1.0 for a in a_list):
        raise ValueError("all scales must lie in [0, 1]")
    G0 = _solve_p_right(P @ Q, P)  # P Q P^{-1}
    G1 = P @ Q @ L  # P Q (a L P) P^{-1} = a * P Q L
    return max(_matrix_norm(G0 - a * G1, norm) for a in a_list)


@dataclass
class GammaHatCertificate:
    """A-priori certificate that the worst-case Euclidean rate over every
    scale in (0, 1] stays below one."""

    gamma2: float
    pqp_inv_norm2: float
    sufficient: bool


def gamma_hat_certificate(P, L, Q, slack: float = 1e-9) -> GammaHatCertificate:
    """Certify ``gamma_hat(P, L, Q, a) < 1`` for every scale a in (0, 1].

    Sufficient condition: ``gamma_2 < 1`` and ``||P Q P^{-1}||_2 <= 1`` (the
    latter tested with ``slack`` because well-formed designs sit exactly at
    one).
    """
    P, L, Q = _check_shapes(P, L, Q)
    g2 = gamma_2(P, L, Q)
    pqp = matrix_two_norm(_solve_p_right(P @ Q, P))
    return GammaHatCertificate(
        gamma2=g2,
        pqp_inv_norm2=pqp,
        sufficient=bool(g2 < 1.0 and pqp <= 1.0 + slack),
    )


@dataclass
class ScaledDifferenceBound:
    """Premise/conclusion pair of the norm bound behind the certificate."""

    premise_holds: bool
    conclusion_holds: bool


def scaled_difference_bound(A, B, a: float) -> ScaledDifferenceBound:
    """Evaluate the scaled-difference norm bound on one instance.

    Premise: ``||B - A||_2 < 1`` and ``||B||_2 <= 1``.  Conclusion:
    ``||B - a A||_2 < 1`` for the given ``a`` in (0, 1].  Whenever the
    premise holds the conclusion must hold; this function just measures
    both sides so property suites can drive it.
    """
    A = _as_square(A, "A")
    B = _as_square(B, "B")
    if A.shape != B.shape:
        raise DimensionError(f"A and B must share one shape, got {A.shape}, {B.shape}")
    premise = matrix_two_norm(B - A) < 1.0 and matrix_two_norm(B) <= 1.0
    conclusion = matrix_two_norm(B - float(a) * A) < 1.0
    return ScaledDifferenceBound(premise_holds=bool(premise), conclusion_holds=bool(conclusion))


@dataclass
class ConvergenceReport:
    """Certificates of one (P, L, Q) design.

    ``rho`` is the spectral radius of ``Q (I - L P)``; ``gamma2`` and
    ``gamma_inf`` the induced-norm convergence rates of the transition
    operator; ``pqp_inv_norm2`` is ``||P Q P^{-1}||_2``.  When a reference
    is supplied, ``epsilon_hat`` is the Euclidean residual forcing term and
    ``kappa_hat = epsilon_hat / (1 - gamma_hat_2)`` the threshold above
    which the error norm is guaranteed to decrease.
    """

    rho: float
    gamma2: float
    gamma_inf: float
    pqp_inv_norm2: float
    asymptotically_stable: bool
    monotonic_2: bool
    monotonic_inf: bool
    epsilon_hat: float | None = None
    kappa_hat: float | None = None

    def to_text(self) -> str:
        lines = [
            f"rho = {self.rho!r}",
            f"gamma2 = {self.gamma2!r}",
            f"gamma_inf = {self.gamma_inf!r}",
            f"pqp_inv_norm2 = {self.pqp_inv_norm2!r}",
            f"asymptotically_stable = {str(self.asymptotically_stable).lower()}",
            f"monotonic_2 = {str(self.monotonic_2).lower()}",
            f"monotonic_inf = {str(self.monotonic_inf).lower()}",
        ]
        if self.epsilon_hat is not None:
            lines.append(f"epsilon_hat = {self.epsilon_hat!r}")
        if self.kappa_hat is not None:
            lines.append(f"kappa_hat = {self.kappa_hat!r}")
        return "\n".join(lines)


def analyze(P, L, Q, r=None, d=None, a_values: Iterable[float] = (1.0,)) -> ConvergenceReport:
    """Compute the full convergence report for a design.

    ``r`` (and optionally ``d``, default zero) enable the threshold fields;
    ``a_values`` are the update scales entering the worst-case rate used for
    ``kappa_hat`` (the unadapted law corresponds to ``(1.0,)``).
    """
    P, L, Q = _check_shapes(P, L, Q)
    M = transition_matrix(P, L, Q)
    N = P.shape[0]
    rho = spectral_radius(Q @ (np.eye(N) - L @ P))
    g2 = matrix_two_norm(M)
    ginf = _matrix_inf_norm(M)
    pqp = matrix_two_norm(_solve_p_right(P @ Q, P))
    eps_hat = kappa_hat = None
    if r is not None:
        d = np.zeros(N) if d is None else d
        eps_hat = threshold_epsilon(P, Q, r, d, norm="two")
        gh2 = gamma_hat(P, L, Q, a_values, norm="two")
        kappa_hat = eps_hat / (1.0 - gh2) if gh2 < 1.0 else float("inf")
    return ConvergenceReport(
        rho=rho,
        gamma2=g2,
        gamma_inf=ginf,
        pqp_inv_norm2=pqp,
        asymptotically_stable=bool(rho < 1.0),
        monotonic_2=bool(g2 < 1.0),
        monotonic_inf=bool(ginf < 1.0),
        epsilon_hat=eps_hat,
        kappa_hat=kappa_hat,
    )
