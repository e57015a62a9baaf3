"""Synthesis of the learning matrix L and Q-filter Q from a lifted plant."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
import scipy.linalg as sla

from .analysis import ConvergenceReport, analyze, is_regular
from .errors import DesignNotConvergent, DimensionError, SingularDesign

__all__ = ["DesignMethod", "QuadOptWeights", "IlcDesign", "quadratic_optimal", "pd_learning", "assemble"]


class DesignMethod(str, Enum):
    QUADRATIC_OPTIMAL = "quadratic_optimal"
    PD_LEARNING = "pd_learning"


@dataclass
class QuadOptWeights:
    """Scalar weights of the quadratic trial cost: error, input, input change."""

    s_e: float = 1.0
    s_u: float = 0.0
    s_du: float = 0.0

    def __post_init__(self):
        if self.s_e <= 0.0:
            raise ValueError(f"s_e must be positive, got {self.s_e}")
        if self.s_u < 0.0 or self.s_du < 0.0:
            raise ValueError("s_u and s_du must be nonnegative")


@dataclass(eq=False)
class IlcDesign:
    """Learning matrix, Q-filter and their computed convergence report."""

    L: np.ndarray
    Q: np.ndarray
    method: DesignMethod
    report: ConvergenceReport


def assemble(P, L, Q, method: DesignMethod) -> IlcDesign:
    """Validate a (L, Q) pair against a plant and attach its report.

    Both matrices must be regular (condition estimate below 1e12); the
    report is always computed, never defaulted.
    """
    P = np.asarray(P, dtype=float)
    L = np.asarray(L, dtype=float)
    Q = np.asarray(Q, dtype=float)
    if not (P.shape == L.shape == Q.shape):
        raise DimensionError(
            f"P, L, Q must share one shape, got {P.shape}, {L.shape}, {Q.shape}"
        )
    if not is_regular(L):
        raise SingularDesign("learning matrix L is not regular")
    if not is_regular(Q):
        raise SingularDesign("Q-filter is not regular")
    return IlcDesign(L=L, Q=Q, method=method, report=analyze(P, L, Q))


def quadratic_optimal(P, weights: QuadOptWeights) -> IlcDesign:
    """Quadratic-optimal (L, Q) for the lifted plant ``P``.

    With ``S_e = s_e I`` etc. the minimizer of the quadratic trial cost is

        L = (P' S_e P + S_du)^{-1} P' S_e
        Q = (P' S_e P + S_u + S_du)^{-1} (P' S_e P + S_du)

    computed through symmetric positive-definite solves.  The resulting
    Euclidean rate is verified, not assumed: the report is computed and a
    non-convergent result raises ``DesignNotConvergent``.
    """
    P = np.asarray(P, dtype=float)
    if P.ndim != 2 or P.shape[0] != P.shape[1]:
        raise DimensionError(f"P must be square, got shape {P.shape}")
    N = P.shape[0]
    A = weights.s_e * (P.T @ P) + weights.s_du * np.eye(N)
    try:
        L = sla.cho_solve(sla.cho_factor(A), weights.s_e * P.T)
        if weights.s_u == 0.0:
            Q = np.eye(N)  # (A + 0)^{-1} A exactly
        else:
            Q = sla.cho_solve(sla.cho_factor(A + weights.s_u * np.eye(N)), A)
    except np.linalg.LinAlgError as exc:
        raise SingularDesign(f"quadratic-optimal solve failed: {exc}") from exc
    design = assemble(P, L, Q, DesignMethod.QUADRATIC_OPTIMAL)
    if design.report.gamma2 >= 1.0:
        raise DesignNotConvergent(
            f"quadratic-optimal design has gamma_2 = {design.report.gamma2:.6g} >= 1"
        )
    return design


def pd_learning(N: int, m: int, kp: float, kd: float) -> np.ndarray:
    """Lifted matrix of the PD learning law ``l(e)(n) = kp e(n) + kd (e(n) - e(n-1))``.

    The band sits on the main diagonal, ``kp + kd``, with ``-kd`` on the first
    subdiagonal; the relative-degree shift ``m`` is already absorbed by the
    lifted output convention, so it does not move the band.
    """
    if N < 1:
        raise DimensionError(f"N must be >= 1, got {N}")
    L = (kp + kd) * np.eye(N)
    if N > 1:
        L -= kd * np.eye(N, k=-1)
    return L
