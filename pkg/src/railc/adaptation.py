"""Reference-adapting ILC: per-trial reference scaling under an output bound.

At each trial the reference is replaced by ``r_j = y_j + a_j (r - y_j)``
with the largest scale ``a_j`` in [0, 1] satisfying

    a <= (y_max - ||y_j + a (r - y_j)||_inf - eps_bar) / (gamma_inf ||r - y_j||_inf),

a conservative one-step prediction of the next output's peak.  Rearranged,
the constraint reads ``g(a) <= 0`` for

    g(a) = gamma_inf ||r - y_j||_inf * a + ||y_j + a (r - y_j)||_inf + eps_bar - y_max,

which is convex in ``a`` (affine plus the norm of an affine function), so
its sublevel set intersected with [0, 1] is a single interval anchored at 0
whenever ``g(0) <= 0``.  Bisection therefore finds the maximal feasible
scale; we return the feasibility-side bracket endpoint, trading at most one
tolerance of optimality for a guaranteed bound.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from .analysis import threshold_epsilon
from .design import IlcDesign
from .engine import TrialRecord, conventional_step, make_record, trial_response
from .errors import (
    AssumptionViolated,
    DimensionError,
    InfeasibleAdaptation,
    IterationBudgetExceeded,
)
from .plant import LiftedPlant, StateSpace, build_lifted

__all__ = [
    "RailcConfig",
    "AdaptationResult",
    "RailcStep",
    "estimate_eps_bar",
    "solve_scale",
    "railc_step",
    "run_railc",
]

BOUND_SLACK = 1e-9  # the output bound is strict; feasibility tests allow this much

_DEGENERATE = 1e-12


@dataclass
class RailcConfig:
    """Settings of one constrained run.

    ``gamma_inf`` may be left unset; the run loop then takes it from the
    design's convergence report.
    """

    y_max: float
    eps_bar: float
    trials: int
    u0: np.ndarray
    gamma_inf: float | None = None
    bisect_tol: float = 1e-9
    max_bisect_iters: int = 100

    def __post_init__(self):
        if self.y_max <= 0.0:
            raise ValueError(f"y_max must be positive, got {self.y_max}")
        if self.eps_bar < 0.0:
            raise ValueError(f"eps_bar must be nonnegative, got {self.eps_bar}")
        if self.trials < 0:
            raise ValueError(f"trials must be >= 0, got {self.trials}")
        if self.bisect_tol <= 0.0:
            raise ValueError(f"bisect_tol must be positive, got {self.bisect_tol}")
        if self.max_bisect_iters < 1:
            raise ValueError(f"max_bisect_iters must be >= 1, got {self.max_bisect_iters}")
        self.u0 = np.asarray(self.u0, dtype=float).reshape(-1)


@dataclass
class AdaptationResult:
    """Solved reference scale for one trial.

    ``slack`` is the residual of the bound condition at the returned scale,
    ``y_max - ||r_adapted||_inf - eps_bar - a * gamma_inf * ||r - y||_inf``;
    it is nonnegative up to bisection tolerance whenever ``feasible``.
    """

    a: float
    r_adapted: np.ndarray
    slack: float
    feasible: bool


@dataclass
class RailcStep:
    u_next: np.ndarray
    adaptation: AdaptationResult


def estimate_eps_bar(P, Q, r, safety: float = 2.0) -> float:
    """Conservative bound on the per-trial residual forcing term.

    Returns ``safety * ||(I - P Q P^{-1}) r||_inf``.  This is a heuristic
    surrogate for the supremum over all trials' adapted references, which is
    unknowable before running; the run loop monitors the realized per-trial
    values and warns on any exceedance.
    """
    if safety <= 0.0:
        raise ValueError(f"safety must be positive, got {safety}")
    r = np.asarray(r, dtype=float).reshape(-1)
    return safety * threshold_epsilon(P, Q, r, np.zeros(r.size), norm="inf")


def solve_scale(y_j, r, cfg: RailcConfig) -> AdaptationResult:
    """Maximal feasible reference scale for the current output ``y_j``.

    Raises ``InfeasibleAdaptation`` when even ``a = 0`` fails, i.e. when
    ``||y_j||_inf > y_max - eps_bar``.  When ``r`` and ``y_j`` coincide,
    every scale yields the same adapted reference and ``a = 1`` is returned.
    """
    if cfg.gamma_inf is None:
        raise ValueError("cfg.gamma_inf must be set before solving for the scale")
    y = np.asarray(y_j, dtype=float).reshape(-1)
    r = np.asarray(r, dtype=float).reshape(-1)
    if y.size != r.size:
        raise DimensionError(f"y and r must have equal length, got {y.size} and {r.size}")
    gamma = float(cfg.gamma_inf)
    dy = r - y
    denom = float(np.max(np.abs(dy))) if dy.size else 0.0

    def g(a: float) -> float:
        return (
            gamma * denom * a
            + float(np.max(np.abs(y + a * dy)))
            + cfg.eps_bar
            - cfg.y_max
        )

    g0 = g(0.0)
    if g0 > 0.0:
        raise InfeasibleAdaptation(deficit=g0)
    if denom <= _DEGENERATE:
        return AdaptationResult(a=1.0, r_adapted=r.copy(), slack=-g(1.0), feasible=True)
    if g(1.0) <= 0.0:
        return AdaptationResult(a=1.0, r_adapted=r.copy(), slack=-g(1.0), feasible=True)
    lo, hi = 0.0, 1.0  # g(lo) <= 0 < g(hi)
    iters = 0
    while hi - lo > cfg.bisect_tol:
        iters += 1
        if iters > cfg.max_bisect_iters:
            raise IterationBudgetExceeded(
                f"bisection interval still {hi - lo:.3g} after {cfg.max_bisect_iters} iterations"
            )
        mid = 0.5 * (lo + hi)
        if g(mid) <= 0.0:
            lo = mid
        else:
            hi = mid
    a = lo
    return AdaptationResult(a=a, r_adapted=y + a * dy, slack=-g(a), feasible=True)


def railc_step(design: IlcDesign, u_j, y_j, r, cfg: RailcConfig) -> RailcStep:
    """One adapted update: solve the scale, then ``Q (u_j + L (r_j - y_j))``."""
    u_j = np.asarray(u_j, dtype=float).reshape(-1)
    y_j = np.asarray(y_j, dtype=float).reshape(-1)
    r = np.asarray(r, dtype=float).reshape(-1)
    adaptation = solve_scale(y_j, r, cfg)
    u_next = conventional_step(design, u_j, adaptation.r_adapted - y_j)
    return RailcStep(u_next=u_next, adaptation=adaptation)


def _check_assumptions(y0: np.ndarray, r: np.ndarray, y_max: float) -> None:
    # The output bound itself is strict; both preconditions use <= with a
    # small slack so boundary cases do not flap on rounding.
    r_norm = float(np.max(np.abs(r)))
    if r_norm > y_max + BOUND_SLACK:
        raise AssumptionViolated(assumption=2, measured=r_norm, limit=y_max)
    y0_norm = float(np.max(np.abs(y0)))
    if y0_norm > y_max + BOUND_SLACK:
        raise AssumptionViolated(assumption=1, measured=y0_norm, limit=y_max)


def run_railc(
    plant: LiftedPlant | StateSpace,
    design: IlcDesign,
    r,
    cfg: RailcConfig,
) -> list[TrialRecord]:
    """Run the reference-adapting trial loop.

    Trial 0 is the response to ``cfg.u0``; every record carries the solved
    scale, the adapted reference and the realized residual forcing term
    ``eps_true``.  An infeasible trial halts the run (the exception carries
    the partial records) rather than risking a bound violation.  A realized
    ``eps_true`` above ``cfg.eps_bar`` only warns: the guarantee degrades
    but the run remains informative.
    """
    r = np.asarray(r, dtype=float).reshape(-1)
    N = r.size
    if cfg.u0.size != N:
        raise DimensionError(f"u0 must have {N} entries, got {cfg.u0.size}")
    if cfg.gamma_inf is None:
        cfg = replace(cfg, gamma_inf=design.report.gamma_inf)
    lifted = plant if isinstance(plant, LiftedPlant) else build_lifted(plant, N)
    PQ = lifted.P @ design.Q

    def eps_true_of(r_adapted: np.ndarray) -> float:
        w = r_adapted - lifted.d
        v = w - PQ @ np.linalg.solve(lifted.P, w)
        return float(np.max(np.abs(v)))

    y0 = trial_response(plant, cfg.u0)
    _check_assumptions(y0, r, cfg.y_max)

    records: list[TrialRecord] = []
    u = cfg.u0
    y = y0
    for j in range(cfg.trials + 1):
        try:
            adaptation = solve_scale(y, r, cfg)
        except InfeasibleAdaptation as exc:
            raise InfeasibleAdaptation(deficit=exc.deficit, trial=j, records=records) from None
        eps_true = eps_true_of(adaptation.r_adapted)
        if eps_true > cfg.eps_bar + BOUND_SLACK:
            warnings.warn(
                f"trial {j}: realized residual term {eps_true:.6g} exceeds "
                f"eps_bar = {cfg.eps_bar:.6g}; the output-bound guarantee is weakened",
                RuntimeWarning,
                stacklevel=2,
            )
        records.append(
            make_record(
                j,
                u,
                y,
                r,
                r_effective=adaptation.r_adapted,
                a=adaptation.a,
                y_max=cfg.y_max,
                eps_true=eps_true,
                slack=adaptation.slack,
            )
        )
        if j < cfg.trials:
            u = conventional_step(design, u, adaptation.r_adapted - y)
            y = trial_response(plant, u)
    return records
