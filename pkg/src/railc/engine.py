"""Trial loop for the conventional update law ``u_{j+1} = Q (u_j + L e_j)``."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .design import IlcDesign
from .errors import DimensionError
from .plant import LiftedPlant, StateSpace, simulate_trial

__all__ = ["TrialRecord", "trial_response", "conventional_step", "run_conventional"]


@dataclass(eq=False)
class TrialRecord:
    """Everything measured on one trial.

    ``e`` is always the error against the original reference, even when an
    adapted reference (``r_effective``) drove the update.  ``a`` is the
    reference scale used this trial (1 for the conventional law).
    ``constraint_violated`` is true when the output's infinity norm reaches
    ``y_max``; the bound itself is strict.
    """

    j: int
    u: np.ndarray
    y: np.ndarray
    r_effective: np.ndarray
    e: np.ndarray
    a: float
    norm_e2: float
    norm_e_inf: float
    norm_y_inf: float
    constraint_violated: bool
    eps_true: float | None = None
    slack: float | None = None
    feasible: bool = True

    def to_json_dict(self) -> dict:
        return {
            "j": self.j,
            "a": self.a,
            "norm_e2": self.norm_e2,
            "norm_e_inf": self.norm_e_inf,
            "norm_y_inf": self.norm_y_inf,
            "constraint_violated": self.constraint_violated,
            "eps_true": self.eps_true,
            "slack": self.slack,
            "feasible": self.feasible,
            "u": self.u.tolist(),
            "y": self.y.tolist(),
            "r_effective": self.r_effective.tolist(),
            "e": self.e.tolist(),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "TrialRecord":
        return cls(
            j=int(data["j"]),
            u=np.asarray(data["u"], dtype=float),
            y=np.asarray(data["y"], dtype=float),
            r_effective=np.asarray(data["r_effective"], dtype=float),
            e=np.asarray(data["e"], dtype=float),
            a=float(data["a"]),
            norm_e2=float(data["norm_e2"]),
            norm_e_inf=float(data["norm_e_inf"]),
            norm_y_inf=float(data["norm_y_inf"]),
            constraint_violated=bool(data["constraint_violated"]),
            eps_true=None if data.get("eps_true") is None else float(data["eps_true"]),
            slack=None if data.get("slack") is None else float(data["slack"]),
            feasible=bool(data.get("feasible", True)),
        )


def make_record(
    j: int,
    u: np.ndarray,
    y: np.ndarray,
    r: np.ndarray,
    r_effective: np.ndarray,
    a: float,
    y_max: float = math.inf,
    eps_true: float | None = None,
    slack: float | None = None,
) -> TrialRecord:
    e = r - y
    norm_y_inf = float(np.max(np.abs(y)))
    return TrialRecord(
        j=j,
        u=u,
        y=y,
        r_effective=r_effective,
        e=e,
        a=float(a),
        norm_e2=float(np.linalg.norm(e, 2)),
        norm_e_inf=float(np.max(np.abs(e))),
        norm_y_inf=norm_y_inf,
        constraint_violated=bool(norm_y_inf >= y_max),
        eps_true=eps_true,
        slack=slack,
    )


def trial_response(plant: LiftedPlant | StateSpace, u: np.ndarray) -> np.ndarray:
    """Run one trial of either plant representation."""
    if isinstance(plant, LiftedPlant):
        return plant.respond(u)
    if isinstance(plant, StateSpace):
        return simulate_trial(plant, u)
    raise TypeError(f"plant must be LiftedPlant or StateSpace, got {type(plant)!r}")


def conventional_step(design: IlcDesign, u_j: np.ndarray, e_j: np.ndarray) -> np.ndarray:
    """Next input ``Q (u_j + L e_j)``."""
    u_j = np.asarray(u_j, dtype=float).reshape(-1)
    e_j = np.asarray(e_j, dtype=float).reshape(-1)
    N = design.L.shape[0]
    if u_j.size != N or e_j.size != N:
        raise DimensionError(f"u and e must have {N} entries, got {u_j.size} and {e_j.size}")
    return design.Q @ (u_j + design.L @ e_j)


def run_conventional(
    plant: LiftedPlant | StateSpace,
    design: IlcDesign,
    r: np.ndarray,
    u0: np.ndarray,
    trials: int,
    y_max: float = math.inf,
) -> list[TrialRecord]:
    """Run the conventional trial loop.

    Trial 0 is the response to ``u0``; updates produce trials ``1..trials``,
    so the returned list has ``trials + 1`` records.
    """
    if trials < 0:
        raise ValueError(f"trials must be >= 0, got {trials}")
    r = np.asarray(r, dtype=float).reshape(-1)
    u = np.asarray(u0, dtype=float).reshape(-1)
    if u.size != r.size:
        raise DimensionError(f"u0 must have {r.size} entries, got {u.size}")
    records: list[TrialRecord] = []
    for j in range(trials + 1):
        y = trial_response(plant, u)
        rec = make_record(j, u, y, r, r_effective=r, a=1.0, y_max=y_max)
        records.append(rec)
        if j < trials:
            u = conventional_step(design, u, rec.e)
    return records
