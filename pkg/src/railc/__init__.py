"""Lifted-system iterative learning control with reference adaptation.

Plants repeat a finite task; between repetitions the input trajectory is
updated from the previous error (``u_{j+1} = Q (u_j + L e_j)``).  This
package builds the lifted per-trial form, synthesizes learning designs,
certifies their stability and convergence, and extends the loop with a
per-trial reference scaling that keeps the output's peak under a hard
bound while preserving monotonic error decrease above a small threshold.
"""

from .adaptation import (
    AdaptationResult,
    RailcConfig,
    RailcStep,
    estimate_eps_bar,
    railc_step,
    run_railc,
    solve_scale,
)
from .analysis import (
    ConvergenceReport,
    GammaHatCertificate,
    ScaledDifferenceBound,
    analyze,
    gamma_2,
    gamma_hat,
    gamma_hat_certificate,
    gamma_inf,
    is_regular,
    residual_error,
    scaled_difference_bound,
    spectral_radius,
    threshold_epsilon,
    transition_matrix,
)
from .design import DesignMethod, IlcDesign, QuadOptWeights, assemble, pd_learning, quadratic_optimal
from .engine import TrialRecord, conventional_step, run_conventional, trial_response
from .errors import (
    AssumptionViolated,
    ConfigParseError,
    ConvergenceFailure,
    DesignNotConvergent,
    DimensionError,
    InfeasibleAdaptation,
    IterationBudgetExceeded,
    NotAsymptoticallyStable,
    RailcError,
    RelativeDegreeMismatch,
    SingularDesign,
    SingularPlant,
    SingularSystem,
)
from .harness import (
    CampaignResult,
    CampaignSummary,
    ExperimentConfig,
    config_from_dict,
    demo_config,
    load_config,
    make_demo_plant,
    run_campaign,
)
from .plant import LiftedPlant, StateSpace, build_lifted, simulate_trial

__version__ = "0.1.0"
