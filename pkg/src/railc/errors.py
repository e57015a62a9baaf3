"""Exception types shared across the package."""


class RailcError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(RailcError):
    """Array shapes are inconsistent with each other or with the trial length."""


class RelativeDegreeMismatch(RailcError):
    """The first Markov parameter C A^(m-1) B vanishes, so the lifted plant
    matrix would be singular."""


class SingularPlant(RailcError):
    """The plant matrix P is numerically singular (condition estimate too large)."""


class SingularSystem(RailcError):
    """A linear system arising in an analysis formula is numerically singular."""


class ConvergenceFailure(RailcError):
    """An eigenvalue or singular-value computation did not converge."""


class NotAsymptoticallyStable(RailcError):
    """The trial-to-trial iteration has spectral radius >= 1, so the residual
    error limit does not exist."""


class SingularDesign(RailcError):
    """A learning-matrix or Q-filter solve failed, or the result is not regular."""


class DesignNotConvergent(RailcError):
    """A synthesized design failed its verified monotonic-convergence check."""


class InfeasibleAdaptation(RailcError):
    """No reference scale satisfies the output-bound condition.

    ``deficit`` is by how much the current output norm exceeds the feasible
    region ``y_max - eps_bar``; ``trial`` is filled in by the run loop.
    ``records`` carries the trial records produced before the halt.
    """

    def __init__(self, deficit: float, trial: int | None = None, records=None):
        self.deficit = float(deficit)
        self.trial = trial
        self.records = records if records is not None else []
        where = "" if trial is None else f" at trial {trial}"
        super().__init__(
            f"no feasible reference scale{where}: output norm exceeds "
            f"y_max - eps_bar by {self.deficit:.6g}"
        )


class IterationBudgetExceeded(RailcError):
    """An iterative solver hit its iteration cap before reaching tolerance."""


class ConfigParseError(RailcError):
    """An experiment config file could not be parsed or failed validation."""


class AssumptionViolated(RailcError):
    """A precondition on the initial input or the reference does not hold.

    ``assumption`` is 1 (initial output within bound) or 2 (reference within
    bound); ``measured`` is the offending infinity norm.
    """

    def __init__(self, assumption: int, measured: float, limit: float):
        self.assumption = int(assumption)
        self.measured = float(measured)
        self.limit = float(limit)
        what = {1: "initial output", 2: "reference"}[self.assumption]
        super().__init__(
            f"assumption {assumption} violated: ||{what}||_inf = "
            f"{measured:.6g} exceeds y_max = {limit:.6g}"
        )
