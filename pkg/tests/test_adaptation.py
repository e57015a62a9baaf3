import numpy as np
import pytest
from numpy.testing import assert_allclose

from railc.adaptation import (
    AdaptationResult,
    RailcConfig,
    estimate_eps_bar,
    railc_step,
    run_railc,
    solve_scale,
)
from railc.analysis import gamma_hat, threshold_epsilon
from railc.design import QuadOptWeights, quadratic_optimal
from railc.engine import conventional_step, run_conventional
from railc.errors import AssumptionViolated, InfeasibleAdaptation
from railc.plant import LiftedPlant

from conftest import random_lower_triangular_plant


def make_cfg(N, y_max=1.0, eps_bar=0.1, gamma_inf=0.5, trials=5, **kw):
    return RailcConfig(
        y_max=y_max, eps_bar=eps_bar, trials=trials, u0=np.zeros(N), gamma_inf=gamma_inf, **kw
    )


def g_of(a, y, r, cfg):
    dy = r - y
    return (
        cfg.gamma_inf * np.max(np.abs(dy)) * a
        + np.max(np.abs(y + a * dy))
        + cfg.eps_bar
        - cfg.y_max
    )


# ---------------------------------------------------------------------------
# solve_scale
# ---------------------------------------------------------------------------

def test_full_scale_when_bound_is_loose():
    # g(1) = 0.5*0.5 + 0.5 + 0.1 - 1 < 0, so the unscaled reference is safe
    N = 4
    r = np.array([0.5, -0.25, 0.1, 0.0])
    result = solve_scale(np.zeros(N), r, make_cfg(N))
    assert result.a == 1.0
    assert np.array_equal(result.r_adapted, r)
    assert result.slack == pytest.approx(-g_of(1.0, np.zeros(N), r, make_cfg(N)))


def test_closed_form_scale_from_rest():
    # with y = 0: ||a r||_inf = a ||r||_inf, so a* = (y_max - eps)/( (1+gamma)||r||_inf )
    N = 3
    r = np.array([0.8, -0.4, 0.2])
    cfg = make_cfg(N)
    result = solve_scale(np.zeros(N), r, cfg)
    assert result.a == pytest.approx(0.75, abs=2 * cfg.bisect_tol)
    assert result.slack >= 0.0


def test_infeasible_when_output_too_close_to_bound():
    N = 2
    y = np.array([0.95, 0.0])
    with pytest.raises(InfeasibleAdaptation) as exc_info:
        solve_scale(y, np.zeros(N), make_cfg(N))
    assert exc_info.value.deficit == pytest.approx(0.05)


def test_degenerate_matched_reference_returns_full_scale():
    N = 3
    r = np.array([0.3, 0.2, -0.1])
    result = solve_scale(r.copy(), r, make_cfg(N))
    assert result.a == 1.0
    assert np.array_equal(result.r_adapted, r)


def test_adapted_reference_formula():
    rng = np.random.default_rng(0)
    N = 5
    cfg = make_cfg(N, y_max=1.0, eps_bar=0.05, gamma_inf=0.8)
    y = 0.4 * rng.normal(size=N)
    r = rng.uniform(-0.95, 0.95, size=N)
    result = solve_scale(y, r, cfg)
    if result.a < 1.0:
        assert np.array_equal(result.r_adapted, y + result.a * (r - y))


def grid_search_scale(y, r, cfg, step=1e-5):
    grid = np.arange(0.0, 1.0 + step, step)
    grid = np.minimum(grid, 1.0)
    dy = r - y
    peaks = np.max(np.abs(y[None, :] + grid[:, None] * dy[None, :]), axis=1)
    g = cfg.gamma_inf * np.max(np.abs(dy)) * grid + peaks + cfg.eps_bar - cfg.y_max
    feasible = np.nonzero(g <= 0.0)[0]
    return grid[feasible[-1]] if feasible.size else None


def random_scale_instance(rng, N):
    y_max = rng.uniform(0.5, 2.0)
    eps_bar = rng.uniform(0.0, 0.2 * y_max)
    gamma = rng.uniform(0.05, 0.95)
    y = rng.uniform(-1.0, 1.0, size=N)
    peak = np.max(np.abs(y))
    if peak > 0.95 * (y_max - eps_bar):
        y *= 0.95 * (y_max - eps_bar) / peak  # keep the instance feasible
    r = rng.uniform(-y_max, y_max, size=N)
    cfg = RailcConfig(y_max=y_max, eps_bar=eps_bar, trials=1, u0=np.zeros(N), gamma_inf=gamma)
    return y, r, cfg


def test_bisection_agrees_with_grid_search():
    rng = np.random.default_rng(1)
    for _ in range(50):
        N = int(rng.integers(2, 12))
        y, r, cfg = random_scale_instance(rng, N)
        result = solve_scale(y, r, cfg)
        oracle = grid_search_scale(y, r, cfg)
        assert oracle is not None
        assert result.a == pytest.approx(oracle, abs=1e-4)
        assert g_of(result.a, y, r, cfg) <= 1e-9


def test_returned_scale_is_maximal():
    rng = np.random.default_rng(2)
    for _ in range(50):
        N = int(rng.integers(2, 12))
        y, r, cfg = random_scale_instance(rng, N)
        result = solve_scale(y, r, cfg)
        if result.a < 1.0:
            assert g_of(result.a + 2 * cfg.bisect_tol, y, r, cfg) > 0.0


def test_gamma_inf_required():
    cfg = RailcConfig(y_max=1.0, eps_bar=0.0, trials=1, u0=np.zeros(2))
    with pytest.raises(ValueError):
        solve_scale(np.zeros(2), np.ones(2) * 0.1, cfg)


# ---------------------------------------------------------------------------
# estimate_eps_bar
# ---------------------------------------------------------------------------

def test_eps_bar_zero_for_identity_filter():
    rng = np.random.default_rng(3)
    P = random_lower_triangular_plant(rng, 5)
    r = rng.normal(size=5)
    assert estimate_eps_bar(P, np.eye(5), r) == pytest.approx(0.0, abs=1e-12)


def test_eps_bar_zero_for_zero_reference():
    rng = np.random.default_rng(4)
    P = random_lower_triangular_plant(rng, 5)
    assert estimate_eps_bar(P, 0.5 * np.eye(5), np.zeros(5)) == 0.0


def test_eps_bar_scales_with_safety():
    rng = np.random.default_rng(5)
    P = random_lower_triangular_plant(rng, 5)
    Q = 0.9 * np.eye(5)
    r = rng.normal(size=5)
    one = estimate_eps_bar(P, Q, r, safety=1.0)
    assert one == pytest.approx(threshold_epsilon(P, Q, r, np.zeros(5), "inf"))
    assert estimate_eps_bar(P, Q, r, safety=2.0) == pytest.approx(2.0 * one)


# ---------------------------------------------------------------------------
# railc_step
# ---------------------------------------------------------------------------

def constrained_instance(rng, N, gamma_inf_max=0.9):
    """Plant + design with gamma_inf < 1 plus vectors for a feasible trial."""
    while True:
        P = random_lower_triangular_plant(rng, N)
        design = quadratic_optimal(P, QuadOptWeights(s_e=1.0, s_u=1e-3, s_du=1e-2))
        if design.report.gamma_inf < gamma_inf_max:
            d = 0.1 * rng.normal(size=N)
            return LiftedPlant(P=P, d=d, N=N), design


def test_zero_scale_collapses_to_filtered_input():
    rng = np.random.default_rng(6)
    N = 5
    plant, design = constrained_instance(rng, N)
    u = rng.normal(size=N)
    y = plant.respond(u)
    # y_max barely above ||y||_inf + eps_bar forces a tiny scale; a = 0 exactly
    # collapses the update to Q u.  Emulate by calling the update law directly.
    u_next = conventional_step(design, u, y - y)
    assert_allclose(u_next, design.Q @ u, atol=0)


def test_full_scale_matches_conventional_step():
    rng = np.random.default_rng(7)
    N = 5
    plant, design = constrained_instance(rng, N)
    u = 0.1 * rng.normal(size=N)
    y = plant.respond(u)
    r = 0.2 * rng.normal(size=N)
    cfg = make_cfg(N, y_max=100.0, eps_bar=0.01, gamma_inf=design.report.gamma_inf)
    step = railc_step(design, u, y, r, cfg)
    assert step.adaptation.a == 1.0
    assert np.array_equal(step.u_next, conventional_step(design, u, r - y))


def test_update_forms_agree_on_lifted_plant():
    # Q (u + L (r_j - y)) must equal Q (I - a L P) u + a Q L (r - d)
    rng = np.random.default_rng(8)
    for _ in range(10):
        N = int(rng.integers(3, 8))
        plant, design = constrained_instance(rng, N)
        u = 0.2 * rng.normal(size=N)
        y = plant.respond(u)
        r = rng.uniform(-0.5, 0.5, size=N)
        y_max = max(np.max(np.abs(y)), np.max(np.abs(r))) + rng.uniform(0.05, 0.3)
        cfg = make_cfg(N, y_max=y_max, eps_bar=0.02, gamma_inf=design.report.gamma_inf)
        step = railc_step(design, u, y, r, cfg)
        a = step.adaptation.a
        direct = (
            design.Q @ (np.eye(N) - a * design.L @ plant.P) @ u
            + a * design.Q @ design.L @ (r - plant.d)
        )
        assert_allclose(step.u_next, direct, atol=1e-9)


# ---------------------------------------------------------------------------
# run_railc
# ---------------------------------------------------------------------------

def test_unconstrained_run_matches_conventional():
    rng = np.random.default_rng(9)
    N = 6
    plant, design = constrained_instance(rng, N)
    r = 0.3 * rng.normal(size=N)
    cfg = RailcConfig(y_max=1e6, eps_bar=0.01, trials=8, u0=np.zeros(N))
    railc_records = run_railc(plant, design, r, cfg)
    conventional_records = run_conventional(plant, design, r, np.zeros(N), trials=8)
    assert all(rec.a == 1.0 for rec in railc_records)
    for a, b in zip(railc_records, conventional_records):
        assert np.array_equal(a.u, b.u)
        assert np.array_equal(a.y, b.y)


def constrained_run(rng, N=8, trials=12):
    while True:
        plant, design = constrained_instance(rng, N)
        r = rng.uniform(-1.0, 1.0, size=N)
        r *= 0.9 / np.max(np.abs(r))
        eps_bar = estimate_eps_bar(plant.P, design.Q, r)
        y_max = 1.0
        if eps_bar > 0.2 * y_max:
            continue
        if np.max(np.abs(plant.d)) > y_max - eps_bar - 0.05:
            continue
        cfg = RailcConfig(y_max=y_max, eps_bar=eps_bar, trials=trials, u0=np.zeros(N))
        try:
            records = run_railc(plant, design, r, cfg)
        except InfeasibleAdaptation:
            continue
        return plant, design, r, cfg, records


def test_constraint_compliance_on_lifted_plant():
    rng = np.random.default_rng(10)
    for _ in range(5):
        _, _, _, cfg, records = constrained_run(rng)
        for rec in records:
            assert rec.norm_y_inf <= cfg.y_max + 1e-9


def test_adapted_contraction_inequality_per_trial():
    # ||r_j - y_{j+1}||_inf <= gamma_inf ||r_j - y_j||_inf + eps_true_j
    rng = np.random.default_rng(11)
    for _ in range(3):
        plant, design, r, cfg, records = constrained_run(rng)
        gamma = design.report.gamma_inf
        for prev, nxt in zip(records, records[1:]):
            lhs = np.max(np.abs(prev.r_effective - nxt.y))
            rhs = gamma * np.max(np.abs(prev.r_effective - prev.y)) + prev.eps_true
            assert lhs <= rhs + 1e-9


def test_error_recursion_identity():
    # e_{j+1} = P Q (I - a_j L P) P^{-1} e_j + (I - P Q P^{-1})(r - d)
    rng = np.random.default_rng(12)
    plant, design, r, cfg, records = constrained_run(rng)
    N = plant.N
    Pinv = np.linalg.inv(plant.P)
    forcing = (np.eye(N) - plant.P @ design.Q @ Pinv) @ (r - plant.d)
    for prev, nxt in zip(records, records[1:]):
        M = plant.P @ design.Q @ (np.eye(N) - prev.a * design.L @ plant.P) @ Pinv
        predicted = M @ prev.e + forcing
        assert np.max(np.abs(nxt.e - predicted)) <= 1e-9


def test_threshold_monotonicity_with_realized_scales():
    rng = np.random.default_rng(13)
    plant, design, r, cfg, records = constrained_run(rng)
    scales = sorted({rec.a for rec in records})
    gh2 = gamma_hat(plant.P, design.L, design.Q, scales, "two")
    eps2 = threshold_epsilon(plant.P, design.Q, r, plant.d, "two")
    if gh2 < 1.0:
        kappa = eps2 / (1.0 - gh2)
        for prev, nxt in zip(records, records[1:]):
            if prev.norm_e2 >= kappa:
                assert nxt.norm_e2 <= prev.norm_e2 + 1e-9


def test_eps_monitor_values_recorded():
    rng = np.random.default_rng(14)
    plant, design, r, cfg, records = constrained_run(rng)
    for rec in records:
        expected = threshold_epsilon(plant.P, design.Q, rec.r_effective, plant.d, "inf")
        assert rec.eps_true == pytest.approx(expected, rel=1e-9, abs=1e-12)


def test_eps_monitor_warns_on_exceedance():
    rng = np.random.default_rng(15)
    N = 6
    plant, design = constrained_instance(rng, N)
    r = 0.3 * rng.normal(size=N)
    # eps_bar deliberately below the realized residual term
    cfg = RailcConfig(y_max=1e6, eps_bar=0.0, trials=1, u0=np.zeros(N))
    realized = threshold_epsilon(plant.P, design.Q, r, plant.d, "inf")
    if realized <= 1e-9:
        pytest.skip("instance has no residual term to exceed")
    with pytest.warns(RuntimeWarning):
        run_railc(plant, design, r, cfg)


def test_infeasible_halt_carries_partial_records():
    rng = np.random.default_rng(16)
    N = 5
    plant, design = constrained_instance(rng, N)
    d = np.zeros(N)
    d[2] = 0.9
    plant = LiftedPlant(P=plant.P, d=d, N=N)
    # assumption 1 holds (0.9 <= 1.0) but y_max - eps_bar = 0.85 < 0.9
    cfg = RailcConfig(y_max=1.0, eps_bar=0.15, trials=4, u0=np.zeros(N))
    r = 0.2 * np.ones(N)
    with pytest.raises(InfeasibleAdaptation) as exc_info:
        run_railc(plant, design, r, cfg)
    assert exc_info.value.trial == 0
    assert exc_info.value.records == []
    assert exc_info.value.deficit == pytest.approx(0.05)


def test_assumption_checks():
    rng = np.random.default_rng(17)
    N = 4
    plant, design = constrained_instance(rng, N)
    cfg = RailcConfig(y_max=0.5, eps_bar=0.0, trials=2, u0=np.zeros(N))
    with pytest.raises(AssumptionViolated) as exc_info:
        run_railc(plant, design, np.ones(N), cfg)
    assert exc_info.value.assumption == 2
    big_d = LiftedPlant(P=plant.P, d=np.full(N, 0.9), N=N)
    with pytest.raises(AssumptionViolated) as exc_info:
        run_railc(big_d, design, 0.1 * np.ones(N), cfg)
    assert exc_info.value.assumption == 1


def test_config_validation():
    with pytest.raises(ValueError):
        RailcConfig(y_max=-1.0, eps_bar=0.0, trials=1, u0=np.zeros(2))
    with pytest.raises(ValueError):
        RailcConfig(y_max=1.0, eps_bar=-0.1, trials=1, u0=np.zeros(2))
    with pytest.raises(ValueError):
        RailcConfig(y_max=1.0, eps_bar=0.0, trials=1, u0=np.zeros(2), bisect_tol=0.0)
