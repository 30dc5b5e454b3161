import numpy as np
import pytest
from scipy.optimize import minimize

from netmimo.modules.channel_model import iid_channels
from netmimo.modules.bd import (
    conventional_bd,
    conventional_bd_feasible,
    effective_channels,
    per_antenna,
    per_base_station,
    sum_power,
    user_rates,
)
from netmimo.modules.dual import (
    ConvergenceQualityError,
    DualOptimizerError,
    DualSolver,
    SolveOptions,
    evaluate,
    recover_precoders,
    solve,
)
from netmimo.modules.dual.optimizer import covariance_factors

from ...instances import random_decomp, random_feasible_precoders


def test_single_channel_capacity():
    decomp = effective_channels(np.ones((1, 1, 1), dtype=complex))
    report = solve(decomp, per_antenna([4.0]))

    assert report.converged
    assert report.primal_rate == pytest.approx(np.log2(5.0), abs=1e-6)
    assert report.precoders.antenna_power[0] == pytest.approx(4.0, rel=1e-5)
    assert report.lam[0] == pytest.approx(0.2, rel=1e-5)


@pytest.mark.parametrize("fixture", ["full_load_decomp", "partial_load_decomp"])
def test_sum_power_matches_conventional(fixture, request):
    decomp = request.getfixturevalue(fixture)
    options = SolveOptions(tol_kkt=1e-9, tol_gap=1e-9)
    report = solve(decomp, sum_power(3.0, 6), options)

    assert report.converged
    assert report.primal_rate == pytest.approx(conventional_bd(decomp, 3.0).sum_rate, abs=1e-5)


@pytest.mark.parametrize("kind", ["per-antenna", "per-base-station", "sum"])
def test_solution_properties(kind, full_load_decomp, constraints_b3_nt2):
    decomp = full_load_decomp
    constraint = constraints_b3_nt2[kind]
    report = DualSolver().solve(decomp, constraint)
    precoders = report.precoders

    assert report.converged
    assert report.constraint_kind == kind
    assert np.all(report.lam >= 0.0)
    assert report.kkt_residual <= 1e-6
    assert report.relative_gap <= 1e-5
    assert report.gap >= -1e-9
    assert precoders.is_feasible(constraint)
    assert precoders.is_zero_forcing(decomp.channels)
    assert precoders.sum_rate == pytest.approx(report.primal_rate)
    for cov in precoders.covariances():
        assert np.linalg.matrix_rank(cov, tol=1e-9) <= decomp.n_r

    conventional = conventional_bd_feasible(decomp, constraint)
    assert report.primal_rate >= conventional.sum_rate - 1e-6


@pytest.mark.parametrize("kind", ["per-antenna", "per-base-station", "sum"])
def test_weak_duality(kind, full_load_decomp, constraints_b3_nt2):
    decomp = full_load_decomp
    constraint = constraints_b3_nt2[kind]
    report = solve(decomp, constraint)
    rng = np.random.default_rng(21)

    for _ in range(100):
        w = random_feasible_precoders(decomp, constraint, rng)
        rate = float(np.sum(user_rates(decomp.channels, w)))
        assert rate <= report.dual_value + 1e-9
        assert rate <= report.primal_rate + 1e-3


def test_constraint_nesting(full_load_decomp, constraints_b3_nt2):
    reports = {
        kind: solve(full_load_decomp, constraint)
        for kind, constraint in constraints_b3_nt2.items()
    }
    pa, bs, total = reports["per-antenna"], reports["per-base-station"], reports["sum"]

    # a feasible point of a tighter constraint bounds the looser dual from below
    assert bs.dual_value >= pa.primal_rate - 1e-9
    assert total.dual_value >= bs.primal_rate - 1e-9
    assert bs.primal_rate >= pa.primal_rate - 1e-4
    assert total.primal_rate >= bs.primal_rate - 1e-4


def slackness(report, constraint):
    power = constraint.reduce(report.precoders.antenna_power)
    return float(np.max(np.abs(report.lam * (power - constraint.budgets))))


@pytest.mark.parametrize("seed", range(100, 120))
def test_complementary_slackness_at_default_options(seed):
    decomp = effective_channels(iid_channels(2, 1, 2, snr=10.0, seed=seed))
    constraint = per_antenna([0.5, 0.5])
    report = solve(decomp, constraint)

    assert report.converged
    assert slackness(report, constraint) <= 1e-6
    assert report.complementarity == pytest.approx(slackness(report, constraint), abs=1e-12)
    assert report.trace[-1].complementarity <= 1e-6


@pytest.mark.parametrize("kind", ["per-antenna", "per-base-station", "sum"])
def test_complementary_slackness(kind, full_load_decomp, constraints_b3_nt2):
    constraint = constraints_b3_nt2[kind]
    report = solve(full_load_decomp, constraint)
    raw = recover_precoders(report.lam, full_load_decomp, constraint)

    assert report.converged
    assert slackness(report, constraint) <= 1e-6

    active = report.lam > 1e-2
    assert np.any(active)
    group_power = constraint.reduce(raw.antenna_power)
    assert np.allclose(group_power[active], constraint.budgets[active], atol=1e-5)

    state = evaluate(report.lam, full_load_decomp, constraint)
    assert np.all(np.maximum(state.sigma - 1.0, 0.0) * state.covariance_eigenvalues <= 1e-6)


def brute_force_two_users(decomp, budgets):
    """
    With K = N_t = 2 and n_r = 1 every BD precoder is Q_k x_k and user k gets
    log2(1 + |x_k|^2). Maximize over the powers p_k = |x_k|^2 directly.
    """
    a = (np.abs(decomp.Q[:, :, 0]) ** 2).T  # antenna power per unit user power
    grid = np.linspace(0.0, np.min(budgets / a[:, 0]), 20001)
    second = np.min((budgets[:, None] - a[:, :1] * grid[None, :]) / a[:, 1:], axis=0)
    rates = np.log2(1.0 + grid) + np.log2(1.0 + np.maximum(second, 0.0))
    best = int(np.argmax(rates))

    result = minimize(
        lambda p: -np.sum(np.log2(1.0 + p)),
        x0=np.array([grid[best], max(second[best], 0.0)]) * 0.999,
        method="SLSQP",
        bounds=[(0.0, None), (0.0, None)],
        constraints=[{"type": "ineq", "fun": lambda p: budgets - a @ p}],
    )
    return max(float(rates[best]), -float(result.fun) if result.success else 0.0)


@pytest.mark.parametrize("seed", range(31, 51))
def test_matches_brute_force_primal(seed):
    decomp = effective_channels(iid_channels(2, 1, 2, snr=10.0, seed=seed))
    budgets = np.array([0.5, 0.5])
    report = solve(decomp, per_antenna(budgets))

    oracle = brute_force_two_users(decomp, budgets)
    assert report.primal_rate == pytest.approx(oracle, rel=1e-4)


def test_scale_covariance():
    channels = iid_channels(3, 2, 6, snr=10.0, seed=41)
    first = solve(effective_channels(channels), per_antenna([0.5] * 6))
    second = solve(effective_channels(2.0 * channels), per_antenna([0.125] * 6))

    assert second.primal_rate == pytest.approx(first.primal_rate, abs=1e-4)
    assert second.dual_value == pytest.approx(first.dual_value, abs=1e-4)


def test_trace_sink(partial_load_decomp, constraints_b3_nt2):
    records = []
    report = solve(partial_load_decomp, constraints_b3_nt2["per-antenna"], trace_sink=records.append)

    assert records == report.trace
    assert len(records) == report.iterations + 1
    assert records[0].iteration == 0
    assert records[-1].iteration == report.iterations
    assert records[-1].dual_value <= records[0].dual_value
    assert all(r.gap >= -1e-9 for r in records)


def test_nonconverged_report_is_flagged(full_load_decomp, constraints_b3_nt2):
    constraint = constraints_b3_nt2["per-antenna"]
    report = solve(full_load_decomp, constraint, SolveOptions(max_iter=1))

    assert not report.converged
    assert report.iterations == 1
    assert report.precoders.is_feasible(constraint)
    assert report.summary()["converged"] is False


def test_invalid_options_and_inputs(full_load_decomp):
    with pytest.raises(DualOptimizerError):
        SolveOptions(max_iter=0)

    with pytest.raises(DualOptimizerError):
        SolveOptions(tol_kkt=0.0)

    with pytest.raises(DualOptimizerError):
        SolveOptions(tol_complementarity=0.0)

    with pytest.raises(DualOptimizerError):
        solve(full_load_decomp, per_base_station([1.0, 1.0], 2))


def test_convergence_quality_error(mocker, full_load_decomp, constraints_b3_nt2):
    mocker.patch(
        "netmimo.modules.dual.optimizer.psd_factor",
        return_value=(np.eye(2), np.array([-1e-3, 1.0])),
    )
    state = evaluate(np.ones(6), full_load_decomp, constraints_b3_nt2["per-antenna"])

    with pytest.raises(ConvergenceQualityError):
        covariance_factors(state)


def test_summary_fields(partial_load_decomp, constraints_b3_nt2):
    summary = solve(partial_load_decomp, constraints_b3_nt2["sum"]).summary()

    assert summary["constraint"] == "sum"
    assert len(summary["lambda"]) == 1
    assert len(summary["user_rates"]) == 2
    assert len(summary["antenna_power"]) == 6
    assert summary["sum_rate"] == pytest.approx(sum(summary["user_rates"]))


def test_weighted_sum_power_matches_weighted_conventional(full_load_decomp):
    weights = np.array([0.5, 1.0, 1.5])
    report = solve(full_load_decomp, sum_power(3.0, 6), weights=weights)
    conventional = conventional_bd(full_load_decomp, 3.0, weights)

    assert report.converged
    assert report.objective == pytest.approx(
        report.precoders.weighted_rate(weights / np.mean(weights))
    )
    assert report.precoders.weighted_rate(weights) == pytest.approx(
        conventional.weighted_rate(weights), rel=2e-5
    )
    assert report.primal_rate == pytest.approx(report.precoders.sum_rate)


def test_unit_weights_match_unweighted(partial_load_decomp, constraints_b3_nt2):
    constraint = constraints_b3_nt2["per-antenna"]
    plain = solve(partial_load_decomp, constraint)
    unit = solve(partial_load_decomp, constraint, weights=np.ones(2))

    assert plain.objective is None
    assert unit.objective == pytest.approx(unit.primal_rate)
    assert unit.primal_rate == pytest.approx(plain.primal_rate, abs=1e-5)


def test_heavy_weight_favours_user(full_load_decomp, constraints_b3_nt2):
    constraint = constraints_b3_nt2["per-antenna"]
    plain = solve(full_load_decomp, constraint)
    heavy = solve(full_load_decomp, constraint, weights=np.array([5.0, 1.0, 1.0]))

    assert heavy.converged
    assert heavy.complementarity <= 1e-6
    assert heavy.precoders.is_feasible(constraint)
    assert heavy.precoders.user_rates[0] >= plain.precoders.user_rates[0] - 1e-3
    assert heavy.primal_rate <= plain.primal_rate + plain.gap + 1e-9


@pytest.mark.parametrize("kind", ["per-antenna", "per-base-station", "sum"])
def test_weighted_weak_duality(kind, full_load_decomp, constraints_b3_nt2):
    constraint = constraints_b3_nt2[kind]
    weights = np.array([2.0, 0.5, 0.5])
    normalized = weights / np.mean(weights)
    report = solve(full_load_decomp, constraint, weights=weights)
    rng = np.random.default_rng(22)

    assert report.converged
    for _ in range(100):
        w = random_feasible_precoders(full_load_decomp, constraint, rng)
        rates = user_rates(full_load_decomp.channels, w)
        assert float(np.dot(normalized, rates)) <= report.dual_value + 1e-9


def test_bad_weights_rejected(full_load_decomp, constraints_b3_nt2):
    constraint = constraints_b3_nt2["per-antenna"]
    with pytest.raises(DualOptimizerError):
        solve(full_load_decomp, constraint, weights=np.ones(2))
    with pytest.raises(DualOptimizerError):
        solve(full_load_decomp, constraint, weights=np.array([1.0, 0.0, 1.0]))


def sweep_instances(count, seed):
    """Mixed dimensions: B in {1, 3}, n_t in {2, 4}, n_r in {1, 2}, full and partial load"""
    rng = np.random.default_rng(seed)
    shapes = [
        (b, n_t, n_r, full)
        for b in (1, 3)
        for n_t in (2, 4)
        for n_r in (1, 2)
        for full in (True, False)
    ]
    kinds = ["per-antenna", "per-base-station", "sum"]
    for i in range(count):
        b, n_t, n_r, full = shapes[i % len(shapes)]
        total_tx = b * n_t
        k_max = total_tx // n_r
        num_users = k_max if full else max(1, k_max // 2)
        snr = 10.0 ** (rng.uniform(0.0, 20.0) / 10.0)
        channels = iid_channels(num_users, n_r, total_tx, snr=snr, rng=rng)
        kind = kinds[i % len(kinds)]
        if kind == "per-antenna":
            constraint = per_antenna(np.full(total_tx, 1.0 / n_t))
        elif kind == "per-base-station":
            constraint = per_base_station(np.ones(b), n_t)
        else:
            constraint = sum_power(float(b), total_tx)
        yield effective_channels(channels), constraint


@pytest.mark.slow
def test_gap_sweep():
    total = 200
    converged = 0
    for decomp, constraint in sweep_instances(total, seed=500):
        report = solve(decomp, constraint)
        assert report.gap >= -1e-9
        assert report.precoders.is_feasible(constraint)
        if report.converged:
            converged += 1
            assert report.relative_gap <= 1e-5 * (1.0 + 1e-6)
            assert report.complementarity <= 1e-6
            assert report.precoders.is_zero_forcing(decomp.channels)
    assert converged >= 0.99 * total


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(50))
def test_sum_power_matches_conventional_many(seed):
    num_users = 3 if seed % 2 == 0 else 2
    decomp = random_decomp(seed=1000 + seed, num_users=num_users, n_r=2, total_tx=6)
    report = solve(decomp, sum_power(3.0, 6))

    assert report.converged
    assert report.primal_rate == pytest.approx(conventional_bd(decomp, 3.0).sum_rate, rel=1e-5)


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(50))
def test_constraint_nesting_many(seed):
    decomp = random_decomp(seed=2000 + seed, num_users=3, n_r=2, total_tx=6)
    pa = solve(decomp, per_antenna([0.5] * 6))
    bs = solve(decomp, per_base_station([1.0] * 3, 2))
    total = solve(decomp, sum_power(3.0, 6))

    assert pa.converged and bs.converged and total.converged
    # a converged primal sits within its own gap of the optimum
    assert bs.primal_rate + bs.gap >= pa.primal_rate - 1e-7
    assert total.primal_rate + total.gap >= bs.primal_rate - 1e-7
    assert bs.primal_rate >= pa.primal_rate - 2e-5 * (1.0 + bs.primal_rate)
    assert total.primal_rate >= bs.primal_rate - 2e-5 * (1.0 + total.primal_rate)
