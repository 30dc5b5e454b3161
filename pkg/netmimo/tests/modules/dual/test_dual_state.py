import numpy as np
import pytest

from netmimo.modules.linalg import herm
from netmimo.modules.bd import effective_channels, per_antenna
from netmimo.modules.dual import (
    DomainError,
    dual_gradient,
    dual_value,
    evaluate,
    initial_dual,
    kkt_residual,
    run_gradient_suite,
)
from netmimo.modules.dual.dual_state import complementarity, residual_from
from netmimo.modules.dual.gradient_check import gradient_error, random_problem


@pytest.fixture
def identity_decomp():
    """Two single-antenna users on orthogonal antennas: Q_k = e_k"""
    return effective_channels(np.eye(2, dtype=complex)[:, None, :])


def test_identity_dual_point(identity_decomp):
    budgets = np.array([1.5, 2.5])
    constraint = per_antenna(budgets)

    assert np.allclose(np.abs(identity_decomp.Q[:, :, 0]), np.eye(2))
    assert dual_value(np.ones(2), identity_decomp, constraint) == pytest.approx(4.0)
    assert np.allclose(dual_gradient(np.ones(2), identity_decomp, constraint), budgets)


def test_saturated_dual_point(identity_decomp):
    constraint = per_antenna([1.0, 1.0])
    state = evaluate(np.full(2, 2.0), identity_decomp, constraint)

    assert state.value == pytest.approx(4.0)
    assert np.allclose(state.clipped, 1.0)
    assert np.allclose(state.omega(), np.ones((2, 1, 1)))
    assert np.allclose(state.gradient, [1.0, 1.0])


def test_interior_dual_point(identity_decomp):
    constraint = per_antenna([1.0, 1.0])
    state = evaluate(np.full(2, 0.5), identity_decomp, constraint)

    assert state.value == pytest.approx(2 * (np.log(2.0) - 0.5) + 1.0)
    assert np.allclose(state.covariance_eigenvalues, 1.0)
    assert np.allclose(state.gradient, [0.0, 0.0], atol=1e-12)
    assert state.rate_nats() == pytest.approx(2 * np.log(2.0))


def test_domain_errors(identity_decomp):
    constraint = per_antenna([1.0, 1.0])

    with pytest.raises(DomainError):
        evaluate(np.zeros(2), identity_decomp, constraint)

    with pytest.raises(DomainError):
        evaluate(np.array([1.0, -0.1]), identity_decomp, constraint)

    with pytest.raises(ValueError):
        evaluate(np.ones(3), identity_decomp, constraint)


def test_per_base_station_matches_summed_per_antenna(full_load_decomp, constraints_b3_nt2):
    pa = constraints_b3_nt2["per-antenna"]
    bs = constraints_b3_nt2["per-base-station"]
    lam = np.array([0.7, 1.1, 0.9])

    bs_state = evaluate(lam, full_load_decomp, bs)
    pa_state = evaluate(bs.expand(lam), full_load_decomp, pa)

    assert bs_state.value == pytest.approx(pa_state.value)
    assert np.allclose(bs_state.gradient, bs.reduce(pa_state.gradient))


def test_omega_and_covariance_are_complementary(full_load_decomp, constraints_b3_nt2):
    constraint = constraints_b3_nt2["per-antenna"]
    rng = np.random.default_rng(3)
    lam = initial_dual(full_load_decomp, constraint) * rng.uniform(0.2, 5.0, 6)
    state = evaluate(lam, full_load_decomp, constraint)

    basis = state.basis
    s_matrix = (basis * state.covariance_eigenvalues[:, None, :]) @ herm(basis)
    products = np.trace(state.omega() @ s_matrix, axis1=1, axis2=2)
    assert np.max(np.abs(products)) < 1e-9


def test_residual_from_boundary_cases():
    constraint = per_antenna([1.0, 1.0])

    assert residual_from(np.ones(2), np.zeros(2), constraint) == 0.0
    assert residual_from(np.zeros(2), np.array([0.5, 2.0]), constraint) == 0.0
    assert residual_from(np.zeros(2), np.array([-0.6, 1.0]), constraint) == pytest.approx(0.2)
    assert residual_from(np.ones(2), np.array([0.3, 0.0]), constraint) == pytest.approx(0.1)


def test_kkt_residual_at_interior_optimum(identity_decomp):
    # lambda = 0.5 is optimal for unit budgets: S_k = 1 uses the whole budget
    assert kkt_residual(np.full(2, 0.5), identity_decomp, per_antenna([1.0, 1.0])) < 1e-12


def test_initial_dual_is_uniform(full_load_decomp, constraints_b3_nt2):
    for constraint in constraints_b3_nt2.values():
        lam = initial_dual(full_load_decomp, constraint)
        assert lam.size == constraint.num_groups
        assert np.allclose(lam, 6 / 3.0)



def test_gradient_matches_finite_differences():
    result = run_gradient_suite(seed=3, points=15)

    assert result.points == 15
    assert set(result.max_error) == {"per-antenna", "per-base-station", "sum"}
    assert result.worst < 1e-5


def test_weighted_dual_point(identity_decomp):
    constraint = per_antenna([1.0, 1.0])
    lam = np.full(2, 0.25)
    # weights are rescaled to mean 1: (1, 3) -> (0.5, 1.5)
    state = evaluate(lam, identity_decomp, constraint, weights=np.array([0.5, 1.5]))

    expected = (
        0.5 * (-np.log(0.5) + 0.5 - 1.0)
        + 1.5 * (-np.log(1.0 / 6.0) + 1.0 / 6.0 - 1.0)
        + 0.5
    )
    assert state.value == pytest.approx(expected)
    assert np.allclose(state.covariance_eigenvalues[:, 0], [1.0, 5.0])
    assert np.allclose(state.gradient, [0.0, -4.0])
    assert state.rate_nats() == pytest.approx(0.5 * np.log(2.0) + 1.5 * np.log(6.0))
    assert np.allclose(state.omega(), np.zeros((2, 1, 1)))

    assert dual_value(lam, identity_decomp, constraint, weights=[1.0, 3.0]) == pytest.approx(expected)
    assert np.allclose(dual_gradient(lam, identity_decomp, constraint, weights=[1.0, 3.0]), [0.0, -4.0])


def test_unit_weights_match_unweighted(full_load_decomp, constraints_b3_nt2):
    constraint = constraints_b3_nt2["per-antenna"]
    lam = initial_dual(full_load_decomp, constraint) * np.linspace(0.5, 1.5, 6)

    plain = evaluate(lam, full_load_decomp, constraint)
    weighted = evaluate(lam, full_load_decomp, constraint, weights=np.ones(3))

    assert weighted.value == pytest.approx(plain.value, rel=1e-12)
    assert np.allclose(weighted.gradient, plain.gradient)
    assert np.allclose(initial_dual(full_load_decomp, constraint, np.ones(3)), lam / np.linspace(0.5, 1.5, 6))


def test_bad_weights(identity_decomp):
    constraint = per_antenna([1.0, 1.0])

    with pytest.raises(ValueError):
        dual_value(np.ones(2), identity_decomp, constraint, weights=[1.0])

    with pytest.raises(ValueError):
        dual_value(np.ones(2), identity_decomp, constraint, weights=[1.0, 0.0])


def test_weighted_gradient_matches_finite_differences():
    rng = np.random.default_rng(17)
    for kind in ("per-antenna", "per-base-station", "sum"):
        for _ in range(10):
            decomp, constraint, lam = random_problem(kind, rng)
            weights = rng.uniform(0.2, 5.0, decomp.num_users)
            assert gradient_error(lam, decomp, constraint, weights=weights) < 1e-5


def test_complementarity(identity_decomp):
    constraint = per_antenna([1.0, 2.0])

    assert complementarity(np.array([0.5, 0.0]), np.array([1.0, 0.5]), constraint) == 0.0
    assert complementarity(np.array([0.5, 2.0]), np.array([0.8, 1.5]), constraint) == pytest.approx(1.0)
