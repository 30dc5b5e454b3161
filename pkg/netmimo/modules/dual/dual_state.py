"""
Lagrange dual of the (weighted) BD throughput maximization under linear power constraints.

For dual variables lambda (one per constraint group, expanded to the diagonal of Lambda),
user weights w_k (all 1 for the plain sum rate) and
M_k = Q_k^H Lambda Q_k = U_k diag(sigma_k) U_k^H:
    Omega_k = U_k diag([sigma_k - w_k]_+) U_k^H
    c_k = min(sigma_k / w_k, 1)
    g = sum_k w_k sum_j ( -log c_kj + c_kj - 1 ) + lambda . budgets
    grad g = budgets - T^T diag( sum_k Q_k S_k Q_k^H ),  S_k = U_k diag(1/c_k - 1) U_k^H
All values are in nats.
"""

from typing import Optional
from dataclasses import dataclass

import numpy as np

from netmimo.modules.linalg import herm, hermitian_eig
from netmimo.modules.bd import NullSpaceDecomp, PowerConstraint

from .errors import DomainError


@dataclass
class DualState:
    lam: np.ndarray  # (L,)
    sigma: np.ndarray  # (K, n_r) eigenvalues of M_k, ascending
    basis: np.ndarray  # (K, n_r, n_r) eigenvectors U_k
    value: float
    gradient: np.ndarray  # (L,)
    iteration: int = 0
    weights: Optional[np.ndarray] = None  # (K,), None: all ones

    @property
    def user_weights(self) -> np.ndarray:
        if self.weights is None:
            return np.ones(self.sigma.shape[0])
        return self.weights

    @property
    def clipped(self) -> np.ndarray:
        """min(sigma / w, 1): eigenvalues of (M_k - Omega_k) / w_k"""
        if self.weights is None:
            return np.minimum(self.sigma, 1.0)
        return np.minimum(self.sigma / self.weights[:, None], 1.0)

    @property
    def covariance_eigenvalues(self) -> np.ndarray:
        """Eigenvalues 1/c - 1 of S_k in the same basis"""
        return 1.0 / self.clipped - 1.0

    def omega(self) -> np.ndarray:
        excess = np.maximum(self.sigma - self.user_weights[:, None], 0.0)
        return (self.basis * excess[:, None, :]) @ herm(self.basis)

    def rate_nats(self, scale: float = 1.0) -> float:
        """
        Weighted sum rate of the precoders recovered at lam with all powers
        multiplied by `scale`
        """
        per_user = np.sum(np.log1p(scale * self.covariance_eigenvalues), axis=1)
        if self.weights is None:
            return float(np.sum(per_user))
        return float(np.dot(self.weights, per_user))


def check_weights(weights: Optional[np.ndarray], num_users: int) -> Optional[np.ndarray]:
    """Validate user weights; they are rescaled to mean 1 since only ratios matter"""
    if weights is None:
        return None
    weights = np.asarray(weights, dtype=float).ravel()
    if weights.size != num_users:
        raise ValueError(f"expected {num_users} user weights, got {weights.size}")
    if np.any(~np.isfinite(weights)) or np.any(weights <= 0):
        raise ValueError("user weights must be finite and positive")
    return weights / np.mean(weights)


def dual_matrices(lam: np.ndarray, decomp: NullSpaceDecomp, constraint: PowerConstraint) -> np.ndarray:
    """M_k = Q_k^H Lambda Q_k for every user"""
    antenna_lam = constraint.expand(lam)
    return herm(decomp.Q) @ (antenna_lam[:, None] * decomp.Q)


def evaluate(
    lam: np.ndarray,
    decomp: NullSpaceDecomp,
    constraint: PowerConstraint,
    iteration: int = 0,
    weights: Optional[np.ndarray] = None,
) -> DualState:
    """
    g and its gradient at lam, Omega_k recomputed from scratch.
    `weights` must already be checked (see check_weights).
    """
    lam = np.asarray(lam, dtype=float).ravel()
    if lam.size != constraint.num_groups:
        raise ValueError(
            f"expected {constraint.num_groups} dual variables for {constraint.kind} budgets, got {lam.size}"
        )
    if np.any(~np.isfinite(lam)) or np.any(lam < 0):
        raise DomainError("dual variables must be finite and nonnegative")

    matrices = dual_matrices(lam, decomp, constraint)
    num_users, n_r = decomp.num_users, decomp.n_r

    sigma = np.empty((num_users, n_r))
    basis = np.empty((num_users, n_r, n_r), dtype=complex)
    for k in range(num_users):
        sigma[k], basis[k] = hermitian_eig(matrices[k])

    if not np.all(sigma > 0.0):
        raise DomainError(
            f"Q_k^H Lambda Q_k is not positive definite (smallest eigenvalue {np.min(sigma):.3g})"
        )

    state = DualState(
        lam=lam,
        sigma=sigma,
        basis=basis,
        value=0.0,
        gradient=np.empty(0),
        iteration=iteration,
        weights=weights,
    )

    clipped = state.clipped
    per_user = np.sum(-np.log(clipped) + clipped - 1.0, axis=1)
    if weights is None:
        conjugate = float(np.sum(per_user))
    else:
        conjugate = float(np.dot(weights, per_user))
    state.value = conjugate + float(np.dot(lam, constraint.budgets))

    # diag(Q_k S_k Q_k^H) = sum_j |(Q_k U_k)_{ij}|^2 (1/c_kj - 1)
    qu = decomp.Q @ basis
    antenna_power = np.sum(np.abs(qu) ** 2 * (1.0 / clipped - 1.0)[:, None, :], axis=(0, 2))
    state.gradient = constraint.budgets - constraint.reduce(antenna_power)
    return state


def dual_value(
    lam: np.ndarray,
    decomp: NullSpaceDecomp,
    constraint: PowerConstraint,
    weights: Optional[np.ndarray] = None,
) -> float:
    return evaluate(lam, decomp, constraint, weights=check_weights(weights, decomp.num_users)).value


def dual_gradient(
    lam: np.ndarray,
    decomp: NullSpaceDecomp,
    constraint: PowerConstraint,
    weights: Optional[np.ndarray] = None,
) -> np.ndarray:
    return evaluate(
        lam, decomp, constraint, weights=check_weights(weights, decomp.num_users)
    ).gradient


def residual_from(lam: np.ndarray, gradient: np.ndarray, constraint: PowerConstraint) -> float:
    """max(max(-grad, 0), max|lam * grad|) / (1 + sum of budgets)"""
    violation = float(np.max(np.maximum(-gradient, 0.0)))
    complementarity = float(np.max(np.abs(lam * gradient)))
    return max(violation, complementarity) / (1.0 + constraint.total_budget)


def complementarity(lam: np.ndarray, power: np.ndarray, constraint: PowerConstraint) -> float:
    """max_i |lambda_i (power_i - p_i)| for per-antenna powers `power`, unnormalized"""
    return float(np.max(np.abs(lam * (constraint.reduce(power) - constraint.budgets))))


def kkt_residual(
    lam: np.ndarray,
    decomp: NullSpaceDecomp,
    constraint: PowerConstraint,
    weights: Optional[np.ndarray] = None,
) -> float:
    state = evaluate(lam, decomp, constraint, weights=check_weights(weights, decomp.num_users))
    return residual_from(state.lam, state.gradient, constraint)


def initial_dual(
    decomp: NullSpaceDecomp, constraint: PowerConstraint, weights: Optional[np.ndarray] = None
) -> np.ndarray:
    """Uniform interior point lambda_i = n_r sum_k w_k / (sum of budgets)"""
    total_weight = decomp.num_users if weights is None else float(np.sum(weights))
    level = total_weight * decomp.n_r / constraint.total_budget
    return np.full(constraint.num_groups, level)
