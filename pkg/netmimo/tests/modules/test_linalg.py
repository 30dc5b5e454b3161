import numpy as np
import pytest

from netmimo.modules.linalg import (
    herm,
    hermitian_eig,
    inv_sqrt_hermitian,
    numerical_rank,
    psd_factor,
)


def test_herm():
    a = np.array([[1 + 2j, 3], [4j, 5]])
    assert np.array_equal(herm(a), np.array([[1 - 2j, -4j], [3, 5]]))

    stacked = np.stack([a, 2 * a])
    assert np.array_equal(herm(stacked)[1], 2 * herm(a))


def test_numerical_rank():
    assert numerical_rank(np.array([1.0, 1e-11])) == 1
    assert numerical_rank(np.array([1.0, 1e-9])) == 2
    assert numerical_rank(np.array([1e6, 1e-5])) == 1
    assert numerical_rank(np.array([])) == 0
    assert numerical_rank(np.zeros(3)) == 0


def test_hermitian_eig_ascending():
    w, u = hermitian_eig(np.diag([3.0, 1.0, 2.0]).astype(complex))
    assert np.allclose(w, [1.0, 2.0, 3.0])
    assert np.allclose(herm(u) @ u, np.eye(3))


def test_inv_sqrt_hermitian():
    assert np.allclose(inv_sqrt_hermitian(np.diag([4.0, 9.0])), np.diag([0.5, 1.0 / 3.0]))

    rng = np.random.default_rng(3)
    x = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    a = x @ herm(x) + np.eye(3)
    r = inv_sqrt_hermitian(a)
    assert np.allclose(r @ a @ r, np.eye(3))

    with pytest.raises(np.linalg.LinAlgError):
        inv_sqrt_hermitian(np.diag([1.0, -1.0]))


def test_psd_factor_clipping():
    e, s = psd_factor(np.diag([-1e-10, 2.0]))
    assert s[0] == 0.0
    assert s[1] == pytest.approx(2.0)
    assert np.allclose((e * s) @ herm(e), np.diag([0.0, 2.0]))

    _, s = psd_factor(np.diag([-1e-3, 1.0]))
    assert s[0] == pytest.approx(-1e-3)
