import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings, strategies as st

from hypcmc.eigen import eig_gen_sym, sturm_count, tridiag_pencil_eigs
from hypcmc.errors import PreconditionError


def test_examples():
    r = eig_gen_sym(np.array([[2.0, 0], [0, 1]]), np.eye(2))
    np.testing.assert_allclose(r.values, [1, 2])
    r = eig_gen_sym(np.array([[2.0, 0], [0, 3]]), np.array([1.0, 3.0]))
    np.testing.assert_allclose(r.values, [1, 2])
    r = eig_gen_sym(np.array([[0.0, 1], [1, 0]]), np.eye(2))
    np.testing.assert_allclose(r.values, [-1, 1], atol=1e-15)
    r = eig_gen_sym(np.array([[2.0, -1], [-1, 2]]), np.eye(2))
    np.testing.assert_allclose(r.values, [1, 3])
    np.testing.assert_allclose(np.abs(r.vectors[:, 0]), [2 ** -0.5] * 2)


def test_rejects_bad_input():
    with pytest.raises(PreconditionError):
        eig_gen_sym(np.array([[1.0, 2], [0, 1]]), np.eye(2))
    with pytest.raises(PreconditionError):
        eig_gen_sym(np.eye(2), np.array([1.0, -1.0]))
    with pytest.raises(PreconditionError):
        tridiag_pencil_eigs([1.0, 2.0], [0.1, 0.2], [1, 1], k=1)


def _random_pencil(seed, n):
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((n, n))
    return X + X.T, rng.uniform(0.1, 3.0, n)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 30))
def test_dense_solver_matches_reference(seed, n):
    A, m = _random_pencil(seed, n)
    r = eig_gen_sym(A, m)
    ref = scipy.linalg.eigh(A, np.diag(m), eigvals_only=True)
    np.testing.assert_allclose(r.values, ref, atol=1e-10 * max(1, np.max(np.abs(ref))))
    # M-orthonormal eigenvectors
    np.testing.assert_allclose(r.vectors.T @ (m[:, None] * r.vectors), np.eye(n), atol=1e-9)
    assert r.residual <= 1e-9


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(2, 60))
def test_tridiagonal_pencil_matches_dense(seed, n):
    rng = np.random.default_rng(seed)
    d = rng.uniform(-2, 4, n)
    e = rng.standard_normal(n - 1)
    m = rng.uniform(0.2, 2, n)
    A = np.diag(d) + np.diag(e, 1) + np.diag(e, -1)
    ref = scipy.linalg.eigh(A, np.diag(m), eigvals_only=True)
    r = tridiag_pencil_eigs(d, e, m, k=n)
    np.testing.assert_allclose(r.values, ref, atol=1e-10 * max(1, np.max(np.abs(ref))))
    assert r.residual <= 1e-8
    lam = float(rng.uniform(ref[0] - 1, ref[-1] + 1))
    assert sturm_count(d, e, m, lam) == int(np.sum(ref < lam))


def test_pencil_upper_selection_and_badly_scaled_mass():
    n = 400
    h = 0.05
    s = (np.arange(n) - n / 2) * h
    m = h / np.cosh(s) ** 2          # spans eight orders of magnitude
    d = np.full(n, 2 / h)
    e = np.full(n - 1, -1 / h)
    r = tridiag_pencil_eigs(d, e, m, upper=5.0)
    assert np.all(r.values < 5.0)
    assert len(r.values) == sturm_count(d, e, m, 5.0)
    # residual of each pair
    for j, lam in enumerate(r.values):
        v = r.vectors[:, j]
        Av = d * v
        Av[:-1] += e * v[1:]
        Av[1:] += e * v[:-1]
        assert np.linalg.norm(Av - lam * m * v) <= 1e-8 * np.linalg.norm(d) * np.linalg.norm(v)
