"""Symmetric generalized eigensolvers ``A v = lambda M v`` with ``M`` a
positive diagonal matrix.

Two routes are provided:

* :func:`eig_gen_sym` -- dense: symmetric reduction ``M^{-1/2} A M^{-1/2}``,
  Householder tridiagonalisation and the implicit QL algorithm.
* :func:`tridiag_pencil_eigs` -- tridiagonal ``A``: Sturm-sequence bisection
  directly on the pencil ``A - lambda M`` (Sylvester inertia of its
  ``LDL^T`` factorisation) followed by inverse iteration.  It never forms
  ``M^{-1/2}``, so it stays accurate when the mass entries span many orders
  of magnitude.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import PreconditionError, ToleranceError

__all__ = ["EigenResult", "eig_gen_sym", "tridiag_pencil_eigs", "sturm_count",
           "householder_tridiagonalize", "tql_implicit"]


@dataclass(frozen=True)
class EigenResult:
    """Ascending eigenvalues, ``M``-orthonormal eigenvectors (columns) and the
    largest relative residual ``||A v - lambda M v|| / ||A||``."""

    values: np.ndarray
    vectors: np.ndarray
    residual: float


# ---------------------------------------------------------------------------
# Dense route
# ---------------------------------------------------------------------------


@njit(cache=True)
def householder_tridiagonalize(A):
    """Return ``(d, e, Q)`` with ``A = Q T Q^T``, ``T`` tridiagonal with
    diagonal ``d`` and off-diagonal ``e[i]`` coupling ``i, i+1``."""
    n = A.shape[0]
    T = A.copy()
    Q = np.eye(n)
    for k in range(n - 2):
        x = T[k + 1:, k].copy()
        nx = math.sqrt(np.sum(x * x))
        if nx == 0.0:
            continue
        alpha = -nx if x[0] >= 0 else nx
        v = x.copy()
        v[0] -= alpha
        nv = math.sqrt(np.sum(v * v))
        if nv == 0.0:
            continue
        v /= nv
        # T <- H T H with H = I - 2 v v^T acting on rows/cols k+1..n-1
        w = v @ np.ascontiguousarray(T[k + 1:, :])
        for i in range(n - k - 1):
            T[k + 1 + i, :] -= 2.0 * v[i] * w
        w = np.ascontiguousarray(T[:, k + 1:]) @ v
        for j in range(n - k - 1):
            T[:, k + 1 + j] -= 2.0 * w * v[j]
        w = np.ascontiguousarray(Q[:, k + 1:]) @ v
        for j in range(n - k - 1):
            Q[:, k + 1 + j] -= 2.0 * w * v[j]
    d = np.empty(n)
    e = np.zeros(n)
    for i in range(n):
        d[i] = T[i, i]
        if i < n - 1:
            e[i] = T[i, i + 1]
    return d, e, Q


@njit(cache=True)
def tql_implicit(d, e, Z):
    """Implicit QL with Wilkinson-type shifts on a symmetric tridiagonal
    matrix; ``Z`` accumulates the rotations.  Returns ``(d, Z, ok)``."""
    n = d.shape[0]
    d = d.copy()
    e = e.copy()
    Z = Z.copy()
    eps = 2.220446049250313e-16
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= eps * dd:
                    break
                m += 1
            if m == l:
                break
            it += 1
            if it > 60:
                return d, Z, False
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + (r if g >= 0 else -r))
            s = 1.0
            c = 1.0
            p = 0.0
            i = m - 1
            underflow = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                for k in range(n):
                    f = Z[k, i + 1]
                    Z[k, i + 1] = s * Z[k, i] + c * f
                    Z[k, i] = c * Z[k, i] - s * f
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return d, Z, True


def _mass_vector(mass, n):
    m = np.asarray(mass, dtype=float)
    if m.ndim == 2:
        if np.any(m - np.diag(np.diag(m))):
            raise PreconditionError("mass matrix must be diagonal")
        m = np.diag(m).copy()
    m = np.broadcast_to(m, (n,)).astype(float)
    if np.any(~(m > 0)):
        raise PreconditionError("mass entries must be positive")
    return m


def eig_gen_sym(A, mass, check_residual: bool = True, rtol: float = 1e-9) -> EigenResult:
    """Solve ``A v = lambda M v`` for symmetric ``A`` and positive diagonal ``M``.

    Parameters
    ----------
    A : (n, n) array_like
    mass : (n,) array_like or (n, n) diagonal matrix
    check_residual : bool
        Raise :class:`ToleranceError` when a residual exceeds ``rtol ||A||``.

    Returns
    -------
    EigenResult
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    n = A.shape[0]
    if A.shape != (n, n):
        raise PreconditionError("A must be square")
    if not np.allclose(A, A.T, rtol=0, atol=1e-12 * max(1.0, np.max(np.abs(A)))):
        raise PreconditionError("A must be symmetric")
    m = _mass_vector(mass, n)
    sc = 1.0 / np.sqrt(m)
    C = A * sc[:, None] * sc[None, :]
    C = 0.5 * (C + C.T)
    if n == 1:
        vals, Z, ok = np.array([C[0, 0]]), np.eye(1), True
    else:
        d, e, Q = householder_tridiagonalize(C)
        vals, Z, ok = tql_implicit(d, e, Q)
    if not ok:
        raise ToleranceError("QL iteration did not converge", {"n": n})
    order = np.argsort(vals, kind="stable")
    vals = vals[order]
    V = Z[:, order] * sc[:, None]          # M-orthonormal
    normA = max(np.max(np.abs(A)), np.finfo(float).tiny)
    R = A @ V - (m[:, None] * V) * vals[None, :]
    res = float(np.max(np.linalg.norm(R, axis=0) / np.maximum(np.linalg.norm(V, axis=0), 1e-300))
                / normA) if n else 0.0
    if check_residual and res > rtol:
        raise ToleranceError("eigen residual above tolerance", {"residual": res})
    return EigenResult(vals, V, res)


# ---------------------------------------------------------------------------
# Tridiagonal pencil route
# ---------------------------------------------------------------------------


@njit(cache=True)
def _sturm(d, e, m, lam):
    n = d.shape[0]
    p = d[0] - lam * m[0]
    c = 1 if p < 0 else 0
    for i in range(1, n):
        if p == 0.0:
            p = 1e-300
        p = d[i] - lam * m[i] - e[i - 1] * e[i - 1] / p
        if p < 0:
            c += 1
    return c


def sturm_count(d, e, m, lam) -> int:
    """Number of eigenvalues of the pencil below ``lam``."""
    return int(_sturm(np.asarray(d, float), np.asarray(e, float), np.asarray(m, float),
                      float(lam)))


@njit(cache=True)
def _bisect(d, e, m, k, lo, hi, rtol):
    # k-th eigenvalue (0-based): smallest x with count(x) > k
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo <= rtol * max(abs(lo), abs(hi), 1e-300) or mid == lo or mid == hi:
            break
        if _sturm(d, e, m, mid) > k:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


@njit(cache=True)
def _tri_solve(a, b, rhs):
    # symmetric tridiagonal solve (diag a, off b) by Gaussian elimination
    n = a.shape[0]
    cp = np.empty(n)
    dp = np.empty(n)
    piv = a[0] if a[0] != 0 else 1e-300
    cp[0] = b[0] / piv if n > 1 else 0.0
    dp[0] = rhs[0] / piv
    for i in range(1, n):
        piv = a[i] - b[i - 1] * cp[i - 1]
        if piv == 0.0:
            piv = 1e-300
        cp[i] = b[i] / piv if i < n - 1 else 0.0
        dp[i] = (rhs[i] - b[i - 1] * dp[i - 1]) / piv
    x = np.empty(n)
    x[n - 1] = dp[n - 1]
    for i in range(n - 2, -1, -1):
        x[i] = dp[i] - cp[i] * x[i + 1]
    return x


@njit(cache=True)
def _inverse_iteration(d, e, m, lam, x0):
    shift = lam + 1e-10 * max(abs(lam), 1e-8)
    a = d - shift * m
    x = x0.copy()
    for _ in range(4):
        y = _tri_solve(a, e, m * x)
        nrm = math.sqrt(np.sum(m * y * y))
        x = y / nrm
    return x


def tridiag_pencil_eigs(d, e, mass, k: int | None = None, upper: float | None = None,
                        rtol: float = 1e-14) -> EigenResult:
    """Lowest eigenpairs of the tridiagonal pencil ``(A, M)``.

    Parameters
    ----------
    d, e : array_like
        Diagonal (n) and off-diagonal (n-1) of ``A``.
    mass : array_like
        Positive diagonal of ``M``.
    k : int, optional
        Number of eigenpairs (lowest first).
    upper : float, optional
        Alternatively, return every eigenvalue below ``upper``.
    """
    d = np.ascontiguousarray(d, dtype=float)
    e = np.ascontiguousarray(e, dtype=float)
    n = len(d)
    m = _mass_vector(mass, n)
    if len(e) != n - 1:
        raise PreconditionError("off-diagonal must have length n-1")
    r = np.abs(np.concatenate([[0.0], e])) + np.abs(np.concatenate([e, [0.0]]))
    lo = float(np.min((d - r) / m))
    hi = float(np.max((d + r) / m))
    lo -= 1e-12 * max(1.0, abs(lo))
    hi += 1e-12 * max(1.0, abs(hi))
    if k is None:
        if upper is None:
            raise PreconditionError("give k or upper")
        k = _sturm(d, e, m, float(upper))
    k = min(int(k), n)
    vals = np.empty(k)
    vecs = np.empty((n, k))
    rng = np.random.default_rng(12345)
    for j in range(k):
        vals[j] = _bisect(d, e, m, j, lo, hi, rtol)
        x = _inverse_iteration(d, e, m, vals[j], rng.standard_normal(n))
        for i in range(j):
            x -= np.sum(m * x * vecs[:, i]) * vecs[:, i]
        x /= math.sqrt(np.sum(m * x * x))
        i0 = int(np.argmax(np.abs(x)))
        vecs[:, j] = x if x[i0] >= 0 else -x
    Av = d[:, None] * vecs
    Av[:-1] += e[:, None] * vecs[1:]
    Av[1:] += e[:, None] * vecs[:-1]
    R = Av - m[:, None] * vecs * vals[None, :]
    normA = float(np.max(np.abs(d)) + 2 * (np.max(np.abs(e)) if n > 1 else 0.0))
    res = float(np.max(np.linalg.norm(R, axis=0) / np.linalg.norm(vecs, axis=0)) / normA) if k else 0.0
    return EigenResult(vals, vecs, res)
