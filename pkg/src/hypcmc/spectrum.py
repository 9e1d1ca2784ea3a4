"""Numerical spectrum of the pseudometric Laplacian for ``G = z^mu``.

Separating ``u = v(r) cos(q theta)`` and substituting ``s = ln r`` turns the
eigenvalue equation into the one-dimensional Schroedinger-type problem

    -v'' + q^2 v = lambda w(s) v,    w(s) = mu^2 / cosh^2(mu s),

on the real line.  It is truncated to ``[-S, S]`` and discretised by second
order finite differences with a lumped (diagonal) mass matrix.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .eigen import EigenResult, tridiag_pencil_eigs
from .errors import PreconditionError, ToleranceError
from .oracle import enumerate_eigenpairs, lambda_pq

__all__ = [
    "radial_weight",
    "RadialProblem",
    "assemble_mode",
    "SpectrumReport",
    "numeric_spectrum",
]


def radial_weight(mu: float, s):
    """``w(s) = mu^2 / cosh^2(mu s)``, written overflow-free.

    ``w(ln r) = rho(r) r^2`` where ``rho`` is the pseudometric factor of
    ``G = z^mu``.
    """
    s = np.asarray(s, dtype=float)
    x = np.exp(-2.0 * np.abs(mu * s))
    out = 4.0 * mu * mu * x / (1.0 + x) ** 2
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class RadialProblem:
    """Discrete radial problem ``A v = lambda M v`` for one Fourier mode.

    ``diag``/``off`` hold the symmetric tridiagonal stiffness matrix (already
    multiplied by the cell widths) and ``mass`` the lumped weights
    ``w(s_i) * cell_i``.
    """

    q: int
    mu: float
    S: float
    N: int
    bc: str
    s: np.ndarray
    diag: np.ndarray
    off: np.ndarray
    mass: np.ndarray

    @property
    def h(self) -> float:
        return float(self.s[1] - self.s[0])

    def solve(self, k: int | None = None, upper: float | None = None) -> EigenResult:
        return tridiag_pencil_eigs(self.diag, self.off, self.mass, k=k, upper=upper)

    def dense(self):
        """Dense stiffness matrix (for cross-checks with the dense solver)."""
        A = np.diag(self.diag)
        A += np.diag(self.off, 1) + np.diag(self.off, -1)
        return A


def assemble_mode(q: int, mu: float, S: float = 12.0, N: int = 2400,
                  bc: str = "auto") -> RadialProblem:
    """Finite-difference discretisation of ``-v'' + q^2 v = lambda w v``.

    Parameters
    ----------
    q : int
        Fourier mode.
    mu : float
    S : float
        Truncation ``|s| <= S``.
    N : int
        Number of unknowns.
    bc : {"auto", "dirichlet", "neumann"}
        ``auto`` uses Dirichlet conditions for ``q >= 1`` (eigenfunctions
        decay like ``exp(-q|s|)``) and natural (Neumann) conditions for
        ``q = 0``, whose eigenfunctions tend to non-zero constants at both
        punctures.
    """
    if int(q) != q or q < 0:
        raise PreconditionError("q must be a non-negative integer")
    if not mu > 0:
        raise PreconditionError("mu must be positive")
    if N < 3 or not S > 0:
        raise PreconditionError("need N >= 3 and S > 0")
    if bc == "auto":
        bc = "neumann" if q == 0 else "dirichlet"
    if bc == "dirichlet":
        h = 2.0 * S / (N + 1)
        s = -S + h * np.arange(1, N + 1)
        cell = np.full(N, h)
        diag = np.full(N, 2.0 / h)
    elif bc == "neumann":
        h = 2.0 * S / (N - 1)
        s = -S + h * np.arange(N)
        cell = np.full(N, h)
        cell[0] = cell[-1] = h / 2
        diag = np.full(N, 2.0 / h)
        diag[0] = diag[-1] = 1.0 / h
    else:
        raise PreconditionError(f"unknown boundary condition {bc!r}")
    diag = diag + q * q * cell
    off = np.full(N - 1, -1.0 / h)
    mass = radial_weight(mu, s) * cell
    if np.any(mass <= 0):
        raise PreconditionError("weight underflows on the grid; reduce S")
    return RadialProblem(int(q), float(mu), float(S), int(N), bc, s, diag, off, mass)


@dataclass
class SpectrumReport:
    """Numerical spectrum below ``upper`` with index counts.

    ``modes[q]`` lists the eigenvalues of mode ``q`` (ascending); each has
    multiplicity 2 for ``q >= 1``.  ``table`` rows are
    ``(q, rank, lambda_numeric, lambda_analytic, abs_err, multiplicity)``
    where the analytic value is ``lambda_{rank, q}``.
    """

    mu: float
    cutoff: float
    null_band: float
    tol: float
    upper: float
    modes: dict = field(default_factory=dict)
    grids: dict = field(default_factory=dict)
    ind_u_numeric: int = 0
    nullity_numeric: int = 0
    table: list = field(default_factory=list)
    missing_oracle: list = field(default_factory=list)

    def max_error(self) -> float:
        return max((row[4] for row in self.table), default=0.0)


def _solve_converged(q, mu, upper, S, N, tol, max_doublings):
    prev = None
    history = []
    for level in range(max_doublings + 1):
        n = N * 2 ** level
        vals = assemble_mode(q, mu, S, n).solve(upper=upper).values
        history.append((n, vals.tolist()))
        if prev is not None and len(prev) == len(vals):
            if len(vals) == 0 or np.max(np.abs(vals - prev)) < tol:
                return vals, n, history
        prev = vals
    raise ToleranceError(f"mode q={q} did not converge under refinement",
                         {"q": q, "mu": mu, "S": S, "history": history})


def numeric_spectrum(mu: float, cutoff: float = 2.0, tol: float = 1e-4,
                     null_band: float = 1e-3, upper: float | None = None,
                     S: float = 12.0, N: int = 2400, max_doublings: int = 3,
                     margin: float = 0.05, max_modes: int = 100000) -> SpectrumReport:
    """Eigenvalues of the pseudometric Laplacian for ``G = z^mu`` below
    ``upper`` (default ``cutoff + null_band``) and the index counts.

    Modes ``q = 0, 1, ...`` are processed until the lowest computed
    eigenvalue of a mode exceeds ``upper + margin`` (eigenvalues increase
    with ``q``).  Each mode is refined by doubling ``N`` until successive
    eigenvalues move by less than ``tol``.

    Counting: ``ind_u_numeric`` counts eigenvalues ``< cutoff - null_band``
    and ``nullity_numeric`` those with ``|lambda - cutoff| <= null_band``,
    both with multiplicity.
    """
    if not mu > 0:
        raise PreconditionError("mu must be positive")
    upper = float(cutoff + null_band if upper is None else max(upper, cutoff + null_band))
    rep = SpectrumReport(float(mu), float(cutoff), float(null_band), float(tol), upper)
    for q in range(max_modes):
        low = assemble_mode(q, mu, S, N).solve(k=1).values[0]
        if low >= upper + margin:
            break
        vals, n_used, _ = _solve_converged(q, mu, upper + margin, S, N, tol, max_doublings)
        vals = vals[vals < upper]
        mult = 2 if q > 0 else 1
        rep.modes[q] = vals.tolist()
        rep.grids[q] = {"S": S, "N": n_used, "bc": "neumann" if q == 0 else "dirichlet"}
        for rank, lam in enumerate(vals):
            exact = lambda_pq(rank, q, mu)
            rep.table.append((q, rank, float(lam), exact, abs(float(lam) - exact), mult))
            if lam < cutoff - null_band:
                rep.ind_u_numeric += mult
            elif abs(lam - cutoff) <= null_band:
                rep.nullity_numeric += mult
    else:
        raise ToleranceError("mode enumeration did not terminate", {"max_modes": max_modes})
    found = {(row[1], row[0]) for row in rep.table}   # (p, q)
    rep.missing_oracle = [(e.p, e.q, e.lam) for e in enumerate_eigenpairs(mu, upper)
                          if (e.p, e.q) not in found]
    return rep
