"""Closed-form spectrum of the pseudometric Laplacian for ``G = z^mu``.

On the sphere-like pseudometric ``4 mu^2 r^{2mu-2}/(1+r^{2mu})^2 |dz|^2`` the
Laplacian separates in polar coordinates.  With ``t = (r^{2mu}-1)/(r^{2mu}+1)``
the radial equation becomes an associated-Legendre-type equation with order
``q/mu``, whose bounded solutions are

    phi_{p,q}(t) = (1-t^2)^{q/(2mu)} F(p + 2q/mu + 1, -p; q/mu + 1; (1-t)/2)

with eigenvalue ``lambda_{p,q} = (p + q/mu)(1 + p + q/mu)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError
from .holo import hypergeom_terminating

__all__ = [
    "GaussMapZmu",
    "EigenPair",
    "lambda_pq",
    "phi_pq",
    "radial_eigenfunction",
    "eigenfunction",
    "enumerate_eigenpairs",
    "analytic_index",
    "AnalyticIndex",
    "greatest_integer_below",
]


@dataclass(frozen=True)
class GaussMapZmu:
    mu: float

    def __post_init__(self):
        if not self.mu > 0:
            raise PreconditionError("mu must be positive")


@dataclass(frozen=True)
class EigenPair:
    """Eigenvalue ``lambda`` of mode ``(p, q)``; multiplicity 2 for ``q > 0``
    (the ``cos`` and ``sin`` eigenfunctions)."""

    p: int
    q: int
    lam: float
    multiplicity: int


@dataclass(frozen=True)
class AnalyticIndex:
    ind_u: int
    nullity: int
    eigen_list: tuple


def _check_pq(p, q):
    if int(p) != p or int(q) != q or p < 0 or q < 0:
        raise PreconditionError("p and q must be non-negative integers")


def lambda_pq(p: int, q: int, mu: float) -> float:
    """``(p + q/mu)(1 + p + q/mu)``."""
    _check_pq(p, q)
    if not mu > 0:
        raise PreconditionError("mu must be positive")
    a = p + q / mu
    return a * (1.0 + a)


def phi_pq(p: int, q: int, mu: float, t):
    """Legendre-variable eigenfunction ``phi_{p,q}(t)`` on ``[-1, 1]``."""
    _check_pq(p, q)
    t = np.asarray(t, dtype=float)
    nu = q / mu
    x = (1.0 - t) / 2.0
    F = hypergeom_terminating(p + 2 * nu + 1, int(p), nu + 1, x)
    base = np.clip(1.0 - t * t, 0.0, None)
    pref = base ** (nu / 2.0) if q > 0 else np.ones_like(base)
    return pref * F


def _t_of_r(r, mu):
    """``(r^{2mu}-1)/(r^{2mu}+1) = tanh(mu ln r)``."""
    return np.tanh(mu * np.log(r))


def radial_eigenfunction(p: int, q: int, mu: float, r):
    """``v_{p,q}(r) = phi_{p,q}(t(r))``; ``r = 0`` is allowed (limit ``t = -1``)."""
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise PreconditionError("r must be non-negative")
    with np.errstate(divide="ignore"):
        t = np.where(r == 0, -1.0, _t_of_r(np.where(r == 0, 1.0, r), mu))
    out = phi_pq(p, q, mu, t)
    return out if np.ndim(out) else float(out)


def eigenfunction(p: int, q: int, mu: float, r, theta, parity: str = "cos"):
    """``v_{p,q}(r) cos(q theta)`` or ``v_{p,q}(r) sin(q theta)``."""
    if parity not in ("cos", "sin"):
        raise PreconditionError("parity must be 'cos' or 'sin'")
    if parity == "sin" and q == 0:
        raise PreconditionError("the sin eigenfunction needs q > 0")
    ang = np.cos(q * np.asarray(theta, float)) if parity == "cos" else np.sin(q * np.asarray(theta, float))
    out = radial_eigenfunction(p, q, mu, r) * ang
    return out if np.ndim(out) else float(out)


def enumerate_eigenpairs(mu: float, bound: float, inclusive: bool = False):
    """All ``EigenPair`` with ``lambda < bound`` (``<=`` if inclusive),
    ordered by ``(q, p)``; uses that lambda increases in ``p`` and ``q``."""
    if not mu > 0:
        raise PreconditionError("mu must be positive")
    below = (lambda v: v <= bound) if inclusive else (lambda v: v < bound)
    out = []
    q = 0
    while below(lambda_pq(0, q, mu)):
        p = 0
        while below(lambda_pq(p, q, mu)):
            out.append(EigenPair(p, q, lambda_pq(p, q, mu), 2 if q > 0 else 1))
            p += 1
        q += 1
    return out


def greatest_integer_below(mu: float) -> int:
    """``[mu]``: greatest integer strictly less than ``mu``."""
    f = math.floor(mu)
    return int(f - 1) if f == mu else int(f)


def analytic_index(mu: float, null_band: float = 0.0) -> AnalyticIndex:
    """Index (count of ``lambda < 2`` with multiplicity) and nullity (count of
    ``lambda = 2``).  Equality with 2 is decided exactly:
    ``lambda_{p,q} = 2`` iff ``p + q/mu = 1``, i.e. ``(p, q) = (1, 0)`` or
    ``p = 0, q = mu``.  ``eigen_list`` holds the pairs below ``2 + null_band``.
    """
    pairs = enumerate_eigenpairs(mu, 2.0 + max(null_band, 0.0), inclusive=True)
    ind = 0
    nul = 0
    for e in pairs:
        exact_two = (e.p == 1 and e.q == 0) or (e.p == 0 and e.q > 0 and e.q == mu)
        if exact_two:
            nul += e.multiplicity
        elif e.lam < 2.0:
            ind += e.multiplicity
    listed = tuple(e for e in pairs if e.lam < 2.0 + null_band or
                   (e.p == 1 and e.q == 0) or (e.p == 0 and e.q == mu))
    return AnalyticIndex(ind, nul, listed)
