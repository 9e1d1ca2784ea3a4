"""Intrinsic geometry of CMC-1 surfaces from their holomorphic data.

All conformal factors are with respect to the flat chart metric ``|dz|^2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import PreconditionError, ToleranceError
from .holo import BranchedPoint, HoloFn, power

__all__ = [
    "MetricSample",
    "metric_and_curvature",
    "metric_arrays",
    "pseudometric_factor",
    "pseudometric_array",
    "total_pseudo_area",
    "rayleigh_quotient",
    "log_polar_weight",
    "second_variation_surface",
    "second_variation_pseudo",
]


@dataclass(frozen=True)
class MetricSample:
    """Metric data at one point.

    Attributes
    ----------
    z : complex
    ds2_factor : float
        Conformal factor of the induced metric, ``ds^2 = ds2_factor |dz|^2``.
    K : float
        Gaussian curvature (non-positive).
    Q_coeff : complex
        Hopf differential coefficient, ``Q = Q_coeff dz^2``.
    rho : float
        Conformal factor of the pseudometric ``-K ds^2``.
    umbilic : bool
        True where ``G' = 0``.
    """

    z: complex
    ds2_factor: float
    K: float
    Q_coeff: complex
    rho: float
    umbilic: bool = False


def _rho_from(Gv, dG):
    """``4|G'|^2/(1+|G|^2)^2``, evaluated through ``1/G`` where ``|G| > 1``
    (the expression is invariant under ``G -> 1/G``) to avoid overflow."""
    Gv = np.asarray(Gv, dtype=complex)
    dG = np.asarray(dG, dtype=complex)
    aG = np.abs(Gv)
    big = aG > 1.0
    with np.errstate(divide="ignore", invalid="ignore"):
        inv = np.where(big, 1.0 / np.where(big, Gv, 1.0), Gv)
        Gs = np.where(big, Gv, 1.0)
        dinv = np.where(big, -(dG / Gs) / Gs, dG)
    return 4.0 * np.abs(dinv) ** 2 / (1.0 + np.abs(inv) ** 2) ** 2


def metric_arrays(G: HoloFn, g: HoloFn, f: HoloFn, z, winding=0):
    """Vectorised metric data; returns ``(ds2, K, Q, rho, umbilic)`` arrays."""
    Gv, dG = G.eval(z, winding)
    gv, dg = g.eval(z, winding)
    fv, _ = f.eval(z, winding)
    Gv, dG, dg, fv = map(lambda a: np.asarray(a, dtype=complex), (Gv, dG, dg, fv))
    Qc = -fv * dg
    rho = _rho_from(Gv, dG)
    umb = np.abs(dG) == 0
    with np.errstate(divide="ignore", invalid="ignore"):
        ds2 = (1 + np.abs(Gv) ** 2) ** 2 * np.abs(fv * dg / dG) ** 2
        K = -4.0 * (np.abs(dG) ** 2 / (np.abs(dg) * np.abs(fv) * (1 + np.abs(Gv) ** 2) ** 2)) ** 2
    ds2 = np.where(umb, np.inf, ds2)
    K = np.where(umb, 0.0, K)
    rho = np.where(umb, 0.0, rho)
    return ds2, K, Qc, rho, umb


def metric_and_curvature(G: HoloFn, g: HoloFn, f: HoloFn, at) -> MetricSample:
    """Induced metric, curvature, Hopf differential and pseudometric at ``at``.

    Uses ``ds^2 = (1+|G|^2)^2 |f g'/G'|^2 |dz|^2``,
    ``K = -4 (|G'|^2 / (|g'| |f| (1+|G|^2)^2))^2`` and ``Q = -f g' dz^2``.
    At a zero of ``G'`` the sample is flagged umbilic with ``K = rho = 0``.
    """
    if isinstance(at, BranchedPoint):
        z, w = at.z, at.winding
    else:
        z, w = complex(at), 0
    ds2, K, Qc, rho, umb = metric_arrays(G, g, f, z, w)
    return MetricSample(z, float(ds2), float(K), complex(Qc), float(rho), bool(umb))


def pseudometric_factor(G: HoloFn, at) -> float:
    """Conformal factor ``4|G'|^2/(1+|G|^2)^2`` of the pseudometric."""
    if isinstance(at, BranchedPoint):
        Gv, dG = G.eval(at.z, at.winding)
    else:
        Gv, dG = G.eval(complex(at))
    return float(_rho_from(Gv, dG))


def pseudometric_array(G: HoloFn, z, winding=0):
    Gv, dG = G.eval(z, winding)
    return _rho_from(Gv, dG)


def log_polar_weight(G: HoloFn, s, theta):
    """Pseudometric density in ``(s = ln r, theta)``: ``rho(e^{s+i theta}) e^{2s}``.

    The flat measure ``r dr dtheta = e^{2s} ds dtheta``.  The angle is taken
    on the principal sheet for ``theta`` in ``(-pi, pi]``.
    """
    s = np.asarray(s, dtype=float)
    theta = np.asarray(theta, dtype=float)
    z = np.exp(s + 1j * theta)
    wnd = np.floor((theta + np.pi) / (2 * np.pi)).astype(int)
    wnd = np.where(np.isclose(theta - 2 * np.pi * wnd, -np.pi), wnd - 1, wnd)
    return pseudometric_array(G, z, wnd) * np.exp(2 * s)


def total_pseudo_area(mu: float, quad_tol: float = 1e-10, n_theta: int = 16) -> float:
    """Total area of the pseudometric for ``G = z^mu``.

    Adaptive quadrature in ``s = ln r`` on ``|s| <= S`` with ``S`` chosen so
    that the tail bound ``8 mu exp(-2 mu S)`` is below ``quad_tol``; the
    angular integral uses the periodic trapezoid rule (exact for the
    rotationally invariant integrand, and spectrally accurate in general).
    """
    if not mu > 0:
        raise PreconditionError("mu must be positive")
    G = power(mu)
    S = max(1.0, math.log(8 * mu / (quad_tol * 1e-2)) / (2 * mu))
    theta = -np.pi + 2 * np.pi * (np.arange(n_theta) + 0.5) / n_theta
    dth = 2 * np.pi / n_theta

    def radial(s):
        return float(np.sum(log_polar_weight(G, np.full(n_theta, s), theta)) * dth)

    # split at the peak s = 0 for the adaptive rule
    total, err = 0.0, 0.0
    for a, b in ((-S, 0.0), (0.0, S)):
        v, e = integrate.quad(radial, a, b, epsabs=quad_tol * 1e-2, epsrel=quad_tol * 1e-2,
                              limit=400)
        total += v
        err += e
    if not err <= quad_tol * max(1.0, abs(total)):
        raise ToleranceError("pseudo-area quadrature did not converge", {"error": err})
    return total


def _simpson_weights(n, h):
    if n < 3:
        return np.full(n, h)
    if n % 2 == 1:
        w = np.ones(n)
        w[1:-1:2] = 4
        w[2:-1:2] = 2
        return w * h / 3
    # even count: Simpson on the first n-1 points plus a trapezoid panel
    w = np.zeros(n)
    w[:-1] = _simpson_weights(n - 1, h)
    w[-2] += h / 2
    w[-1] += h / 2
    return w


def rayleigh_quotient(u, mu: float, s, theta=None) -> float:
    """Rayleigh quotient of ``Laplacian - 2`` in the pseudometric of ``G = z^mu``.

    ``Q(u) = (int |grad u|^2 dA_flat - 2 int u^2 rho dA_flat) / int u^2 rho dA_flat``.
    The Dirichlet integral is conformally invariant, so it is evaluated in
    the ``(s, theta)`` chart where it reads ``int (u_s^2 + u_theta^2) ds dtheta``.

    Parameters
    ----------
    u : ndarray, shape (len(s), len(theta)) or (len(s),)
        Grid values; a 1-D array is treated as rotationally symmetric.
    mu : float
    s : ndarray
        Uniform grid in ``s = ln r``.
    theta : ndarray, optional
        Uniform periodic angular grid (endpoint excluded).
    """
    u = np.asarray(u, dtype=float)
    s = np.asarray(s, dtype=float)
    if u.ndim == 1:
        u = u[:, None]
        theta = np.array([0.0])
        dth = 2 * np.pi
    else:
        theta = np.asarray(theta, dtype=float)
        dth = 2 * np.pi / len(theta)
    h = s[1] - s[0]
    ws = _simpson_weights(len(s), h)
    us = np.gradient(u, h, axis=0, edge_order=2)
    if u.shape[1] > 1:
        k = np.fft.fftfreq(u.shape[1], d=1.0 / u.shape[1])
        if u.shape[1] % 2 == 0:
            k[u.shape[1] // 2] = 0.0
        ut = np.real(np.fft.ifft(1j * k * np.fft.fft(u, axis=1), axis=1))
    else:
        ut = np.zeros_like(u)
    W = log_polar_weight(power(mu), s[:, None], theta[None, :])
    dirichlet = np.sum(ws[:, None] * (us ** 2 + ut ** 2)) * dth
    mass = np.sum(ws[:, None] * W * u ** 2) * dth
    if not mass > 0:
        raise PreconditionError("u vanishes on the grid (zero denominator)")
    return float((dirichlet - 2.0 * mass) / mass)


def second_variation_surface(grad_u2, u, K, ds2, dA_flat) -> float:
    """``int (|grad u|^2 + 2 K u^2) dA`` in the induced metric.

    ``grad_u2`` is the flat squared gradient; with ``ds^2 = lambda |dz|^2``
    the induced gradient norm is ``grad_u2/lambda`` and ``dA = lambda dA_flat``.
    """
    return float(np.sum((grad_u2 / ds2 + 2.0 * K * u ** 2) * ds2 * dA_flat))


def second_variation_pseudo(grad_u2, u, rho, dA_flat) -> float:
    """``int |grad u|^2 dA_flat - 2 int rho u^2 dA_flat`` (flat reference metric)."""
    return float(np.sum((grad_u2 - 2.0 * rho * u ** 2) * dA_flat))
