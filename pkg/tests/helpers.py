"""Shared test utilities: exact derivatives of the closed-form eigenfunctions.

``phi_{p,q}(t) = (1-t^2)^{a} P(t)`` with ``a = q/(2 mu)`` and ``P`` a
polynomial of degree ``p``.  ``P`` is recovered by exact interpolation of
the library values at Chebyshev nodes, so derivatives are analytic and the
checks below are independent of any finite-difference error.
"""
import numpy as np
from numpy.polynomial import Polynomial

from hypcmc.oracle import lambda_pq, phi_pq
from hypcmc.spectrum import radial_weight


def phi_with_derivatives(p, q, mu, t):
    a = q / (2 * mu)
    nodes = np.cos(np.pi * (np.arange(p + 1) + 0.5) / (p + 1))
    P = Polynomial.fit(nodes, phi_pq(p, q, mu, nodes) / (1 - nodes ** 2) ** a, p)
    P1, P2 = P.deriv(), P.deriv(2)
    w = 1 - t * t
    y = w ** a * P(t)
    y1 = w ** a * P1(t) - 2 * a * t * w ** (a - 1) * P(t)
    y2 = (w ** a * P2(t) - 4 * a * t * w ** (a - 1) * P1(t)
          + (-2 * a * w ** (a - 1) + 4 * a * (a - 1) * t * t * w ** (a - 2)) * P(t))
    return y, y1, y2


def legendre_residual(p, q, mu, t):
    """Residual of ``(1-t^2) y'' - 2t y' + (lambda - nu^2/(1-t^2)) y`` and ``y``."""
    nu = q / mu
    y, y1, y2 = phi_with_derivatives(p, q, mu, t)
    w = 1 - t * t
    return w * y2 - 2 * t * y1 + (lambda_pq(p, q, mu) - nu * nu / w) * y, y


def radial_residual(p, q, mu, r):
    """Residual of ``-v_ss + q^2 v - lambda w(s) v`` with ``s = ln r`` and ``v``.

    With ``t = tanh(mu s)``: ``v_s = mu (1-t^2) phi'`` and
    ``v_ss = mu^2 (1-t^2) ((1-t^2) phi'' - 2 t phi')``.
    """
    s = np.log(r)
    t = np.tanh(mu * s)
    y, y1, y2 = phi_with_derivatives(p, q, mu, t)
    w = 1 - t * t
    vss = mu * mu * w * (w * y2 - 2 * t * y1)
    return -vss + q * q * y - lambda_pq(p, q, mu) * radial_weight(mu, s) * y, y
