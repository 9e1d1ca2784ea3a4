"""Regular ends of CMC-1 surfaces: classification by indicial equations,
embeddedness and leading-order asymptotics.

An end at ``z = 0`` is described by ``G ~ z^mu`` (``mu > 0``), the
holomorphic one-form ``omega ~ z^nu dz`` and the leading Hopf coefficient
``q_{-2}``.  The Hopf differential has order ``mu + nu - 1``; the end is
regular iff this is at least ``-2``.  The root gaps of the indicial
equations

    t^2 - (nu + 1) t - q_{-2} = 0,      t^2 - (2 mu + nu + 1) t - q_{-2} = 0

are ``m1 = sqrt((nu+1)^2 + 4 q_{-2})`` and
``m2 = sqrt((2 mu + nu + 1)^2 + 4 q_{-2})``; ``m = m1`` is the winding of the
end, which is embedded iff ``m = 1``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import (DegenerateError, IllDefinedEndError, NotRegularEndError,
                     PreconditionError)
from .holo import cpow_array

__all__ = [
    "EndData",
    "classify_end",
    "indicial_roots",
    "asymptotic_graph",
    "AsymptoticPoint",
    "frame_asymptote",
    "catenoid_graph_constant",
]

CATENOID = "catenoid_cousin_type"
HOROSPHERE = "horosphere_type"


@dataclass(frozen=True)
class EndData:
    mu: float
    nu: float
    q_minus2: complex
    m1: float
    m2: float
    m: int
    end_type: str
    ord_Q: int
    embedded: bool
    regular: bool = True


def _near_int(x, tol=1e-9):
    return abs(x - round(x)) <= tol


def indicial_roots(a: float, q: complex):
    """Roots of ``t^2 - a t - q = 0``."""
    d = cmath.sqrt(a * a + 4 * q)
    return (a + d) / 2, (a - d) / 2


def classify_end(mu: float, nu: float, q_minus2: complex = 0.0, int_tol: float = 1e-6
                 ) -> EndData:
    """Classify a regular end from ``(mu, nu, q_{-2})``.

    Raises
    ------
    NotRegularEndError
        If ``ord Q = mu + nu - 1 < -2``.
    IllDefinedEndError
        If ``m1`` or ``m2`` is not a positive integer (within ``int_tol``),
        or the data are inconsistent.
    """
    mu, nu, q = float(mu), float(nu), complex(q_minus2)
    if not mu > 0:
        raise PreconditionError("mu must be positive (replace G by 1/G)")
    if not _near_int(mu + nu):
        raise PreconditionError("mu + nu must be an integer")
    if nu > -1 + 1e-12:
        raise PreconditionError("nu <= -1 is required for a complete end")
    ordQ = int(round(mu + nu - 1))
    if ordQ < -2:
        raise NotRegularEndError(f"ord Q = {ordQ} < -2: end is not regular")
    if ordQ == -2:
        if q == 0:
            raise IllDefinedEndError("ord Q = -2 requires q_{-2} != 0")
        m1 = cmath.sqrt((nu + 1) ** 2 + 4 * q)
        m2 = cmath.sqrt((2 * mu + nu + 1) ** 2 + 4 * q)
        kind = CATENOID
    else:
        if q != 0:
            raise IllDefinedEndError("q_{-2} must vanish when ord Q >= -1")
        m1 = complex(-(nu + 1))
        m2 = complex(2 * mu + nu + 1)
        kind = HOROSPHERE
    bad = {}
    for name, val in (("m1", m1), ("m2", m2)):
        near = max(1, int(round(val.real)))
        if abs(val.imag) > int_tol or abs(val.real - round(val.real)) > int_tol or val.real < 0.5:
            bad[name] = {"value": [val.real, val.imag], "nearest": near}
    if bad:
        raise IllDefinedEndError(
            "; ".join(f"{k} = {v['value'][0]:.12g}{v['value'][1]:+.3g}i is not a positive integer "
                      f"(nearest {v['nearest']})" for k, v in bad.items()), bad)
    m1r, m2r = float(m1.real), float(m2.real)
    m = int(round(m1r))
    return EndData(mu, nu, q, m1r, m2r, m, kind, ordQ, m == 1)


def catenoid_graph_constant(mu: float, m: int) -> float:
    """Height constant ``c`` of the normalised graph
    ``(Re z^m, Im z^m, c |z|^{mu+m})`` of a catenoid-type end.

    The leading form is ``a (Re z^m, Im z^m, b |z|^{mu+m})`` with
    ``a = (mu+m)/(mu-m)`` and ``b = 4 mu m/(mu^2-m^2)``.  A rotation about
    the vertical axis absorbs the sign of ``a`` and the coordinate change
    ``zeta = |a|^{1/m} z`` gives ``c = a b |a|^{-(mu+m)/m}``.
    """
    if abs(mu - m) < 1e-12:
        raise DegenerateError("mu = m is excluded for catenoid-type ends")
    a = (mu + m) / (mu - m)
    b = 4 * mu * m / (mu * mu - m * m)
    return a * b * abs(a) ** (-(mu + m) / m)


@dataclass(frozen=True)
class AsymptoticPoint:
    """Leading-order point of an end and the exponent ``e`` of the relative
    correction ``1 + O(|z|^e)``.  ``raw`` is the pre-normalisation point in
    the original coordinate (catenoid type) or equals ``point``."""

    point: np.ndarray
    exponent: float
    constant: float
    raw: np.ndarray


def asymptotic_graph(end: EndData, z, winding=0) -> AsymptoticPoint:
    """Graph form ``(Re z^m, Im z^m, c |z|^{mu+m})`` of the end near ``z = 0``."""
    z = complex(z)
    mu, m = end.mu, end.m
    zm = z ** m
    expo = min(1.0, 2.0 * mu)
    if end.end_type == CATENOID:
        c = catenoid_graph_constant(mu, m)
        a = (mu + m) / (mu - m)
        b = 4 * mu * m / (mu * mu - m * m)
        pt = np.array([zm.real, zm.imag, c * abs(z) ** (mu + m)])
        raw = a * np.array([zm.real, zm.imag, b * abs(z) ** (mu + m)])
        return AsymptoticPoint(pt, expo, c, raw)
    mh = -end.nu - 1
    zh = z ** int(round(mh))
    pt = np.array([zh.real, zh.imag, abs(z) ** (2 * mh)])
    return AsymptoticPoint(pt, expo, 1.0, pt.copy())


def frame_asymptote(end: EndData, z, winding=0) -> np.ndarray:
    """Leading order of ``F^{-1}`` at the end (normal form)."""
    z = complex(z)
    mu, m = end.mu, float(end.m)
    if end.end_type == CATENOID:
        if abs(mu - m) < 1e-12:
            raise DegenerateError("mu = m is excluded for catenoid-type ends")
        p = lambda e: complex(cpow_array(z, winding, e))  # noqa: E731
        k = 1.0 / math.sqrt(mu * m)
        return k * np.array([[(mu + m) / 2 * p((m - mu) / 2), (mu - m) / 2 * p((mu + m) / 2)],
                             [(mu - m) / 2 * p(-(mu + m) / 2), (mu + m) / 2 * p((mu - m) / 2)]])
    return np.array([[1.0, 0.0], [complex(cpow_array(z, winding, end.nu + 1)), 1.0]],
                    dtype=complex)
