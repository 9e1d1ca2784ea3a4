"""Catalog of explicit CMC-1 surfaces with their holomorphic data.

Each entry bundles Weierstrass data normalised so that ``F(z0) = I``, an
optional closed-form frame in that gauge, the secondary Gauss map and
metadata on the ends (which ideal point each puncture approaches).

Catenoid-type family
--------------------
For real ``mu > 0`` and integer ``m >= 1`` with ``mu != m`` put
``g = z^m`` and ``f = -(q/m) z^{-m-1}`` with ``q = (m^2 - mu^2)/4``.  The
Hopf differential is ``q z^{-2} dz^2`` and the rows
``(z^s, -s z^{s+m}/(s+m))`` with ``s = (-m +- mu)/2`` solve the frame
equation.  With suitable constants the resulting frame ``F_c`` has the
end normal form

    F_c^{-1} = 1/sqrt(mu m) [[(mu+m)/2 z^{(m-mu)/2}, (mu-m)/2 z^{(mu+m)/2}],
                             [(mu-m)/2 z^{-(mu+m)/2}, (mu+m)/2 z^{(mu-m)/2}]],

the secondary Gauss map is exactly ``G = z^mu`` and the monodromy around
0 is diagonal unitary.  ``m = 1`` gives the catenoid cousins, ``mu = 1``
with ``m = 3`` the surface with ``G = z`` and ``Q = 2 z^{-2} dz^2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import PreconditionError, UnknownNameError
from .holo import HoloFn, constant, cpow_array, from_functions, laurent, mobius_compose, power
from .weierstrass import EndGauge, WeierstrassData, inverse_frames

__all__ = [
    "CatalogSurface",
    "EndInfo",
    "horosphere",
    "enneper_cousin",
    "catenoid_type",
    "catenoid_cousin",
    "linear_gauss_example",
    "catenoid_type_inverse_frame",
    "get_surface",
    "SURFACES",
]


@dataclass(frozen=True)
class EndInfo:
    """An end of a catalog surface.

    ``puncture`` is the parameter value (``inf`` for the point at infinity),
    ``ideal_point`` the limit in the upper half-space model (a boundary point
    ``(x1, x2, 0)`` or ``"inf"``), ``mu``/``m`` the end invariants.
    """

    puncture: complex
    ideal_point: object
    mu: float
    m: int


@dataclass(frozen=True)
class CatalogSurface:
    name: str
    data: WeierstrassData
    G: HoloFn | None = None
    closed_frame: Callable | None = None
    ends: tuple = ()
    params: dict = field(default_factory=dict)
    rotational: bool = False
    end_gauge: EndGauge | None = None


# ---------------------------------------------------------------------------


def horosphere(placed: bool = False) -> CatalogSurface:
    """Horosphere: ``f = g = 1``; ``F = [[1+z, -z], [z, 1-z]]``.

    With ``placed=True`` an isometry moves it to the horizontal plane
    ``x3 = 1`` of the upper half-space.
    """
    placement = None
    if placed:
        X = np.array([[0, 1], [-1, 1]], dtype=complex)        # ideal point 1 -> inf
        D = np.diag([math.sqrt(2.0), 1 / math.sqrt(2.0)]).astype(complex)  # height 1/2 -> 1
        placement = D @ X
    data = WeierstrassData(constant(1.0), constant(1.0), 1.0, 0j, (), placement,
                           name="horosphere")

    def closed(z):
        z = np.asarray(z, dtype=complex)
        F = np.empty(z.shape + (2, 2), complex)
        F[..., 0, 0] = 1 + z
        F[..., 0, 1] = -z
        F[..., 1, 0] = z
        F[..., 1, 1] = 1 - z
        return F

    return CatalogSurface("horosphere", data, constant(1.0), closed, (), {"placed": placed})


def enneper_cousin(k: int = 1) -> CatalogSurface:
    """Enneper cousin ``f = 1``, ``g = z^k`` on the plane.

    For ``k = 1`` the frame is
    ``[[cosh z, sinh z - z cosh z], [sinh z, cosh z - z sinh z]]`` and
    ``G = tanh z``.
    """
    if int(k) != k or k < 1:
        raise PreconditionError("k must be a positive integer")
    data = WeierstrassData(constant(1.0), laurent({int(k): 1.0}), 1.0, 0j, (),
                           name=f"enneper-cousin-{k}")
    closed = G = None
    if k == 1:
        def closed(z):
            z = np.asarray(z, dtype=complex)
            ch, sh = np.cosh(z), np.sinh(z)
            F = np.empty(z.shape + (2, 2), complex)
            F[..., 0, 0] = ch
            F[..., 0, 1] = sh - z * ch
            F[..., 1, 0] = sh
            F[..., 1, 1] = ch - z * sh
            return F

        G = from_functions(np.tanh, lambda z: 1.0 / np.cosh(z) ** 2, name="tanh")
    return CatalogSurface(data.name, data, G, closed, (), {"k": int(k)})


def catenoid_type_inverse_frame(mu: float, m: int, z, winding=0):
    """End normal form ``F_c^{-1}(z)`` of the catenoid-type family."""
    z = np.asarray(z, dtype=complex)
    e = lambda p: cpow_array(z, winding, p)  # noqa: E731
    k = 1.0 / math.sqrt(mu * m)
    out = np.empty(z.shape + (2, 2), complex)
    out[..., 0, 0] = k * (mu + m) / 2 * e((m - mu) / 2)
    out[..., 0, 1] = k * (mu - m) / 2 * e((mu + m) / 2)
    out[..., 1, 0] = k * (mu - m) / 2 * e(-(mu + m) / 2)
    out[..., 1, 1] = k * (mu + m) / 2 * e((mu - m) / 2)
    return out


def catenoid_type(mu: float, m: int = 1, z0: complex = 1.0, name: str | None = None
                  ) -> CatalogSurface:
    """Surface with ``G = const * z^mu`` and one catenoid-type end of
    multiplicity ``m`` at each of 0 and infinity (see module docstring).

    The data are gauged so that ``F(z0) = I``; the placement isometry puts
    the surface in its normal position (ends at the origin and at infinity,
    rotation axis the ``x3``-axis when ``m = 1``).
    """
    mu = float(mu)
    if not mu > 0:
        raise PreconditionError("mu must be positive")
    if int(m) != m or m < 1:
        raise PreconditionError("m must be a positive integer")
    m = int(m)
    if abs(mu - m) < 1e-12:
        raise PreconditionError("mu = m is excluded")
    z0 = complex(z0)
    q = (m * m - mu * mu) / 4.0

    def Fc(z, winding=0):
        return inverse_frames(catenoid_type_inverse_frame(mu, m, z, winding))

    M0 = Fc(z0)                  # frame in the normal gauge at the base point
    P = inverse_frames(M0)       # F = F_c M0^{-1};  Phi = M0^{-1} Phi' M0^{-*}
    p_, q_, r_, s_ = M0[0, 0], M0[0, 1], M0[1, 0], M0[1, 1]
    # gauge: g' = (p g + q)/(r g + s), f' = f (r g + s)^2 with g = z^m
    a = -q / m
    f = laurent({-m - 1 + 2 * m: a * r_ ** 2, -1: 2 * a * r_ * s_, -m - 1: a * s_ ** 2},
                name="f")
    g = mobius_compose(M0, laurent({m: 1.0}))
    data = WeierstrassData(f, g, 1.0, z0, (0j,), P,
                           name=name or f"catenoid-type(mu={mu:g},m={m})")
    G = _catenoid_G(mu, m)

    def closed(z, winding=0):
        return Fc(z, winding) @ P

    ends = (EndInfo(0j, (0.0, 0.0, 0.0), mu, m), EndInfo(complex("inf"), "inf", mu, m))
    # F M0 = F_c solves the frame equation of g = z^m, f = a z^{-m-1}
    end_data = WeierstrassData(laurent({-m - 1: a}, name="f"), laurent({m: 1.0}, name="g"),
                               1.0, z0, (0j,))
    gauge = EndGauge(end_data, M0, m / 2.0)
    return CatalogSurface(data.name, data, G, closed, ends, {"mu": mu, "m": m},
                          rotational=(m == 1), end_gauge=gauge)


def _catenoid_G(mu, m) -> HoloFn:
    """Secondary Gauss map of the gauged catenoid-type frame.

    Right multiplication of the frame by a constant matrix leaves ``G``
    unchanged, so it can be read off the normal-form frame ``F_c``.
    """
    # F_c = inverse of the normal form: F_c = [[D, -B], [-C, A]] (cofactors)
    # dF_c = F_c (c f) [[g, -g^2],[1, -g]] dz; first column = F_c (g, 1)^T f.
    # Row 1: D g - B = k[(mu+m)/2 z^{(mu-m)/2} z^m - (mu-m)/2 z^{(mu+m)/2}]
    #       = k z^{(mu+m)/2} [(mu+m)/2 - (mu-m)/2] = k m z^{(mu+m)/2}
    # Row 2: -C g + A = k[-(mu-m)/2 z^{-(mu+m)/2} z^m + (mu+m)/2 z^{(m-mu)/2}]
    #       = k z^{(m-mu)/2} [-(mu-m)/2 + (mu+m)/2] = k m z^{(m-mu)/2}
    # hence G = z^mu exactly.
    return power(mu, 1.0)


def catenoid_cousin(mu: float, z0: complex = 1.0) -> CatalogSurface:
    """Catenoid cousin with ``G = z^mu`` (embedded iff ``mu < 1``)."""
    s = catenoid_type(mu, 1, z0, name=f"catenoid-cousin(mu={float(mu):g})")
    return s


def linear_gauss_example(m: int = 3, z0: complex = 1.0) -> CatalogSurface:
    """Surface with ``G = z`` and ``Q = ((m^2-1)/4) z^{-2} dz^2``; ``m = 3``
    gives ``g = z^3``, ``f = -(2/3) z^{-4}``, ``Q = 2 z^{-2} dz^2``."""
    return catenoid_type(1.0, m, z0, name=f"linear-gauss(m={m})")


SURFACES = {
    "horosphere": lambda **kw: horosphere(bool(kw.get("placed", False))),
    "enneper-cousin": lambda **kw: enneper_cousin(int(kw.get("k", 1))),
    "catenoid-cousin": lambda **kw: catenoid_cousin(float(kw.get("mu", 0.5))),
    "linear-gauss-cousin": lambda **kw: linear_gauss_example(int(kw.get("m", 3))),
    "catenoid-type": lambda **kw: catenoid_type(float(kw.get("mu", 0.5)), int(kw.get("m", 1))),
}


def get_surface(name: str, **params) -> CatalogSurface:
    """Look up a frame-level catalog surface by name."""
    try:
        ctor = SURFACES[name]
    except KeyError:
        raise UnknownNameError(f"unknown surface {name!r}; known: {sorted(SURFACES)}") from None
    return ctor(**params)
