"""Weierstrass-type representations: minimal surfaces in R^3 and CMC-1
surfaces in hyperbolic space via the null holomorphic SL(2, C) frame.

The frame solves ``dF = F . c [[g, -g^2], [1, -g]] f dz`` with ``F(z0) = I``
and the surface is ``Phi = (1/c) F^{-1} (F^{-1})^*`` in the Hermitian model.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (DegenerateError, DomainError, IntegrationError,
                     PreconditionError, ToleranceError)
from .holo import BranchedPoint, HoloFn, Path

__all__ = [
    "WeierstrassData",
    "Frame",
    "SU2Matrix",
    "AmbientPoint",
    "MonodromyResult",
    "POINT_AT_INFINITY",
    "minimal_immersion",
    "integrate_frame",
    "EndGauge",
    "integrate_segments",
    "immerse",
    "inverse_frames",
    "upper_half_from_inverse",
    "hermitian_from_upper",
    "upper_to_ball",
    "ball_to_upper",
    "secondary_gauss",
    "monodromy",
    "su2_action",
    "is_infinity",
    "frame_generator",
]

MODELS = ("hermitian", "upper_half", "poincare_ball")
POINT_AT_INFINITY = complex("inf")


@dataclass(frozen=True)
class WeierstrassData:
    """Holomorphic data ``(f, g)`` of a CMC-c surface.

    Attributes
    ----------
    f, g : HoloFn
    c : float
        Mean curvature (hyperbolic space of curvature ``-c^2``).
    z0 : complex
        Base point where ``F = I``.
    punctures : tuple of complex
    placement : ndarray or None
        Optional ``SL(2, C)`` matrix ``P`` acting as the isometry
        ``Phi -> P Phi P^*``; catalog entries use it to place a surface.
    name : str
    """

    f: HoloFn
    g: HoloFn
    c: float = 1.0
    z0: complex = 0j
    punctures: tuple = ()
    placement: np.ndarray | None = None
    name: str = "data"

    def __post_init__(self):
        object.__setattr__(self, "z0", complex(self.z0))
        object.__setattr__(self, "punctures", tuple(complex(p) for p in self.punctures))
        if not self.c > 0:
            raise PreconditionError("mean curvature c must be positive")
        if any(self.z0 == p for p in self.punctures):
            raise DomainError("base point is a puncture")
        if self.placement is not None:
            P = np.asarray(self.placement, dtype=complex)
            if P.shape != (2, 2) or abs(np.linalg.det(P) - 1) > 1e-10:
                raise PreconditionError("placement must be a 2x2 matrix of determinant 1")
            object.__setattr__(self, "placement", P)


@dataclass(frozen=True)
class Frame:
    """Value of the frame at the end of ``path``."""

    F: np.ndarray
    det_drift: float
    path: Path

    @property
    def z(self) -> complex:
        return self.path.end


@dataclass(frozen=True)
class SU2Matrix:
    """``[[b11, b12], [-conj(b12), conj(b11)]]`` with unit row norm."""

    b11: complex
    b12: complex

    def __post_init__(self):
        n = abs(self.b11) ** 2 + abs(self.b12) ** 2
        if abs(n - 1.0) > 1e-10:
            raise PreconditionError(f"|b11|^2 + |b12|^2 = {n} is not 1")

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.b11, self.b12],
                         [-np.conj(self.b12), np.conj(self.b11)]], dtype=complex)

    @classmethod
    def random(cls, rng: np.random.Generator) -> "SU2Matrix":
        v = rng.normal(size=4)
        v /= np.linalg.norm(v)
        return cls(complex(v[0], v[1]), complex(v[2], v[3]))

    @classmethod
    def from_matrix(cls, B) -> "SU2Matrix":
        B = np.asarray(B, dtype=complex)
        return cls(complex(B[0, 0]), complex(B[0, 1]))


@dataclass(frozen=True)
class AmbientPoint:
    """Point of hyperbolic space in one of three models.

    ``coords`` is a 2x2 Hermitian matrix for ``hermitian`` and a 3-vector
    otherwise.
    """

    model: str
    coords: np.ndarray
    c: float = 1.0

    def __post_init__(self):
        if self.model not in MODELS:
            raise PreconditionError(f"unknown model {self.model!r}")


@dataclass(frozen=True)
class MonodromyResult:
    B: np.ndarray
    in_su2: bool
    defect: float


# ---------------------------------------------------------------------------
# Minimal surfaces in R^3
# ---------------------------------------------------------------------------


def _gl_nodes(n):
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (x + 1.0), 0.5 * w


def minimal_immersion(data: WeierstrassData, path: Path, tol: float = 1e-9,
                      max_refine: int = 16) -> np.ndarray:
    """Real part of the integral of ``((1-g^2) f, i(1+g^2) f, 2 g f) dz``.

    Composite 8-point Gauss-Legendre quadrature on each path segment, with
    every segment split in half until two successive refinements agree to
    ``tol``.
    """
    if path.start != data.z0:
        raise PreconditionError("path must start at the base point")
    pts = path.points
    if len(pts) == 1:
        return np.zeros(3)
    path.check_punctures(data.punctures)
    t, w = _gl_nodes(8)

    def integrate(nsub):
        total = np.zeros(3, complex)
        for a, b in zip(pts[:-1], pts[1:]):
            edges = a + (b - a) * np.linspace(0, 1, nsub + 1)
            zz = (edges[:-1, None] + (edges[1:] - edges[:-1])[:, None] * t[None, :]).ravel()
            jac = np.repeat((edges[1:] - edges[:-1]), len(t)) * np.tile(w, nsub)
            f = data.f.value(zz)
            g = data.g.value(zz)
            vec = np.stack([(1 - g ** 2) * f, 1j * (1 + g ** 2) * f, 2 * g * f])
            if not np.all(np.isfinite(vec)):
                raise IntegrationError("integrand not finite along the path (pole?)")
            total += vec @ jac
        return total.real

    prev = integrate(1)
    nsub = 1
    for _ in range(max_refine):
        nsub *= 2
        cur = integrate(nsub)
        if np.max(np.abs(cur - prev)) < tol * max(1.0, np.max(np.abs(cur))):
            return cur
        prev = cur
    raise ToleranceError("minimal_immersion quadrature did not converge",
                         {"subdivisions": nsub})


# ---------------------------------------------------------------------------
# Frame ODE
# ---------------------------------------------------------------------------


def frame_generator(data: WeierstrassData, z, winding=0):
    """``c f [[g, -g^2], [1, -g]]`` evaluated at ``z`` (array, shape (..., 2, 2))."""
    z = np.asarray(z, dtype=complex)
    f = data.f.value(z, winding)
    g = data.g.value(z, winding)
    out = np.empty(z.shape + (2, 2), dtype=complex)
    cf = data.c * f
    out[..., 0, 0] = cf * g
    out[..., 0, 1] = -cf * g * g
    out[..., 1, 0] = cf
    out[..., 1, 1] = -cf * g
    return out


def _rhs(data, za, dz, t, F, gauge=None):
    z = za + t * dz
    A = frame_generator(data, z)
    if not np.all(np.isfinite(A)):
        raise IntegrationError("frame generator not finite (step through a pole)")
    if gauge is not None:
        # F~ = F diag(z^a, z^-a):  F~' = F~ (D^-1 A D + diag(a/z, -a/z))
        a, log_za = gauge
        e2 = np.exp(2 * a * (log_za + np.log(z / za)))
        A = A.copy()
        A[:, 0, 1] /= e2
        A[:, 1, 0] *= e2
        A[:, 0, 0] += a / z
        A[:, 1, 1] -= a / z
    return F @ (A * dz[:, None, None])


def _rk4(data, za, dz, t, h, F, gauge=None):
    k1 = _rhs(data, za, dz, t, F, gauge)
    k2 = _rhs(data, za, dz, t + h / 2, F + (h / 2) * k1, gauge)
    k3 = _rhs(data, za, dz, t + h / 2, F + (h / 2) * k2, gauge)
    k4 = _rhs(data, za, dz, t + h, F + h * k3, gauge)
    return F + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)


def _renormalize(F):
    det = F[:, 0, 0] * F[:, 1, 1] - F[:, 0, 1] * F[:, 1, 0]
    dev = np.abs(det - 1.0)
    fix = dev > 1e-13
    if np.any(fix):
        F = F.copy()
        F[fix] = F[fix] / np.sqrt(det[fix])[:, None, None]
    return F, float(np.max(dev)) if len(dev) else 0.0


def integrate_segments(data: WeierstrassData, za, zb, F0, tol: float = 1e-12,
                       fixed_steps: int | None = None, max_steps: int = 200000,
                       gauge: float = 0.0, log_za=None):
    """Integrate the frame ODE along straight segments ``za -> zb`` in batch.

    All segments share the parameter step in ``t in [0, 1]``; the step is
    controlled by the worst local error estimate in the batch.

    Parameters
    ----------
    za, zb : array_like of complex, shape (B,)
    F0 : ndarray, shape (B, 2, 2)
        Frames at ``za``.
    tol : float
        Target local error per step (step doubling + Richardson estimate).
    fixed_steps : int, optional
        If given, plain RK4 with this many equal steps (no extrapolation),
        used for convergence-order checks.
    gauge : float
        Exponent ``a`` of the diagonal gauge ``F~ = F diag(z^a, z^-a)``.  When
        non-zero, ``F0`` and the result are gauged frames and ``log_za``
        (shape (B,)) fixes the branch of ``log z`` at the segment starts.

    Returns
    -------
    F : ndarray, shape (B, 2, 2)
    drift : float
        Accumulated ``|det F - 1|`` removed by renormalisation.
    """
    za = np.atleast_1d(np.asarray(za, dtype=complex))
    dz = np.atleast_1d(np.asarray(zb, dtype=complex)) - za
    F = np.array(F0, dtype=complex).reshape(len(za), 2, 2)
    drift = 0.0
    if len(za) == 0 or np.all(dz == 0):
        return F, drift
    gg = None
    if gauge != 0.0:
        if log_za is None:
            log_za = np.log(za)
        if np.any(za == 0) or np.any(za + dz == 0):
            raise DomainError("gauged integration cannot touch z = 0")
        gg = (float(gauge), np.atleast_1d(np.asarray(log_za, dtype=complex)))
    if fixed_steps is not None:
        h = 1.0 / fixed_steps
        for i in range(fixed_steps):
            F = _rk4(data, za, dz, i * h, h, F, gg)
            F, d = _renormalize(F)
            drift += d
        return F, drift

    t = 0.0
    h = 1.0 / 8
    steps = 0
    while t < 1.0:
        if steps > max_steps:
            raise ToleranceError("frame integration exceeded the step budget",
                                 {"t": t, "h": h})
        h = min(h, 1.0 - t)
        full = _rk4(data, za, dz, t, h, F, gg)
        half = _rk4(data, za, dz, t, h / 2, F, gg)
        half = _rk4(data, za, dz, t + h / 2, h / 2, half, gg)
        scale = np.maximum(1.0, np.max(np.abs(half), axis=(1, 2)))
        err = float(np.max(np.max(np.abs(half - full), axis=(1, 2)) / scale) / 15.0)
        if not math.isfinite(err):
            raise IntegrationError("non-finite frame values (pole on the path?)")
        if err <= tol or h < 1e-14:
            if h < 1e-14 and err > tol:
                raise ToleranceError("step size underflow in frame integration",
                                     {"t": t, "err": err})
            F = half + (half - full) / 15.0
            F, d = _renormalize(F)
            drift += d
            t = 1.0 if h >= 1.0 - t else t + h
            steps += 1
        fac = 0.9 * (tol / err) ** 0.2 if err > 0 else 4.0
        h = h * min(4.0, max(0.2, fac))
    return F, drift


@dataclass(frozen=True)
class EndGauge:
    """Well-conditioned formulation of the frame equation near ``z = 0``.

    ``data`` are Weierstrass data with ``g ~ z^m`` and ``f ~ z^{-m-1}`` at
    ``z = 0`` whose frame ``F_e`` (normalised by ``F_e(z0) = matrix``) is
    related to the frame of the surface by ``F = F_e matrix^{-1}``.  The
    generator of ``F_e`` has an entry growing like ``z^{-m-1}``; the gauged
    frame ``F_e diag(z^a, z^-a)`` with ``a = exponent = m/2`` has a generator
    of size ``O(1/z)``, so paths running deep into the end need only
    logarithmically many steps.
    """

    data: "WeierstrassData"
    matrix: np.ndarray
    exponent: float


def integrate_frame(data: WeierstrassData, path: Path, tol: float = 1e-12,
                    fixed_steps: int | None = None, gauge: EndGauge | None = None) -> Frame:
    """Frame ``F`` at the end of ``path`` (which must start at ``data.z0``).

    ``fixed_steps`` selects plain RK4 with that many steps per path segment.
    With ``gauge`` the equivalent gauged equation of :class:`EndGauge` is
    integrated instead (``z^a`` continued along the path) and the result is
    transformed back.
    """
    if path.start != data.z0:
        raise PreconditionError("path must start at the base point z0")
    path.check_punctures(data.punctures)
    F = np.eye(2, dtype=complex)[None]
    drift = 0.0
    if gauge is not None:
        pts = path.points
        if np.any(pts == 0):
            raise DomainError("gauged integration cannot pass through z = 0")
        a = float(gauge.exponent)
        B = np.asarray(gauge.matrix, dtype=complex)
        # continuous branch of log z along the polygon
        logs = np.empty(len(pts), dtype=complex)
        logs[0] = np.log(pts[0])
        for i in range(1, len(pts)):
            logs[i] = logs[i - 1] + np.log(pts[i] / pts[i - 1])
        D0 = np.exp(a * logs[0])
        F = (B * np.array([D0, 1 / D0])[None, :])[None]
        for i, (za, zb) in enumerate(zip(pts[:-1], pts[1:])):
            F, d = integrate_segments(gauge.data, [za], [zb], F, tol=tol,
                                      fixed_steps=fixed_steps, gauge=a, log_za=[logs[i]])
            drift += d
        D1 = np.exp(a * logs[-1])
        F = (F[0] * np.array([1 / D1, D1])[None, :]) @ np.linalg.inv(B)
        return Frame(F, drift, path)
    for a, b in zip(path.points[:-1], path.points[1:]):
        F, d = integrate_segments(data, [a], [b], F, tol=tol, fixed_steps=fixed_steps)
        drift += d
    return Frame(F[0], drift, path)


# ---------------------------------------------------------------------------
# Models of hyperbolic space
# ---------------------------------------------------------------------------


def inverse_frames(F):
    """Inverse of determinant-one matrices by cofactors (batched)."""
    F = np.asarray(F, dtype=complex)
    out = np.empty_like(F)
    out[..., 0, 0] = F[..., 1, 1]
    out[..., 0, 1] = -F[..., 0, 1]
    out[..., 1, 0] = -F[..., 1, 0]
    out[..., 1, 1] = F[..., 0, 0]
    return out


def upper_half_from_inverse(Finv):
    """Upper-half-space points from ``F^{-1} = [[A, B], [C, D]]`` (batched)."""
    Finv = np.asarray(Finv, dtype=complex)
    A, B = Finv[..., 0, 0], Finv[..., 0, 1]
    C, D = Finv[..., 1, 0], Finv[..., 1, 1]
    den = np.abs(C) ** 2 + np.abs(D) ** 2
    if np.any(den == 0):
        raise DegenerateError("|C|^2 + |D|^2 = 0")
    w = A * np.conj(C) + B * np.conj(D)
    return np.stack([w.real / den, w.imag / den, 1.0 / den], axis=-1)


def hermitian_from_upper(x, c: float = 1.0):
    """Hermitian matrix of an upper-half-space point (det ``1/c^2``)."""
    x = np.asarray(x, dtype=float)
    w = x[..., 0] + 1j * x[..., 1]
    h = x[..., 2]
    out = np.empty(x.shape[:-1] + (2, 2), dtype=complex)
    out[..., 0, 0] = (np.abs(w) ** 2 + h ** 2) / h
    out[..., 0, 1] = w / h
    out[..., 1, 0] = np.conj(w) / h
    out[..., 1, 1] = 1.0 / h
    return out / c


def upper_to_ball(x, c: float = 1.0):
    """Cayley map from the upper half-space to the ball of radius ``1/c``;
    ``(0, 0, 1)`` goes to the centre and the vertical axis to a diameter."""
    P = hermitian_from_upper(x)
    x0 = 0.5 * (P[..., 0, 0] + P[..., 1, 1]).real
    x3 = 0.5 * (P[..., 0, 0] - P[..., 1, 1]).real
    x1 = P[..., 0, 1].real
    x2 = P[..., 0, 1].imag
    return np.stack([x1, x2, x3], axis=-1) / (1.0 + x0)[..., None] / c


def ball_to_upper(b, c: float = 1.0):
    """Inverse of :func:`upper_to_ball`."""
    b = np.asarray(b, dtype=float) * c
    n2 = np.sum(b * b, axis=-1)
    if np.any(n2 >= 1.0):
        raise DomainError("point outside the ball")
    x0 = (1 + n2) / (1 - n2)
    xs = 2 * b / (1 - n2)[..., None]
    p11 = x0 + xs[..., 2]
    p22 = x0 - xs[..., 2]
    p12 = xs[..., 0] + 1j * xs[..., 1]
    w = p12 / p22
    return np.stack([w.real, w.imag, 1.0 / p22], axis=-1)


def immerse(frame, c: float = 1.0, model: str = "upper_half",
            placement=None) -> AmbientPoint:
    """Surface point ``Phi = (1/c) F^{-1} (F^{-1})^*`` in the requested model.

    Parameters
    ----------
    frame : Frame or ndarray
    c : float
    model : {"hermitian", "upper_half", "poincare_ball"}
    placement : ndarray, optional
        Isometry ``P`` (``Phi -> P Phi P^*``).
    """
    if model not in MODELS:
        raise PreconditionError(f"unknown model {model!r}")
    F = frame.F if isinstance(frame, Frame) else np.asarray(frame, dtype=complex)
    Finv = inverse_frames(F)
    if placement is not None:
        Finv = np.asarray(placement, dtype=complex) @ Finv
    if model == "hermitian":
        Phi = Finv @ np.conj(Finv).T / c
        return AmbientPoint(model, Phi, c)
    x = upper_half_from_inverse(Finv)
    if model == "upper_half":
        return AmbientPoint(model, x, c)
    return AmbientPoint(model, upper_to_ball(x, c), c)


# ---------------------------------------------------------------------------
# Secondary Gauss map, monodromy, SU(2) action
# ---------------------------------------------------------------------------


def secondary_gauss(data: WeierstrassData, at, tol: float = 1e-12) -> complex:
    """Secondary Gauss map ``G = dF11/dF21`` at ``at``.

    The frame is integrated from ``z0`` along a path realising the winding of
    ``at`` (when it is a :class:`BranchedPoint`); the derivative comes from
    the ODE right-hand side, so ``dF = F A f dz`` gives the column
    ``F (g, 1)^T`` up to the common factor ``c f``.
    """
    if isinstance(at, BranchedPoint):
        path = Path.to_branched(data.z0, at) if at.z != data.z0 or at.winding else Path.trivial(data.z0)
        z, wnd = at.z, at.winding
    else:
        z, wnd = complex(at), 0
        path = Path.segment(data.z0, z, 1) if z != data.z0 else Path.trivial(z)
    F = integrate_frame(data, path, tol=tol).F
    g = data.g.value(z, wnd)
    if not np.isfinite(g):
        # at a pole of g the column F (g, 1)^T is proportional to F (1, 0)^T
        num, den = F[0, 0], F[1, 0]
        if den == 0:
            raise DegenerateError("frame derivative degenerate at this point")
        return complex(num / den)
    num = F[0, 0] * g + F[0, 1]
    den = F[1, 0] * g + F[1, 1]
    if abs(den) == 0 and abs(num) == 0:
        raise DegenerateError("dF11 and dF21 both vanish")
    if den == 0:
        return POINT_AT_INFINITY
    return complex(num / den)


def monodromy(data: WeierstrassData, loop: Path, tol: float = 1e-12,
              su2_tol: float = 1e-6) -> MonodromyResult:
    """Monodromy ``B = F(end) F(start)^{-1}`` of the frame around ``loop``.

    If the loop does not start at ``z0`` it is joined by a straight segment.
    """
    if not loop.closed:
        raise PreconditionError("monodromy needs a closed loop")
    loop.check_punctures(data.punctures)
    if loop.start != data.z0:
        lead = Path.segment(data.z0, loop.start, 1)
        F_start = integrate_frame(data, lead, tol=tol).F
    else:
        F_start = np.eye(2, dtype=complex)
    F = F_start[None]
    for a, b in zip(loop.points[:-1], loop.points[1:]):
        F, _ = integrate_segments(data, [a], [b], F, tol=tol)
    B = F[0] @ inverse_frames(F_start)
    defect = float(np.max(np.abs(B @ np.conj(B).T - np.eye(2))))
    det_err = abs(np.linalg.det(B) - 1.0)
    return MonodromyResult(B, bool(defect <= su2_tol and det_err <= su2_tol), defect)


def is_infinity(w) -> bool:
    return isinstance(w, complex) and (math.isinf(w.real) or math.isinf(w.imag))


def su2_action(B, G):
    """Moebius action ``(b11 G + b12)/(b21 G + b22)`` on the Riemann sphere."""
    M = B.matrix if isinstance(B, SU2Matrix) else np.asarray(B, dtype=complex)
    if np.ndim(G) == 0:
        G = complex(G)
        if is_infinity(G):
            return POINT_AT_INFINITY if M[1, 0] == 0 else complex(M[0, 0] / M[1, 0])
        den = M[1, 0] * G + M[1, 1]
        if den == 0:
            return POINT_AT_INFINITY
        return complex((M[0, 0] * G + M[0, 1]) / den)
    G = np.asarray(G, dtype=complex)
    return (M[0, 0] * G + M[0, 1]) / (M[1, 0] * G + M[1, 1])
