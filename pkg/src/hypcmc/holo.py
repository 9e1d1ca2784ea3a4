"""Complex-analytic foundations: branched powers, paths, holomorphic data.

Conventions
-----------
The principal argument lies in ``(-pi, pi]``.  A :class:`BranchedPoint`
carries, besides ``z``, the number of signed turns around the origin that a
path accumulated on its way to ``z``; the continued argument is therefore
``Arg z + 2*pi*winding``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import DomainError, PreconditionError

__all__ = [
    "BranchedPoint",
    "Path",
    "HoloFn",
    "cpow",
    "cpow_array",
    "pochhammer",
    "hypergeom_terminating",
    "constant",
    "laurent",
    "power",
    "mobius_compose",
    "from_functions",
]


# ---------------------------------------------------------------------------
# Branched points and powers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BranchedPoint:
    """A point of the punctured plane together with a winding number.

    Parameters
    ----------
    z : complex
        Position, must be non-zero.
    winding : int
        Signed number of turns around 0 accumulated by the path that led here.
    """

    z: complex
    winding: int = 0

    def __post_init__(self):
        object.__setattr__(self, "z", complex(self.z))
        if int(self.winding) != self.winding:
            raise PreconditionError("winding must be an integer")
        object.__setattr__(self, "winding", int(self.winding))
        if not (math.isfinite(self.z.real) and math.isfinite(self.z.imag)):
            raise DomainError("non-finite point")
        if self.z == 0:
            raise DomainError("z = 0 is the puncture of a branched point")

    @property
    def arg(self) -> float:
        """Continued argument ``Arg z + 2 pi winding``."""
        return math.atan2(self.z.imag, self.z.real) + 2.0 * math.pi * self.winding


def _as_point(at) -> BranchedPoint:
    if isinstance(at, BranchedPoint):
        return at
    return BranchedPoint(complex(at), 0)


def principal_arg(z):
    """Principal argument in (-pi, pi] (numpy's angle already uses this range,
    except that it returns -pi for negative reals with a -0.0 imaginary part)."""
    z = np.asarray(z, dtype=complex)
    a = np.angle(z)
    return np.where(a == -np.pi, np.pi, a)


def cpow(p, mu: float) -> complex:
    """Branched power ``z**mu`` on the sheet selected by ``p.winding``.

    Returns ``exp(mu*(ln|z| + i(Arg z + 2 pi winding)))``.
    """
    p = _as_point(p)
    return complex(cpow_array(p.z, p.winding, mu))


def cpow_array(z, winding, mu: float):
    """Vectorised :func:`cpow`; ``z`` must avoid 0."""
    z = np.asarray(z, dtype=complex)
    if np.any(z == 0):
        raise DomainError("cpow: z = 0 is a puncture")
    w = np.asarray(winding)
    if np.issubdtype(w.dtype, np.floating) and np.any(w != np.round(w)):
        raise PreconditionError("winding must be integral")
    theta = principal_arg(z) + 2.0 * np.pi * w
    out = np.exp(mu * (np.log(np.abs(z)) + 1j * theta))
    if float(mu) == round(float(mu)):
        # integer exponents are single valued; avoid phase round-off
        out = z ** int(round(float(mu))) if abs(mu) < 64 else out
    return out


# ---------------------------------------------------------------------------
# Hypergeometric polynomials
# ---------------------------------------------------------------------------


def pochhammer(alpha: float, n: int) -> float:
    """Rising factorial ``(alpha)_n`` with ``(alpha)_0 = 1``."""
    if n < 0:
        raise PreconditionError("n must be non-negative")
    out = 1.0
    for i in range(n):
        out *= alpha + i
    return out


def hypergeom_terminating(a: float, p: int, c: float, x):
    """Terminating Gauss series ``F(a, -p; c; x)``.

    Parameters
    ----------
    a, c : float
        Series parameters; ``c`` must not be a non-positive integer.
    p : int
        Degree (``b = -p``).
    x : float or ndarray
        Evaluation point(s); the series is a polynomial, so any real works.

    Returns
    -------
    float or ndarray
    """
    if int(p) != p or p < 0:
        raise PreconditionError("p must be a non-negative integer")
    if c <= 0 and float(c) == round(float(c)):
        raise DomainError(f"c = {c} is a non-positive integer")
    x = np.asarray(x, dtype=float)
    term = np.ones_like(x)
    total = np.ones_like(x)
    for i in range(int(p)):
        # ratio of consecutive terms via the Pochhammer recursion
        term = term * (a + i) * (-p + i) / ((i + 1) * (c + i)) * x
        total = total + term
    return total if total.ndim else float(total)


# ---------------------------------------------------------------------------
# Paths
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Path:
    """Polygonal path through ordered sample points.

    Consecutive points must be distinct; a closed path repeats its first
    point at the end.
    """

    points: np.ndarray
    closed: bool = False

    def __post_init__(self):
        pts = np.atleast_1d(np.asarray(self.points, dtype=complex)).copy()
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        if not np.all(np.isfinite(pts)):
            raise DomainError("path samples must be finite")
        if len(pts) > 1 and np.any(np.diff(pts) == 0):
            raise PreconditionError("consecutive path samples coincide")
        if self.closed and (len(pts) < 3 or pts[0] != pts[-1]):
            raise PreconditionError("closed path must end at its first sample")

    # constructors ---------------------------------------------------------
    @classmethod
    def trivial(cls, z0) -> "Path":
        return cls(np.array([complex(z0)]))

    @classmethod
    def segment(cls, a, b, n: int = 1) -> "Path":
        """Straight segment from ``a`` to ``b`` sampled with ``n`` pieces."""
        a, b = complex(a), complex(b)
        if a == b:
            return cls.trivial(a)
        t = np.linspace(0.0, 1.0, n + 1)
        return cls(a + t * (b - a))

    @classmethod
    def circle(cls, center=0j, radius: float = 1.0, start_angle: float = 0.0,
               turns: float = 1.0, n: int = 64) -> "Path":
        """Circular arc; a full number of turns gives a closed loop."""
        t = start_angle + 2.0 * np.pi * turns * np.linspace(0.0, 1.0, n + 1)
        pts = complex(center) + radius * np.exp(1j * t)
        closed = float(turns) == round(float(turns)) and turns != 0
        if closed:
            pts[-1] = pts[0]
        return cls(pts, closed=closed)

    @classmethod
    def to_branched(cls, z0, target, n_arc: int = 64, n_radial: int = 16) -> "Path":
        """Path from ``z0`` to a :class:`BranchedPoint` around the origin.

        Goes along the circle ``|z| = |z0|`` until the continued argument
        matches ``target.arg`` and then radially.  For a target with winding
        0 whose straight segment from ``z0`` avoids 0, the segment is used.
        """
        target = _as_point(target)
        z0 = complex(z0)
        if z0 == 0:
            if target.winding != 0:
                raise PreconditionError("a winding target needs a basepoint off the origin")
            return cls.segment(z0, target.z, n_radial)
        a0 = math.atan2(z0.imag, z0.real)
        if target.winding == 0 and not _segment_hits(z0, target.z, 0j):
            return cls.segment(z0, target.z, n_radial)
        a1 = target.arg
        r0, r1 = abs(z0), abs(target.z)
        k = max(2, int(math.ceil(abs(a1 - a0) / (math.pi / 8))))
        arc = r0 * np.exp(1j * np.linspace(a0, a1, k + 1))
        rad = np.exp(1j * a1) * np.linspace(r0, r1, n_radial + 1)[1:]
        pts = np.concatenate([arc, rad]) if r0 != r1 else arc
        pts[-1] = target.z
        return cls(_dedupe(pts))

    # queries --------------------------------------------------------------
    @property
    def start(self) -> complex:
        return complex(self.points[0])

    @property
    def end(self) -> complex:
        return complex(self.points[-1])

    def length(self) -> float:
        return float(np.sum(np.abs(np.diff(self.points))))

    def check_punctures(self, punctures: Sequence[complex], eps: float = 0.0):
        """Raise if a sample or a segment passes through a puncture."""
        for p in punctures:
            p = complex(p)
            if np.any(np.abs(self.points - p) <= eps):
                raise DomainError(f"path sample hits puncture {p}")
            for a, b in zip(self.points[:-1], self.points[1:]):
                if _segment_hits(complex(a), complex(b), p):
                    raise DomainError(f"path segment passes through puncture {p}")

    def refined(self, center=0j, max_angle: float = math.pi / 4) -> "Path":
        """Insert samples so every step subtends less than ``max_angle``
        as seen from ``center``."""
        c = complex(center)
        pts = [self.points[0]]
        for a, b in zip(self.points[:-1], self.points[1:]):
            da = abs(_arg_step(complex(a) - c, complex(b) - c))
            k = max(1, int(math.ceil(da / max_angle)))
            t = np.linspace(0.0, 1.0, k + 1)[1:]
            pts.extend(a + t * (b - a))
        return Path(np.array(pts), closed=self.closed)

    def winding_about(self, center=0j) -> float:
        """Total argument change around ``center`` divided by 2 pi."""
        p = self.refined(center).points - complex(center)
        if np.any(p == 0):
            raise DomainError("path passes through the winding centre")
        steps = np.angle(p[1:] / p[:-1])
        return float(np.sum(steps) / (2.0 * np.pi))

    def branched_end(self, center=0j) -> BranchedPoint:
        """End point with the winding accumulated along the path, relative
        to the principal argument at the start."""
        p = self.refined(center).points - complex(center)
        total = math.atan2(p[0].imag, p[0].real) + float(np.sum(np.angle(p[1:] / p[:-1])))
        end_arg = math.atan2(p[-1].imag, p[-1].real)
        w = int(round((total - end_arg) / (2.0 * math.pi)))
        return BranchedPoint(complex(p[-1]), w)

    def then(self, other: "Path") -> "Path":
        """Concatenate; ``other`` must start where ``self`` ends."""
        if self.end != other.start:
            raise PreconditionError("paths do not join")
        pts = np.concatenate([self.points, other.points[1:]])
        return Path(pts, closed=False)


def _arg_step(a: complex, b: complex) -> float:
    return math.atan2((b / a).imag, (b / a).real) if a != 0 else math.pi


def _segment_hits(a: complex, b: complex, p: complex, eps: float = 1e-14) -> bool:
    d = b - a
    if d == 0:
        return a == p
    t = ((p - a) * d.conjugate()).real / abs(d) ** 2
    t = min(1.0, max(0.0, t))
    return abs(a + t * d - p) <= eps * max(1.0, abs(d))


def _dedupe(pts):
    keep = np.concatenate([[True], np.diff(pts) != 0])
    return pts[keep]


# ---------------------------------------------------------------------------
# Holomorphic functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HoloFn:
    """Holomorphic (possibly branched) function with analytic derivative.

    Parameters
    ----------
    func : callable
        ``func(z, winding) -> (value, derivative)`` on numpy arrays.
    orders : mapping
        Declared zero (positive) or pole (negative) orders at punctures;
        informational metadata.
    branched : bool
        True if the value depends on the winding.
    name : str
    """

    func: Callable
    orders: Mapping[complex, float] = field(default_factory=dict)
    branched: bool = False
    name: str = "holo"

    def eval(self, z, winding=0):
        """Return ``(value, derivative)`` as numpy arrays (or complexes)."""
        zz = np.asarray(z, dtype=complex)
        v, d = self.func(zz, np.asarray(winding))
        v = np.asarray(v, dtype=complex) * np.ones_like(zz)
        d = np.asarray(d, dtype=complex) * np.ones_like(zz)
        if zz.ndim == 0:
            return complex(v), complex(d)
        return v, d

    def __call__(self, at):
        """Value at a complex number or :class:`BranchedPoint`."""
        if isinstance(at, BranchedPoint):
            return self.eval(at.z, at.winding)[0]
        return self.eval(at)[0]

    def value(self, z, winding=0):
        return self.eval(z, winding)[0]

    def deriv(self, z, winding=0):
        return self.eval(z, winding)[1]


def constant(c: complex) -> HoloFn:
    c = complex(c)
    return HoloFn(lambda z, w: (np.full(z.shape, c), np.zeros(z.shape, complex)),
                  name=f"const({c})")


def laurent(coeffs: Mapping[int, complex], name: str = "laurent") -> HoloFn:
    """Laurent polynomial ``sum_n a_n z**n`` (integer exponents)."""
    terms = {int(n): complex(a) for n, a in coeffs.items() if a != 0}
    neg = [n for n in terms if n < 0]
    orders = {0j: float(min(neg))} if neg else {}

    def func(z, w):
        if neg and np.any(z == 0):
            raise DomainError("Laurent polynomial evaluated at its pole")
        v = np.zeros(z.shape, complex)
        d = np.zeros(z.shape, complex)
        for n, a in terms.items():
            v = v + a * z ** n if n >= 0 else v + a / z ** (-n)
            if n != 0:
                d = d + (n * a) * (z ** (n - 1) if n >= 1 else 1.0 / z ** (1 - n))
        return v, d

    return HoloFn(func, orders=orders, name=name)


def power(mu: float, coef: complex = 1.0) -> HoloFn:
    """Branched power ``coef * z**mu`` (the normal form of the secondary
    Gauss map of a catenoid cousin)."""
    mu = float(mu)
    coef = complex(coef)
    if mu == round(mu):
        return laurent({int(round(mu)): coef}, name=f"{coef}*z^{mu:g}")

    def func(z, w):
        v = cpow_array(z, w, mu)
        return coef * v, coef * mu * v / z

    return HoloFn(func, orders={0j: mu}, branched=True, name=f"{coef}*z^{mu:g}")


def mobius_compose(M, h: HoloFn) -> HoloFn:
    """``(a h + b)/(c h + d)`` for ``M = [[a, b], [c, d]]`` with det M = 1."""
    M = np.asarray(M, dtype=complex)
    a, b, c, d = M[0, 0], M[0, 1], M[1, 0], M[1, 1]
    det = a * d - b * c

    def func(z, w):
        v, dv = h.func(z, w)
        den = c * v + d
        return (a * v + b) / den, det * dv / den ** 2

    return HoloFn(func, orders={}, branched=h.branched, name=f"mobius({h.name})")


def from_functions(value: Callable, derivative: Callable, name: str = "holo",
                   orders: Mapping[complex, float] | None = None) -> HoloFn:
    """Wrap a pair of single-valued numpy callables."""
    return HoloFn(lambda z, w: (value(z), derivative(z)), orders=dict(orders or {}),
                  name=name)
