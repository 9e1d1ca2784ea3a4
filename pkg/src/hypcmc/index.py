"""Index reports: the constrained index ``Ind`` of a CMC-1 surface lies in
``{Ind_u - 1, Ind_u}`` where ``Ind_u`` is the number of negative eigenvalues
of the pseudometric Jacobi operator; lower bounds from visible sets of
Killing fields and from small-``c`` deformations of minimal surfaces refine
the lower end.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import PreconditionError, UnknownNameError
from .oracle import analytic_index

__all__ = [
    "LowerBound",
    "IndexReport",
    "index_interval",
    "combine",
    "vision_bound",
    "deformation_bound",
    "catalog_lookup",
    "CATALOG_NAMES",
]

# provenance tags of lower bounds
TAG_UNCONSTRAINED = "unconstrained-index-minus-one"
TAG_STABILITY = "horosphere-only-stable"
TAG_VISION = "adjusted-vision-number"
TAG_DEFORMATION = "minimal-surface-deformation"


@dataclass(frozen=True)
class LowerBound:
    value: int
    source: str


@dataclass
class IndexReport:
    """Index of a surface as an interval ``[lo, hi]``.

    ``hi`` (and ``ind_u``) is ``None`` when no upper bound is known; the
    ``infinite_index`` flag marks surfaces of infinite index.
    """

    name: str
    ind_u: int | None
    ind_interval: tuple
    lower_bounds: list = field(default_factory=list)
    nullity: int | None = None
    flags: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)

    @property
    def exact(self) -> int | None:
        lo, hi = self.ind_interval
        return lo if hi is not None and lo == hi else None


def _check_int(name, v):
    if int(v) != v or v < 0:
        raise PreconditionError(f"{name} must be a non-negative integer")
    return int(v)


def combine(name: str, ind_u: int | None, bounds=(), *, horosphere: bool = False,
            complete: bool = True, finite_total_curvature: bool = True,
            infinite: bool = False, nullity: int | None = None,
            addendum_mode: bool = False, params: dict | None = None) -> IndexReport:
    """Combine the unconstrained index with lower bounds.

    ``lo = max(ind_u - 1, bounds, 0)`` (plus 1 for complete surfaces other
    than the horosphere, which are never stable), ``hi = ind_u``.  A bound
    above ``ind_u`` is clipped and raises the ``inconsistent`` flag.  With
    ``addendum_mode`` the interval collapses to ``ind_u``.
    """
    bounds = [b if isinstance(b, LowerBound) else LowerBound(int(b[0]), str(b[1]))
              for b in bounds]
    flags = {"stable_excluded": False, "horosphere": bool(horosphere),
             "finite_total_curvature": bool(finite_total_curvature),
             "infinite_index": bool(infinite), "addendum_mode": bool(addendum_mode),
             "inconsistent": False}
    if horosphere:
        return IndexReport(name, 0, (0, 0), [], nullity, flags, dict(params or {}))
    if infinite:
        lo = max([b.value for b in bounds] + [1 if complete else 0])
        flags["finite_total_curvature"] = False
        return IndexReport(name, None, (lo, None), bounds, nullity, flags, dict(params or {}))
    bl = list(bounds)
    if ind_u is not None:
        ind_u = _check_int("ind_u", ind_u)
        bl.insert(0, LowerBound(max(ind_u - 1, 0), TAG_UNCONSTRAINED))
    if complete:
        bl.append(LowerBound(1, TAG_STABILITY))
        flags["stable_excluded"] = True
    lo = max([b.value for b in bl] + [0])
    hi = ind_u
    if hi is not None and lo > hi:
        flags["inconsistent"] = True
        lo = hi
    if addendum_mode and hi is not None:
        lo = hi
    return IndexReport(name, ind_u, (lo, hi), bl, nullity, flags, dict(params or {}))


def index_interval(ind_sigma: int, is_horosphere: bool = False, complete: bool = True,
                   addendum_mode: bool = False) -> IndexReport:
    """Report for a surface whose pseudometric operator has ``ind_sigma``
    negative eigenvalues."""
    ind_sigma = _check_int("ind_sigma", ind_sigma)
    return combine("surface", ind_sigma, horosphere=is_horosphere, complete=complete,
                   addendum_mode=addendum_mode)


def vision_bound(v: int, v_adj: int) -> int:
    """Lower bound from the (adjusted) vision numbers of a Killing field:
    ``v_adj - 1`` if ``v_adj != v`` and ``v_adj - 2`` otherwise, at least 0."""
    v = _check_int("v", v)
    v_adj = _check_int("v_adj", v_adj)
    if v_adj > v:
        raise PreconditionError("v_adj cannot exceed v")
    return max(v_adj - 1 if v_adj != v else v_adj - 2, 0)


def deformation_bound(ind_minimal: int) -> int:
    """Lower bound for small-``c`` deformations of a minimal surface of
    index ``ind_minimal``."""
    return max(_check_int("ind_minimal", ind_minimal) - 1, 0)


# ---------------------------------------------------------------------------
# Catalog of known surfaces
# ---------------------------------------------------------------------------


def _zpower(name, mu, addendum, params):
    a = analytic_index(float(mu))
    return combine(name, a.ind_u, nullity=a.nullity, addendum_mode=addendum,
                   params=params)


def _horosphere(addendum=False):
    return combine("horosphere", 0, horosphere=True)


def _catenoid_cousin(mu=0.5, addendum=False):
    mu = float(mu)
    if not mu > 0 or mu == 1.0:
        raise PreconditionError("catenoid cousins need mu > 0, mu != 1")
    return _zpower("catenoid-cousin", mu, addendum, {"mu": mu})


def _enneper_cousin(k=1, addendum=False):
    k = _check_int("k", k)
    if k < 1:
        raise PreconditionError("k must be positive")
    # secondary Gauss map z^k on the sphere
    return _zpower("enneper-cousin", k, addendum, {"k": k, "winding_order": 2 * k + 1})


def _z_power(m=3, addendum=False):
    m = _check_int("m", m)
    if m < 1:
        raise PreconditionError("m must be positive")
    return _zpower("z-power-cousin", m, addendum, {"m": m})


def _linear_gauss(addendum=False, **params):
    # G Moebius-equivalent to z on the punctured sphere: one negative eigenvalue
    return _zpower("linear-gauss-cousin", 1.0, addendum, dict(params))


def _genus1_catenoid(addendum=False):
    # rotation about the axis joining the end points; v = v_adj >= 4
    b = LowerBound(vision_bound(4, 4), TAG_VISION)
    return combine("genus1-catenoid-cousin", None, [b], addendum_mode=addendum)


def _costa(k=1, addendum=False):
    k = _check_int("k", k)
    if k < 1:
        raise PreconditionError("k must be positive")
    bounds = [LowerBound(vision_bound(2 * k + 2, 2 * k + 2), TAG_VISION)]
    if k <= 37:
        bounds.append(LowerBound(deformation_bound(2 * k + 3), TAG_DEFORMATION))
    return combine("costa-cousin", None, bounds, addendum_mode=addendum, params={"k": k})


def _genus0_noid(n=3, addendum=False):
    n = _check_int("n", n)
    if n < 2:
        raise PreconditionError("n must be at least 2")
    b = LowerBound(deformation_bound(2 * n - 3), TAG_DEFORMATION)
    return combine("genus0-noid-cousin", None, [b], addendum_mode=addendum, params={"n": n})


def _genus1_noid(n=3, addendum=False):
    n = _check_int("n", n)
    if n < 3:
        raise PreconditionError("n must be at least 3")
    v_adj = n - 2 if n % 2 == 0 else n - 3
    bounds = [LowerBound(vision_bound(v_adj + 1, v_adj), TAG_VISION),   # v > v_adj
              LowerBound(deformation_bound(n - 1), TAG_DEFORMATION)]
    return combine("genus1-noid-cousin", None, bounds, addendum_mode=addendum,
                   params={"n": n})


def _dual_enneper(addendum=False):
    return combine("dual-enneper", None, infinite=True)


_CATALOG = {
    "horosphere": _horosphere,
    "catenoid-cousin": _catenoid_cousin,
    "enneper-cousin": _enneper_cousin,
    "z-power-cousin": _z_power,
    "linear-gauss-cousin": _linear_gauss,
    "genus1-catenoid-cousin": _genus1_catenoid,
    "costa-cousin": _costa,
    "genus0-noid-cousin": _genus0_noid,
    "genus1-noid-cousin": _genus1_noid,
    "dual-enneper": _dual_enneper,
}
CATALOG_NAMES = tuple(_CATALOG)


def catalog_lookup(name: str, addendum_mode: bool = False, **params) -> IndexReport:
    """Index report of a named surface.

    Parameters by name: ``catenoid-cousin`` (``mu``), ``enneper-cousin``
    (``k``, secondary Gauss map ``z^k``), ``z-power-cousin`` (``m``),
    ``costa-cousin`` (``k`` = genus), ``genus0-noid-cousin`` and
    ``genus1-noid-cousin`` (``n`` = number of ends).
    """
    try:
        fn = _CATALOG[name]
    except KeyError:
        raise UnknownNameError(f"unknown catalog entry {name!r}; known: {list(_CATALOG)}") from None
    return fn(addendum=addendum_mode, **params)
