"""Killing fields of hyperbolic space (upper half-space model), their normal
projections on surface meshes, horizons and (adjusted) vision numbers.

The normal projection ``u = <phi, N>`` of a Killing field ``phi`` is a Jacobi
field.  Its zero set is the *horizon*; the components of the complement are
the *visible sets*.  ``v`` counts them and ``v_adj`` counts those that are
bounded or only run into ends whose ideal points are fixed by the field.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import NotRegularEndError, PreconditionError
from .mesh import SurfaceMesh, vertex_normals

__all__ = [
    "KillingField",
    "FIELDS",
    "killing_at",
    "normal_projection_field",
    "HorizonResult",
    "vision_numbers",
    "end_projection_limit",
    "ProjectionLimit",
    "inversion",
    "end_profile",
]


@dataclass(frozen=True)
class KillingField:
    """A Killing field and the two ideal points it fixes.

    ``rotation_x3``: rotation about the ``x3``-axis, ``(-x2, x1, 0)``.
    ``dilation_origin``: hyperbolic translation along the ``x3``-axis, ``x``.
    ``generic_translation``: hyperbolic translation along the geodesic from
    ``(-1, 0, 0)`` to infinity, ``(x1 + 1, x2, x3)``.  Near the origin it is
    ``(1, 0, 0)`` plus a multiple of the dilation, so it does not fix the
    origin; its fixed ideal points are ``(-1, 0, 0)`` and infinity.
    """

    kind: str

    def __post_init__(self):
        if self.kind not in _FIXED:
            raise PreconditionError(f"unknown Killing field {self.kind!r}")

    @property
    def fixed_points(self):
        return _FIXED[self.kind]

    def __call__(self, x):
        return killing_at(self, x)


_FIXED = {
    "rotation_x3": ((0.0, 0.0, 0.0), "inf"),
    "dilation_origin": ((0.0, 0.0, 0.0), "inf"),
    "generic_translation": ((-1.0, 0.0, 0.0), "inf"),
}
FIELDS = {"rotation": "rotation_x3", "dilation": "dilation_origin",
          "translation": "generic_translation"}


def _field(f) -> KillingField:
    if isinstance(f, KillingField):
        return f
    return KillingField(FIELDS.get(f, f))


def killing_at(field_, x):
    """Value of the Killing field at upper half-space point(s) ``x``."""
    f = _field(field_)
    x = np.asarray(x, dtype=float)
    if np.any(x[..., 2] <= 0):
        raise PreconditionError("points must satisfy x3 > 0")
    out = np.empty_like(x)
    if f.kind == "rotation_x3":
        out[..., 0] = -x[..., 1]
        out[..., 1] = x[..., 0]
        out[..., 2] = 0.0
    elif f.kind == "dilation_origin":
        out[...] = x
    else:
        out[...] = x
        out[..., 0] += 1.0
    return out


def normal_projection_field(mesh: SurfaceMesh, field_, normals=None) -> np.ndarray:
    """Per-vertex ``u = (phi . n)/x3`` with ``n`` the Euclidean unit normal
    (the hyperbolic unit normal is ``x3 n`` and the metric is ``|dx|^2/x3^2``)."""
    n = mesh.normals if normals is None else np.asarray(normals, float)
    X = mesh.vertices
    return np.sum(killing_at(field_, X) * n, axis=1) / X[:, 2]


@dataclass
class HorizonResult:
    """Horizon and visible sets of a Killing field on a mesh.

    ``components`` entries: ``faces`` (indices), ``sign``, ``touches_end``
    (boundary-loop names), ``counted_in_adjusted``.  ``v_adj`` is ``None``
    when the mesh carries no end metadata.
    """

    face_sign: np.ndarray
    horizon_faces: np.ndarray
    horizon_edges: np.ndarray
    components: list
    v: int | None
    v_adj: int | None
    degenerate: bool
    tol: float
    notes: list = field(default_factory=list)

    def summary(self) -> dict:
        return {"v": self.v, "v_adj": self.v_adj, "degenerate": self.degenerate,
                "tol": self.tol, "n_horizon_faces": int(len(self.horizon_faces)),
                "n_horizon_edges": int(len(self.horizon_edges)),
                "components": [{"n_faces": len(c["faces"]), "sign": c["sign"],
                                "touches_end": c["touches_end"],
                                "counted_in_adjusted": c["counted_in_adjusted"]}
                               for c in self.components],
                "notes": self.notes}


def _same_ideal(a, b, atol=1e-9) -> bool:
    if isinstance(a, str) or isinstance(b, str):
        return a == b
    return bool(np.allclose(np.asarray(a, float), np.asarray(b, float), atol=atol))


def vision_numbers(mesh: SurfaceMesh, field_, tol: float | None = None,
                   rel_tol: float = 1e-6, u=None, normals=None) -> HorizonResult:
    """Horizon and (adjusted) vision numbers.

    Face values are vertex averages of ``u``.  The horizon consists of faces
    with ``|u| <= tol`` and of faces whose vertices take both signs; the
    remaining faces split into visible sets (edge-adjacent, same sign).
    ``tol`` defaults to ``rel_tol * max|u|``.

    The field is *degenerate* when ``|u| <= rel_tol |phi|_H`` (``|phi|_H`` the
    hyperbolic norm of the field) on more than half of the faces; then ``v``
    and ``v_adj`` are not computed.

    A visible set counts towards ``v_adj`` if it touches no boundary loop
    marked as an end, or if every end it touches limits to an ideal point
    fixed by the field.  Contact with ordinary (non-end) boundary loops is
    ignored: such loops are artefacts of truncating the parameter domain.
    """
    f = _field(field_)
    uv = normal_projection_field(mesh, f, normals) if u is None else np.asarray(u, float)
    F = mesh.faces
    uf = uv[F].mean(axis=1)
    umax = float(np.max(np.abs(uv))) if len(uv) else 0.0
    if tol is None:
        tol = rel_tol * umax
    phi_h = np.linalg.norm(killing_at(f, mesh.vertices), axis=1) / mesh.vertices[:, 2]
    scale = phi_h[F].mean(axis=1)
    degenerate = bool(np.mean(np.abs(uf) <= rel_tol * np.maximum(scale, 1e-300)) > 0.5) \
        or umax == 0.0
    sgn = np.sign(uf).astype(int)
    vs = np.sign(uv[F])
    straddle = np.any(vs > 0, axis=1) & np.any(vs < 0, axis=1)
    on_h = (np.abs(uf) <= tol) | straddle
    sgn[on_h] = 0
    pairs, edges = mesh.face_adjacency()
    if degenerate:
        return HorizonResult(sgn, np.nonzero(on_h)[0], np.zeros((0, 2), int), [], None, None,
                             True, float(tol), ["field projection vanishes identically"])
    # horizon edges: shared by faces of different sign classes
    hmask = sgn[pairs[:, 0]] != sgn[pairs[:, 1]]
    h_edges = edges[hmask]
    keep = (~on_h[pairs[:, 0]]) & (~on_h[pairs[:, 1]]) & \
        (sgn[pairs[:, 0]] == sgn[pairs[:, 1]])
    off = np.nonzero(~on_h)[0]
    nF = len(F)
    A = coo_matrix((np.ones(int(keep.sum())), (pairs[keep, 0], pairs[keep, 1])), shape=(nF, nF))
    ncomp, labels = connected_components(A, directed=False)
    comp_ids = sorted(set(labels[off].tolist()), key=lambda c: int(np.min(np.nonzero(labels == c)[0])))
    have_meta = bool(mesh.ends) or mesh.grid is None and bool(mesh.boundary_loops)
    loop_sets = {k: set(v) for k, v in mesh.boundary_loops.items()}
    comps = []
    notes = []
    v_adj = 0
    for c in comp_ids:
        faces = np.nonzero(labels == c)[0]
        verts = set(np.unique(F[faces]).tolist())
        touches = sorted(k for k, s in loop_sets.items() if k in mesh.ends and verts & s)
        counted = all(any(_same_ideal(mesh.ends[k], fp) for fp in f.fixed_points)
                      for k in touches)
        v_adj += int(counted)
        comps.append({"faces": faces.tolist(), "sign": int(sgn[faces[0]]),
                      "touches_end": touches, "counted_in_adjusted": bool(counted)})
    if not mesh.ends:
        notes.append("no end metadata: visible sets treated as bounded")
    notes.append("boundedness judged by contact with end boundary loops")
    v = len(comps)
    return HorizonResult(sgn, np.nonzero(on_h)[0], h_edges, comps, v, v_adj, False,
                         float(tol), notes)


@dataclass(frozen=True)
class ProjectionLimit:
    bounded: bool
    limit: float | None


def end_projection_limit(end, field_) -> ProjectionLimit:
    """Limit of ``u`` along an end placed at the origin in normal position
    (upward unit normal).  Translations not fixing the end point diverge;
    the dilation fixing it tends to ``-mu/m``; the rotation about the axis
    through it tends to 0."""
    if not getattr(end, "regular", True):
        raise NotRegularEndError("end is not regular")
    f = _field(field_)
    mu, m = float(end.mu), float(end.m)
    if f.kind == "generic_translation":
        return ProjectionLimit(False, None)
    if f.kind == "dilation_origin":
        return ProjectionLimit(True, -mu / m)
    return ProjectionLimit(True, 0.0)


def inversion(x):
    """Reflection in the unit hemisphere ``x -> x/|x|^2`` (an isometry that
    swaps the origin and infinity)."""
    x = np.asarray(x, float)
    return x / np.sum(x * x, axis=-1, keepdims=True)


def end_profile(mesh: SurfaceMesh, field_, loop: str, rings: int = 5):
    """Values of ``u`` on the first ``rings`` grid rings next to the end
    boundary ``loop``, after moving that end to the origin.

    An end at infinity is moved by :func:`inversion`; normals are recomputed
    on the moved mesh and oriented upward (``n3 > 0``) on the end ring.
    Returns ``(ring_radius, u_mean, u_max_dev)`` arrays, ordered from the end
    inward.
    """
    if loop not in mesh.ends:
        raise PreconditionError(f"loop {loop!r} is not an end")
    ideal = mesh.ends[loop]
    X = mesh.vertices
    if _same_ideal(ideal, "inf"):
        X = inversion(X)
    elif not _same_ideal(ideal, (0.0, 0.0, 0.0)):
        raise PreconditionError("only ends at the origin or at infinity are supported")
    N = vertex_normals(X, mesh.faces, mesh.quads)
    n1, n2 = mesh.shape
    idx = np.arange(n1 * n2).reshape(n1, n2)
    # the boundary ring has one-sided normals; start one ring inside
    order = range(1, rings + 1) if loop == "inner" else range(n1 - 2, n1 - 2 - rings, -1)
    ring0 = idx[0] if loop == "inner" else idx[-1]
    if np.mean(N[ring0, 2]) < 0:
        N = -N
    U = np.sum(killing_at(field_, X) * N, axis=1) / X[:, 2]
    rad, mean, dev = [], [], []
    for i in order:
        r = idx[i]
        rad.append(float(np.mean(np.linalg.norm(X[r, :2], axis=1))))
        mean.append(float(np.mean(U[r])))
        dev.append(float(np.max(np.abs(U[r] - np.mean(U[r])))))
    return np.array(rad), np.array(mean), np.array(dev)
