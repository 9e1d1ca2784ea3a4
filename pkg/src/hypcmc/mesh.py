"""Triangle meshes sampled from CMC-1 immersions.

Vertices are obtained by integrating the frame along a spanning tree of grid
paths (one line in the first parameter direction, then all lines in the
second direction in one batch) and converting to the upper half-space.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .catalog import CatalogSurface
from .errors import DegenerateError, DomainError, PreconditionError
from .geometry import metric_arrays
from .holo import Path
from .weierstrass import (WeierstrassData, integrate_segments, inverse_frames,
                          upper_half_from_inverse)

__all__ = [
    "GridSpec",
    "SurfaceMesh",
    "mesh_generate",
    "hyperbolic_distance",
    "write_obj",
    "read_obj",
    "write_mesh",
    "read_mesh",
]


@dataclass(frozen=True)
class GridSpec:
    """Parameter grid.

    ``kind="rect"``: ``n1 x n2`` points on ``x_range x y_range`` (index ``i``
    along x, ``j`` along y).  ``kind="annulus"``: ``n1`` radii log-spaced in
    ``r_range`` and ``n2`` angles ``2 pi j / n2`` (periodic).
    """

    kind: str = "rect"
    n1: int = 10
    n2: int = 10
    x_range: tuple = (-1.0, 1.0)
    y_range: tuple = (-1.0, 1.0)
    r_range: tuple = (0.1, 1.0)

    def __post_init__(self):
        if self.kind not in ("rect", "annulus"):
            raise PreconditionError(f"unknown grid kind {self.kind!r}")
        if self.n1 < 1 or self.n2 < 1:
            raise PreconditionError("grid sizes must be positive")
        if self.kind == "annulus":
            if self.n2 < 5 and self.n1 * self.n2 > 1:
                raise PreconditionError("annulus needs at least 5 angles")
            if not 0 < self.r_range[0] <= self.r_range[1]:
                raise PreconditionError("radii must satisfy 0 < r_min <= r_max")

    @property
    def periodic(self) -> bool:
        return self.kind == "annulus"

    def axes(self):
        """Grid coordinates along both directions (``s = ln r`` for annuli)."""
        if self.kind == "rect":
            return (np.linspace(*self.x_range, self.n1), np.linspace(*self.y_range, self.n2))
        s = np.linspace(math.log(self.r_range[0]), math.log(self.r_range[1]), self.n1)
        th = 2 * np.pi * np.arange(self.n2) / self.n2
        return s, th

    def points(self):
        """Complex parameter values, shape ``(n1, n2)``, and windings."""
        a, b = self.axes()
        if self.kind == "rect":
            z = a[:, None] + 1j * b[None, :]
            return z, np.zeros(z.shape, int)
        z = np.exp(a[:, None] + 1j * b[None, :])
        wnd = np.broadcast_to((b > np.pi).astype(int)[None, :], z.shape).copy()
        return z, wnd

    def refined(self) -> "GridSpec":
        """Grid with halved spacing (same domain)."""
        n2 = 2 * self.n2 if self.periodic else 2 * self.n2 - 1
        return GridSpec(self.kind, 2 * self.n1 - 1, n2, self.x_range, self.y_range,
                        self.r_range)


@dataclass
class SurfaceMesh:
    """Sampled surface.

    Attributes
    ----------
    params : ndarray of complex, shape (V,)
    vertices : ndarray, shape (V, 3)
        Upper half-space coordinates.
    faces : ndarray of int, shape (F, 3)
    shape : (n1, n2)
    periodic : bool
    boundary_loops : dict
        Name -> vertex indices of each boundary curve of the grid.
    ends : dict
        Boundary-loop name -> ideal point approached by that loop
        (``(x1, x2, 0)`` or ``"inf"``); loops not listed are ordinary
        boundary.
    K, ds2 : ndarray or None
        Curvature and conformal factor from the holomorphic data.
    """

    params: np.ndarray
    vertices: np.ndarray
    faces: np.ndarray
    shape: tuple
    periodic: bool = False
    boundary_loops: dict = field(default_factory=dict)
    ends: dict = field(default_factory=dict)
    K: np.ndarray | None = None
    ds2: np.ndarray | None = None
    diagnostics: dict = field(default_factory=dict)
    grid: GridSpec | None = None
    quads: np.ndarray | None = None
    _normals: np.ndarray | None = None

    def __post_init__(self):
        if np.any(self.vertices[:, 2] <= 0):
            raise DegenerateError("vertices must lie in the upper half-space")

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def normals(self) -> np.ndarray:
        """Euclidean unit vertex normals (area-weighted face normals)."""
        if self._normals is None:
            self._normals = vertex_normals(self.vertices, self.faces, self.quads)
        return self._normals

    def set_normals(self, n):
        n = np.asarray(n, dtype=float)
        self._normals = n / np.linalg.norm(n, axis=1, keepdims=True)

    def hyperbolic_factor(self) -> np.ndarray:
        """Conformal factor ``1/x3^2`` of the ambient metric at each vertex."""
        return 1.0 / self.vertices[:, 2] ** 2

    def interior_mask(self) -> np.ndarray:
        n1, n2 = self.shape
        m = np.ones((n1, n2), bool)
        m[0, :] = m[-1, :] = False
        if not self.periodic:
            m[:, 0] = m[:, -1] = False
        return m.ravel()

    def face_adjacency(self):
        """Pairs of faces sharing an edge, shape (E, 2), and the shared edges."""
        F = self.faces
        e = np.concatenate([F[:, [0, 1]], F[:, [1, 2]], F[:, [2, 0]]])
        fid = np.tile(np.arange(len(F)), 3)
        e = np.sort(e, axis=1)
        order = np.lexsort((e[:, 1], e[:, 0]))
        e, fid = e[order], fid[order]
        same = np.all(e[1:] == e[:-1], axis=1)
        idx = np.nonzero(same)[0]
        return np.stack([fid[idx], fid[idx + 1]], axis=1), e[idx]

    def discrete_curvature(self) -> np.ndarray:
        """Angle-defect curvature using hyperbolic comparison triangles.

        With geodesic triangles of the ambient space (curvature -1) a surface
        of curvature ``K`` has defect ``~ int (K + 1) dA`` around a vertex, so
        ``K_i = defect_i / A_i - 1`` with ``A_i`` a third of the incident
        triangle areas.  Returned only at interior vertices (NaN elsewhere).
        """
        V, F = self.vertices, self.faces
        a = hyperbolic_distance(V[F[:, 1]], V[F[:, 2]])
        b = hyperbolic_distance(V[F[:, 2]], V[F[:, 0]])
        c = hyperbolic_distance(V[F[:, 0]], V[F[:, 1]])

        def angle(opp, s1, s2):
            cosg = (np.cosh(s1) * np.cosh(s2) - np.cosh(opp)) / (np.sinh(s1) * np.sinh(s2))
            return np.arccos(np.clip(cosg, -1.0, 1.0))

        A0, A1, A2 = angle(a, b, c), angle(b, c, a), angle(c, a, b)
        area = np.pi - A0 - A1 - A2
        nV = len(V)
        asum = np.zeros(nV)
        areav = np.zeros(nV)
        for k, ang in enumerate((A0, A1, A2)):
            np.add.at(asum, F[:, k], ang)
            np.add.at(areav, F[:, k], area / 3.0)
        K = (2 * np.pi - asum) / areav - 1.0
        return np.where(self.interior_mask(), K, np.nan)

    def submesh(self, face_mask) -> "SurfaceMesh":
        """Mesh made of the selected faces (vertices re-indexed)."""
        F = self.faces[np.asarray(face_mask, bool)]
        used = np.unique(F)
        remap = -np.ones(self.n_vertices, int)
        remap[used] = np.arange(len(used))
        m = SurfaceMesh(self.params[used], self.vertices[used], remap[F], (len(used), 1))
        if self._normals is not None:
            m._normals = self._normals[used]
        return m


def hyperbolic_distance(x, y):
    """Distance in the upper half-space model (curvature -1)."""
    x = np.asarray(x, float)
    y = np.asarray(y, float)
    d2 = np.sum((x - y) ** 2, axis=-1)
    return np.arccosh(1.0 + d2 / (2.0 * x[..., 2] * y[..., 2]))


def vertex_normals(V, F, quads=None) -> np.ndarray:
    """Unit vertex normals from summed cross products.

    With ``quads`` (rows ``a, b, c, d`` in cyclic order) each quad
    contributes the cross product of its diagonals, ``(c - a) x (d - b)``;
    this is symmetric under reflections of the grid, so normals of surfaces
    of revolution stay exactly in the meridian planes.  Otherwise triangle
    cross products are used.
    """
    if len(F) == 0:
        raise DegenerateError("mesh has no faces; normals undefined")
    n = np.zeros_like(V)
    if quads is not None and len(quads):
        Qd = np.asarray(quads)
        qn = np.cross(V[Qd[:, 2]] - V[Qd[:, 0]], V[Qd[:, 3]] - V[Qd[:, 1]])
        for k in range(4):
            np.add.at(n, Qd[:, k], qn)
    else:
        fn = np.cross(V[F[:, 1]] - V[F[:, 0]], V[F[:, 2]] - V[F[:, 0]])
        for k in range(3):
            np.add.at(n, F[:, k], fn)
    nrm = np.linalg.norm(n, axis=1)
    if np.any(nrm == 0):
        raise DegenerateError("vertex without adjacent face area; normal undefined")
    return n / nrm[:, None]


def grid_quads(n1, n2, periodic):
    """Grid cells ``(a, b, c, d)`` in counter-clockwise parameter order."""
    jmax = n2 if periodic else n2 - 1
    if n1 < 2 or jmax < 1 or n2 < 2:
        return np.zeros((0, 4), int)
    i, j = np.meshgrid(np.arange(n1 - 1), np.arange(jmax), indexing="ij")
    i, j = i.ravel(), j.ravel()
    jp = (j + 1) % n2
    return np.stack([i * n2 + j, (i + 1) * n2 + j, (i + 1) * n2 + jp, i * n2 + jp], 1)


def grid_faces(n1, n2, periodic):
    """Two triangles per grid cell, oriented by (d/d1) x (d/d2)."""
    jmax = n2 if periodic else n2 - 1
    if n1 < 2 or jmax < 1 or n2 < 2:
        return np.zeros((0, 3), int)
    i, j = np.meshgrid(np.arange(n1 - 1), np.arange(jmax), indexing="ij")
    i, j = i.ravel(), j.ravel()
    jp = (j + 1) % n2
    a = i * n2 + j
    b = (i + 1) * n2 + j
    c = (i + 1) * n2 + jp
    d = i * n2 + jp
    return np.concatenate([np.stack([a, b, c], 1), np.stack([a, c, d], 1)])


def _frames_on_grid(data: WeierstrassData, Z, tol):
    n1, n2 = Z.shape
    F0 = np.eye(2, dtype=complex)[None]
    if Z[0, 0] != data.z0:
        Path(np.array([data.z0, Z[0, 0]])).check_punctures(data.punctures)
        F0, _ = integrate_segments(data, [data.z0], [Z[0, 0]], F0, tol=tol)
    frames = np.empty((n1, n2, 2, 2), complex)
    frames[0, 0] = F0[0]
    # first parameter line j = 0
    for i in range(1, n1):
        Path(Z[i - 1:i + 1, 0]).check_punctures(data.punctures)
        frames[i, 0], _ = integrate_segments(data, [Z[i - 1, 0]], [Z[i, 0]],
                                             frames[i - 1, 0][None], tol=tol)
    # all lines in the second direction, batched over i
    for j in range(1, n2):
        for i in range(n1):
            Path(Z[i, j - 1:j + 1]).check_punctures(data.punctures)
        frames[:, j], _ = integrate_segments(data, Z[:, j - 1], Z[:, j], frames[:, j - 1], tol=tol)
    return frames


def conformality_defect(X, x3, h1, h2, n2, periodic):
    """Off-diagonal-over-trace and anisotropy of the discrete first
    fundamental form (hyperbolic metric) at interior grid vertices."""
    n1 = X.shape[0]
    if n1 < 3 or n2 < 3:
        return np.zeros(0), np.zeros(0)
    if periodic:
        Xu = (X[2:] - X[:-2]) / (2 * h1)
        Xv = (np.roll(X, -1, axis=1) - np.roll(X, 1, axis=1))[1:-1] / (2 * h2)
        w = x3[1:-1]
    else:
        Xu = (X[2:, 1:-1] - X[:-2, 1:-1]) / (2 * h1)
        Xv = (X[1:-1, 2:] - X[1:-1, :-2]) / (2 * h2)
        w = x3[1:-1, 1:-1]
    E = np.sum(Xu * Xu, -1) / w ** 2
    Fm = np.sum(Xu * Xv, -1) / w ** 2
    G = np.sum(Xv * Xv, -1) / w ** 2
    return (np.abs(Fm) / (E + G)).ravel(), (np.abs(E - G) / (E + G)).ravel()


def mesh_generate(source, grid: GridSpec, tol: float = 1e-12, G=None) -> SurfaceMesh:
    """Sample a surface on a parameter grid.

    Parameters
    ----------
    source : CatalogSurface or WeierstrassData
    grid : GridSpec
    tol : float
        Local error target of the frame integrator.
    G : HoloFn, optional
        Secondary Gauss map for curvature data (taken from the catalog entry
        when available).
    """
    if isinstance(source, CatalogSurface):
        data, ends_info, G = source.data, source.ends, (G or source.G)
    else:
        data, ends_info = source, ()
    Z, wnd = grid.points()
    for p in data.punctures:
        if np.any(Z == p):
            raise DomainError(f"grid vertex on puncture {p}")
    frames = _frames_on_grid(data, Z, tol)
    Finv = inverse_frames(frames)
    if data.placement is not None:
        Finv = data.placement @ Finv
    X = upper_half_from_inverse(Finv)
    n1, n2 = Z.shape
    faces = grid_faces(n1, n2, grid.periodic)

    loops = {}
    ends = {}
    idx = np.arange(n1 * n2).reshape(n1, n2)
    if grid.kind == "annulus":
        loops = {"inner": idx[0].tolist(), "outer": idx[-1].tolist()}
        for e in ends_info:
            if e.puncture == 0:
                ends["inner"] = e.ideal_point
            elif math.isinf(abs(e.puncture)):
                ends["outer"] = e.ideal_point
    else:
        loops = {"boundary": np.concatenate([idx[0], idx[1:, -1], idx[-1, -2::-1],
                                             idx[-2:0:-1, 0]]).tolist() if n1 > 1 and n2 > 1
                 else idx.ravel().tolist()}

    K = ds2 = None
    if G is not None:
        ds2, K, _, _, _ = metric_arrays(G, data.g, data.f, Z.ravel(), wnd.ravel())
    a, b = grid.axes()
    h1 = a[1] - a[0] if n1 > 1 else 1.0
    h2 = b[1] - b[0] if n2 > 1 else 1.0
    off, aniso = conformality_defect(X, X[..., 2], h1, h2, n2, grid.periodic)
    diag = {"conformal_offdiag_max": float(off.max()) if off.size else 0.0,
            "conformal_anisotropy_max": float(aniso.max()) if aniso.size else 0.0}
    mesh = SurfaceMesh(Z.ravel(), X.reshape(-1, 3), faces, (n1, n2), grid.periodic,
                       loops, ends, K, ds2, diag, grid, grid_quads(n1, n2, grid.periodic))
    if len(faces):
        mesh.normals  # noqa: B018  (compute eagerly; degenerate grids defer the error)
    return mesh


# ---------------------------------------------------------------------------
# File formats
# ---------------------------------------------------------------------------


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def write_obj(path, mesh: SurfaceMesh):
    """OBJ with ``v``, ``vn`` and ``f`` records only (1-based indices)."""
    lines = []
    for v in mesh.vertices:
        lines.append("v " + " ".join(_fmt(c) for c in v))
    N = mesh.normals
    for n in N:
        lines.append("vn " + " ".join(_fmt(c) for c in n))
    for f in mesh.faces + 1:
        lines.append("f " + " ".join(f"{k}//{k}" for k in f))
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_obj(path):
    """Read vertices, normals and faces written by :func:`write_obj`."""
    V, N, F = [], [], []
    with open(path) as fh:
        for line in fh:
            parts = line.split()
            if not parts:
                continue
            if parts[0] == "v":
                V.append([float(t) for t in parts[1:4]])
            elif parts[0] == "vn":
                N.append([float(t) for t in parts[1:4]])
            elif parts[0] == "f":
                F.append([int(t.split("/")[0]) - 1 for t in parts[1:4]])
    return np.array(V), np.array(N), np.array(F, dtype=int).reshape(-1, 3)


def mesh_metadata(mesh: SurfaceMesh) -> dict:
    ends = {k: (list(v) if not isinstance(v, str) else v) for k, v in mesh.ends.items()}
    return {"shape": list(mesh.shape), "periodic": mesh.periodic,
            "boundary_loops": mesh.boundary_loops, "ends": ends,
            "params_re": mesh.params.real.tolist(), "params_im": mesh.params.imag.tolist()}


def write_mesh(obj_path, mesh: SurfaceMesh, sidecar_path=None, dumps=None):
    """Write the OBJ file and its end-metadata sidecar (JSON)."""
    from .report import dumps as _dumps
    write_obj(obj_path, mesh)
    sidecar_path = sidecar_path or str(obj_path).rsplit(".", 1)[0] + ".ends.json"
    with open(sidecar_path, "w", newline="\n") as fh:
        fh.write((dumps or _dumps)(mesh_metadata(mesh)))
    return sidecar_path


def read_mesh(obj_path, sidecar_path=None) -> SurfaceMesh:
    V, N, F = read_obj(obj_path)
    sidecar_path = sidecar_path or str(obj_path).rsplit(".", 1)[0] + ".ends.json"
    with open(sidecar_path) as fh:
        meta = json.load(fh)
    ends = {k: (tuple(v) if isinstance(v, list) else v) for k, v in meta["ends"].items()}
    params = np.array(meta["params_re"]) + 1j * np.array(meta["params_im"])
    m = SurfaceMesh(params, V, F, tuple(meta["shape"]), bool(meta["periodic"]),
                    {k: list(v) for k, v in meta["boundary_loops"].items()}, ends)
    if len(N) == len(V):
        m.set_normals(N)
    return m
