"""Command line interface.

Subcommands: ``surface``, ``spectrum``, ``index``, ``horizon``, ``ends``,
``monodromy``.  Parameters may come from a flat JSON config file
(``--config``); explicit flags override it.  All artefacts are written to
``--out`` with deterministic formatting, and every report embeds the
resolved configuration.  Failures print a single line
``error: <category>: <message>`` on stderr and exit non-zero.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import __version__
from .catalog import get_surface
from .ends import classify_end
from .errors import HypCMCError, PreconditionError
from .holo import Path
from .index import catalog_lookup, combine
from .killing import vision_numbers
from .mesh import GridSpec, mesh_generate, read_mesh, write_mesh, write_obj
from .report import dumps, fmt_float
from .spectrum import numeric_spectrum
from .weierstrass import monodromy

__all__ = ["run", "main", "build_parser"]

EXIT_ERROR = 1
EXIT_USAGE = 2

DEFAULTS = {
    "surface": {"example": "horosphere", "mu": 0.5, "k": 1, "m": 3, "grid": "16x16",
                "extent": 1.0, "r_min": 0.01, "r_max": 100.0, "placed": False,
                "out": "."},
    "spectrum": {"mu": 1.0, "cutoff": 2.0, "tol": 1e-4, "null_band": 1e-3, "upper": None,
                 "S": 12.0, "N": 2400, "out": "."},
    "index": {"example": "catenoid-cousin", "mu": None, "k": None, "m": None, "n": None,
              "numeric": False, "addendum": False, "null_band": 1e-3, "out": "."},
    "horizon": {"mesh": None, "example": "catenoid-cousin", "mu": 0.5, "k": 1, "m": 3,
                "grid": "81x64", "extent": 1.0, "r_min": 0.001, "r_max": 1000.0,
                "placed": True, "field": "dilation", "tol": None, "out": "."},
    "ends": {"mu": 1.0, "nu": -2.0, "q": "2", "out": "."},
    "monodromy": {"example": "catenoid-cousin", "mu": 0.5, "k": 1, "m": 3,
                  "center": "0", "radius": 1.0, "samples": 64, "out": "."},
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        sys.stderr.write(f"error: usage: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _complex(text) -> complex:
    return complex(str(text).replace(" ", "").replace("i", "j"))


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hypcmc", description="CMC-1 surfaces in hyperbolic space: "
                "frames, spectra and index reports.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp):
        sp.add_argument("--config", help="flat JSON file with option values")
        sp.add_argument("--out", help="output directory")

    def example_params(sp):
        sp.add_argument("--example")
        sp.add_argument("--mu", type=float)
        sp.add_argument("--k", type=int)
        sp.add_argument("--m", type=int)

    def grid_opts(sp):
        sp.add_argument("--grid", help="N1xN2")
        sp.add_argument("--extent", type=float, help="half width of rectangular grids")
        sp.add_argument("--r-min", dest="r_min", type=float)
        sp.add_argument("--r-max", dest="r_max", type=float)
        sp.add_argument("--placed", action="store_const", const=True, default=None,
                        help="place the horosphere at height 1")

    sp = sub.add_parser("surface", help="sample a catalog surface to OBJ")
    common(sp), example_params(sp), grid_opts(sp)

    sp = sub.add_parser("spectrum", help="numerical spectrum for G = z^mu")
    common(sp)
    sp.add_argument("--mu", type=float)
    sp.add_argument("--cutoff", type=float)
    sp.add_argument("--tol", type=float)
    sp.add_argument("--null-band", dest="null_band", type=float)
    sp.add_argument("--upper", type=float, help="report eigenvalues below this bound")
    sp.add_argument("--S", type=float)
    sp.add_argument("--N", type=int)

    sp = sub.add_parser("index", help="index report of a catalog surface")
    common(sp), example_params(sp)
    sp.add_argument("--n", type=int)
    sp.add_argument("--numeric", action="store_const", const=True, default=None,
                    help="use the numerical spectrum for G = z^mu surfaces")
    sp.add_argument("--addendum", action="store_const", const=True, default=None,
                    help="collapse intervals to the unconstrained index")
    sp.add_argument("--null-band", dest="null_band", type=float)

    sp = sub.add_parser("horizon", help="horizon and vision numbers of a Killing field")
    common(sp), example_params(sp), grid_opts(sp)
    sp.add_argument("--mesh", help="OBJ written by the surface subcommand")
    sp.add_argument("--field", choices=["rotation", "dilation", "translation"])
    sp.add_argument("--tol", type=float)

    sp = sub.add_parser("ends", help="classify a regular end")
    common(sp)
    sp.add_argument("--mu", type=float)
    sp.add_argument("--nu", type=float)
    sp.add_argument("--q", help="q_{-2}, real or complex (e.g. 1+2j)")

    sp = sub.add_parser("monodromy", help="frame monodromy around a loop")
    common(sp), example_params(sp)
    sp.add_argument("--center")
    sp.add_argument("--radius", type=float)
    sp.add_argument("--samples", type=int)
    return p


def _resolve(args) -> dict:
    cfg = dict(DEFAULTS[args.command])
    if getattr(args, "config", None):
        with open(args.config) as fh:
            filecfg = json.load(fh)
        if not isinstance(filecfg, dict):
            raise PreconditionError("config file must hold a flat JSON object")
        for k, v in filecfg.items():
            k = k.replace("-", "_")
            if k not in cfg:
                raise PreconditionError(f"unknown config key {k!r} for {args.command}")
            cfg[k] = v
    for k in cfg:
        v = getattr(args, k, None)
        if v is not None:
            cfg[k] = v
    return cfg


def _grid_for(name, cfg) -> GridSpec:
    try:
        n1, n2 = (int(t) for t in str(cfg["grid"]).lower().split("x"))
    except ValueError:
        raise PreconditionError(f"grid must look like 16x16, got {cfg['grid']!r}") from None
    if name in ("catenoid-cousin", "linear-gauss-cousin", "catenoid-type"):
        return GridSpec("annulus", n1, n2, r_range=(float(cfg["r_min"]), float(cfg["r_max"])))
    e = float(cfg["extent"])
    return GridSpec("rect", n1, n2, (-e, e), (-e, e))


def _surface(cfg):
    name = cfg["example"]
    params = {"horosphere": {"placed": bool(cfg.get("placed"))},
              "enneper-cousin": {"k": cfg.get("k")},
              "catenoid-cousin": {"mu": cfg.get("mu")},
              "linear-gauss-cousin": {"m": cfg.get("m")}}.get(name, {})
    return name, get_surface(name, **params)


def _write(path, text):
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


def cmd_surface(cfg, out):
    name, surf = _surface(cfg)
    mesh = mesh_generate(surf, _grid_for(name, cfg))
    obj = os.path.join(out, "surface.obj")
    side = write_mesh(obj, mesh)
    report = {"config": cfg, "result": {"n_vertices": mesh.n_vertices,
                                        "n_faces": int(len(mesh.faces)),
                                        "ends": mesh.ends, "diagnostics": mesh.diagnostics,
                                        "obj": "surface.obj",
                                        "sidecar": os.path.basename(side)}}
    _write(os.path.join(out, "surface.json"), dumps(report))
    return f"surface: {mesh.n_vertices} vertices, {len(mesh.faces)} faces -> {obj}"


def cmd_spectrum(cfg, out):
    rep = numeric_spectrum(float(cfg["mu"]), cutoff=float(cfg["cutoff"]), tol=float(cfg["tol"]),
                           null_band=float(cfg["null_band"]),
                           upper=None if cfg["upper"] is None else float(cfg["upper"]),
                           S=float(cfg["S"]), N=int(cfg["N"]))
    lines = ["q,rank,lambda_numeric,lambda_analytic,abs_err,multiplicity"]
    for q, rank, lam, exact, err, mult in rep.table:
        lines.append(f"{q},{rank},{fmt_float(lam)},{fmt_float(exact)},{fmt_float(err)},{mult}")
    _write(os.path.join(out, "spectrum.csv"), "\n".join(lines) + "\n")
    summary = {"config": cfg, "result": {
        "ind_u_numeric": rep.ind_u_numeric, "nullity_numeric": rep.nullity_numeric,
        "upper": rep.upper, "modes": {str(q): v for q, v in rep.modes.items()},
        "grids": {str(q): g for q, g in rep.grids.items()},
        "max_abs_err": rep.max_error(), "missing_oracle": rep.missing_oracle}}
    _write(os.path.join(out, "spectrum.json"), dumps(summary))
    return (f"spectrum: mu={cfg['mu']} ind_u={rep.ind_u_numeric} "
            f"nullity={rep.nullity_numeric} rows={len(rep.table)}")


def cmd_index(cfg, out):
    name = cfg["example"]
    params = {k: cfg[k] for k in ("mu", "k", "m", "n") if cfg.get(k) is not None}
    report = catalog_lookup(name, addendum_mode=bool(cfg["addendum"]), **params)
    if cfg["numeric"] and name in ("catenoid-cousin", "enneper-cousin", "z-power-cousin"):
        mu = float(params.get("mu", params.get("k", params.get("m", 1))))
        sp = numeric_spectrum(mu, null_band=float(cfg["null_band"]))
        report = combine(name, sp.ind_u_numeric, nullity=sp.nullity_numeric,
                         addendum_mode=bool(cfg["addendum"]), params=params)
        report.flags["numeric"] = True
    _write(os.path.join(out, "index.json"), dumps({"config": cfg, "result": report}))
    return f"index: {name} ind_u={report.ind_u} interval={list(report.ind_interval)}"


def cmd_horizon(cfg, out):
    if cfg["mesh"]:
        mesh = read_mesh(cfg["mesh"])
    else:
        name, surf = _surface(cfg)
        mesh = mesh_generate(surf, _grid_for(name, cfg))
    res = vision_numbers(mesh, cfg["field"], tol=None if cfg["tol"] is None else float(cfg["tol"]))
    _write(os.path.join(out, "horizon.json"), dumps({"config": cfg, "result": res.summary()}))
    mask = np.zeros(len(mesh.faces), bool)
    mask[res.horizon_faces] = True
    if mask.any():
        write_obj(os.path.join(out, "horizon.obj"), mesh.submesh(mask))
    else:
        _write(os.path.join(out, "horizon.obj"), "")
    return f"horizon: v={res.v} v_adj={res.v_adj} degenerate={res.degenerate}"


def cmd_ends(cfg, out):
    end = classify_end(float(cfg["mu"]), float(cfg["nu"]), _complex(cfg["q"]))
    _write(os.path.join(out, "ends.json"), dumps({"config": cfg, "result": end}))
    return f"ends: {end.end_type} m={end.m} embedded={end.embedded}"


def cmd_monodromy(cfg, out):
    name, surf = _surface(cfg)
    c = _complex(cfg["center"])
    loop = Path.circle(c, float(cfg["radius"]), 0.0, 1.0, int(cfg["samples"]))
    data = surf.data
    if loop.start != data.z0:
        # keep the loop based at z0 when z0 lies on it
        ang = math.atan2((data.z0 - c).imag, (data.z0 - c).real)
        if abs(abs(data.z0 - c) - float(cfg["radius"])) < 1e-14:
            loop = Path.circle(c, float(cfg["radius"]), ang, 1.0, int(cfg["samples"]))
            loop = Path(np.concatenate([[data.z0], loop.points[1:-1], [data.z0]]), closed=True)
    res = monodromy(data, loop)
    _write(os.path.join(out, "monodromy.json"),
           dumps({"config": cfg, "result": {"B": res.B, "in_su2": res.in_su2,
                                            "defect": res.defect}}))
    return f"monodromy: in_su2={res.in_su2} defect={res.defect:.3e}"


COMMANDS = {"surface": cmd_surface, "spectrum": cmd_spectrum, "index": cmd_index,
            "horizon": cmd_horizon, "ends": cmd_ends, "monodromy": cmd_monodromy}


def run(argv=None) -> int:
    """Run the command line; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if not args.command:
        parser.print_help(sys.stderr)
        return EXIT_USAGE
    try:
        cfg = _resolve(args)
        out = cfg["out"]
        os.makedirs(out, exist_ok=True)
        cfg = {k: v for k, v in cfg.items() if k != "out"}
        msg = COMMANDS[args.command](cfg, out)
    except HypCMCError as exc:
        sys.stderr.write(f"error: {exc.category}: {str(exc).splitlines()[0] if str(exc) else ''}\n")
        return EXIT_ERROR
    except (OSError, ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: input: {type(exc).__name__}: {exc}\n")
        return EXIT_ERROR
    print(msg)
    return 0


def main():
    sys.exit(run())
