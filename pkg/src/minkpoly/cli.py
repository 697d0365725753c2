"""``minkpoly`` command line: build canonical shapes, verify invariants, generate tilings.

Exit codes: 0 all checks pass, 1 a verification check failed, 2 usage error,
3 input/output error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .errors import MinkPolyError
from .null_geometry import (
    is_doubly_null,
    regular_doubly_null_parallelepiped,
    regular_null_tetrahedron,
)
from .polytopes import (
    Family,
    area_matrix_direct,
    assemble,
    causal_profile,
    diamond_halves,
    diamond_volume,
    dof_rank,
    face_areas_from_gram,
    gram_matrix,
    hull_volume_oracle,
    random_diamond,
    random_parallelotope,
    random_simplex,
    regular_diamond,
    regular_parallelotope,
    regular_simplex,
    tessellation_obstruction_check,
    volume_from_area_matrix,
    volume_from_gram,
)
from .report import Report, dumps_csv, dumps_json, envelope, flat, unflat
from .tiling import (
    cell_congruence_residual,
    cell_volumes,
    expected_vertex_count,
    extract_lightray_lattice,
    generate_tiling,
    tetrahedral_direction_check,
    translation_invariance_check,
    verify_face_lightcross,
    verify_lattice,
    vertex_count_by_hashing,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

POLYTOPE_SHAPES = {"simplex": regular_simplex, "diamond": regular_diamond, "parallelotope": regular_parallelotope}
HYPERFACE_SHAPES = ("tetra13", "tetra22", "parallelepiped")

# counts per family: hyperfaces, faces (PP, PF, FF), edges and vertices by signature
EXPECTED_PROFILE = {
    Family.SIMPLEX: ((2, 3), (1, 6, 3), (3, 6, 1), (3, 2)),
    Family.DIAMOND: ((4, 4), (6, 4, 6), (4, 6, 4), (1, 4, 1)),
    Family.PARALLELOTOPE: ((4, 4), (6, 12, 6), (4, 12, 12, 4), (1, 4, 6, 4, 1)),
}
EXPECTED_OBSTRUCTION = {
    Family.SIMPLEX: (6, 4, False),
    Family.DIAMOND: (4, 12, False),
    Family.PARALLELOTOPE: (12, 12, True),
}
EXPECTED_DOF = {Family.SIMPLEX: 5, Family.PARALLELOTOPE: 6}
RANDOM = {Family.SIMPLEX: random_simplex, Family.DIAMOND: random_diamond,
          Family.PARALLELOTOPE: random_parallelotope}


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    target: str | None = None
    scale: float = 1.0
    extent: tuple = (1, 1, 1, 1)
    seed: int = 0
    trials: int = 100
    tol: float = 1e-9
    with_lattice: bool = False
    fmt: str = "json"
    out: str | None = None
    argv: tuple = ()


# --- shape export ------------------------------------------------------------

def polytope_volumes(p) -> dict:
    out = {"hull": hull_volume_oracle(p)}
    if p.family is Family.DIAMOND:
        out["closed_form"] = diamond_volume(p.vertices[1:5])
    else:
        g = gram_matrix(p)
        out["gram"] = volume_from_gram(g)
        out["area_matrix"] = volume_from_area_matrix(face_areas_from_gram(g))
    return out


def export_polytope(p) -> dict:
    prof = causal_profile(p)
    return {
        "kind": "polytope",
        "family": p.family.value,
        "labels": list(p.labels),
        "vertices": flat(p.vertices),
        "hyperfaces": [{"vertex_ids": list(h.vertex_ids), "label": h.label, "normal": h.normal}
                       for h in p.hyperfaces],
        "faces": [{"vertex_ids": list(f.vertex_ids), "hyperfaces": list(f.hyperfaces),
                   "causal_pair": f.causal_pair, "area": f.area} for f in p.faces],
        "edges": [{"vertex_ids": list(e.vertex_ids), "hyperfaces": list(e.hyperfaces),
                   "signature": list(e.signature), "length": e.length} for e in p.edges],
        "metrics": {
            "volume": hull_volume_oracle(p),
            "volumes": polytope_volumes(p),
            "edge_lengths": sorted({round(x, 12) for x in p.edge_lengths()}),
            "face_areas": sorted({round(x, 12) for x in p.face_areas()}),
            "profile": prof.as_dict(),
            "obstruction": list(tessellation_obstruction_check(p)),
        },
    }


def load_polytope(shape: dict):
    try:
        family = Family(shape["family"])
        v = unflat(shape["vertices"])
        sets = [h["vertex_ids"] for h in shape["hyperfaces"]]
        labels = shape.get("labels") or list(range(len(v)))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"not a polytope export: {exc}") from exc
    return assemble(v, labels, sets, family)


def export_hyperface_shape(name: str, scale: float) -> dict:
    if name == "parallelepiped":
        pp = regular_doubly_null_parallelepiped(scale)
        return {
            "kind": "null_parallelepiped",
            "vertices": flat(pp.vertices),
            "initial_vertex": pp.initial_vertex,
            "edges": flat(pp.edges),
            "host": {"normal": pp.host.normal, "offset": pp.host.offset},
            "face_areas": pp.face_areas,
            "face_labels": list(pp.face_labels),
            "doubly_null": is_doubly_null(pp),
            "area_residual": pp.area_residual,
        }
    t = regular_null_tetrahedron((1, 3) if name == "tetra13" else (2, 2), scale)
    return {
        "kind": "null_tetrahedron",
        "vertices": flat(t.vertices),
        "host": {"normal": t.host.normal, "offset": t.host.offset},
        "face_areas": t.face_areas,
        "face_labels": list(t.face_labels),
        "type": list(t.tetra_type),
        "area_residual": t.area_residual,
    }


# --- verification suites -----------------------------------------------------

def _rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


def verify_polytope(rep: Report, p, tol: float, prefix: str = "") -> None:
    fam = p.family
    rep.check(prefix + "normal_zero_sum", 0.0, p.normal_residual(), passed=p.normal_residual() <= 1e-10)
    vols = polytope_volumes(p)
    for route, v in vols.items():
        if route != "hull":
            rep.check(f"{prefix}volume_{route}_vs_hull", vols["hull"], v, tol)
    if fam is Family.DIAMOND:
        h1, h2 = diamond_halves(p)
        rep.check(prefix + "diamond_halves_equal", h1, h2, tol)
    else:
        g = gram_matrix(p)
        rep.check(prefix + "gram_sign_violations", 0, g.sign_violations())
        s = face_areas_from_gram(g).S
        d = area_matrix_direct(p).S
        err = float(np.max(np.abs(s - d)) / np.max(np.abs(d)))
        rep.check(prefix + "face_areas_gram_vs_direct", 0.0, err, tol, passed=err <= tol)
        rep.check(prefix + "dof_rank", EXPECTED_DOF[fam], dof_rank(fam, p))
    prof = causal_profile(p)
    got = (prof.hyperface_counts, prof.face_counts, prof.edge_counts, prof.vertex_counts)
    rep.check(prefix + "causal_profile", _lists(EXPECTED_PROFILE[fam]), _lists(got))
    if fam is Family.SIMPLEX:
        rep.check(prefix + "simplex_incidence", True, prof.incidence_ok)
    rep.check(prefix + "obstruction", list(EXPECTED_OBSTRUCTION[fam]), list(tessellation_obstruction_check(p)))


def _lists(t):
    return [list(x) for x in t]


def verify_population(rep: Report, fam: Family, seed: int, trials: int, tol: float) -> None:
    rng = np.random.default_rng(seed)
    worst_vol = worst_area = worst_normal = 0.0
    signs = profile_bad = obstruction_bad = 0
    for _ in range(trials):
        p = RANDOM[fam](rng)
        vols = polytope_volumes(p)
        worst_vol = max([worst_vol] + [_rel(v, vols["hull"]) for v in vols.values()])
        worst_normal = max(worst_normal, p.normal_residual())
        if fam is not Family.DIAMOND:
            g = gram_matrix(p)
            signs += g.sign_violations()
            s, d = face_areas_from_gram(g).S, area_matrix_direct(p).S
            worst_area = max(worst_area, float(np.max(np.abs(s - d)) / np.max(np.abs(d))))
        prof = causal_profile(p)
        got = (prof.hyperface_counts, prof.face_counts, prof.edge_counts, prof.vertex_counts)
        profile_bad += got != EXPECTED_PROFILE[fam]
        obstruction_bad += tessellation_obstruction_check(p) != EXPECTED_OBSTRUCTION[fam]
    tag = f"random_{fam.value}"
    rep.check(f"{tag}_volume_routes", 0.0, worst_vol, tol, passed=worst_vol <= tol)
    rep.check(f"{tag}_normal_zero_sum", 0.0, worst_normal, 1e-10, passed=worst_normal <= 1e-10)
    if fam is not Family.DIAMOND:
        rep.check(f"{tag}_face_areas", 0.0, worst_area, tol, passed=worst_area <= tol)
        rep.check(f"{tag}_gram_sign_violations", 0, signs)
    rep.check(f"{tag}_profile_mismatches", 0, profile_bad)
    rep.check(f"{tag}_obstruction_mismatches", 0, obstruction_bad)


def verify_hyperface_shape(rep: Report, shape: dict) -> None:
    areas = np.asarray(shape["face_areas"], dtype=float)
    res = abs(float(areas.sum()))
    rep.check("signed_area_sum", 0.0, res, 1e-12, passed=res <= 1e-12 * max(1.0, float(np.abs(areas).max())))
    if shape["kind"] == "null_parallelepiped":
        rep.check("doubly_null", True, bool(shape["doubly_null"]))


# --- commands ----------------------------------------------------------------

def cmd_build(cfg: RunConfig):
    if cfg.target in POLYTOPE_SHAPES:
        p = POLYTOPE_SHAPES[cfg.target](cfg.scale)
        shape = export_polytope(p)
        rows = [[lab, *v] for lab, v in zip(p.labels, p.vertices)]
    else:
        shape = export_hyperface_shape(cfg.target, cfg.scale)
        rows = [[i, *v] for i, v in enumerate(unflat(shape["vertices"]))]
    env = envelope(__version__, _echo(cfg), shape=shape)
    return env, (["label", "t", "x", "y", "z"], rows), EXIT_OK


def _read_target(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(str(exc)) from exc
    if not isinstance(data, dict) or "shape" not in data:
        raise InputError(f"{path}: no shape in file")
    return data["shape"]


def cmd_verify(cfg: RunConfig):
    rep = Report(__version__, _echo(cfg))
    shape = None
    if cfg.target in POLYTOPE_SHAPES:
        p = POLYTOPE_SHAPES[cfg.target](cfg.scale)
        verify_polytope(rep, p, cfg.tol)
        if cfg.trials:
            verify_population(rep, p.family, cfg.seed, cfg.trials, cfg.tol)
    elif cfg.target in HYPERFACE_SHAPES:
        shape = export_hyperface_shape(cfg.target, cfg.scale)
        verify_hyperface_shape(rep, shape)
    else:
        shape = _read_target(cfg.target)
        if shape.get("kind") == "polytope":
            try:
                p = load_polytope(shape)
            except MinkPolyError as exc:
                # readable but geometrically invalid: a failed check, not an I/O error
                rep.check("assembly", "valid", f"{type(exc).__name__}: {exc}", passed=False)
            else:
                verify_polytope(rep, p, cfg.tol)
        elif shape.get("kind") in ("null_tetrahedron", "null_parallelepiped"):
            verify_hyperface_shape(rep, shape)
        else:
            raise InputError("unknown shape kind")
        shape = None
    env = envelope(__version__, _echo(cfg), report=rep.as_dict())
    rows = [[r.name, json.dumps(_plain_value(r.expected)), json.dumps(_plain_value(r.actual)),
             r.tolerance, r.passed] for r in rep.records]
    return env, (["name", "expected", "actual", "tolerance", "passed"], rows), \
        EXIT_OK if rep.ok else EXIT_FAIL


def _plain_value(x):
    return envelope("", [], report={"v": x})["report"]["v"]


def cmd_tile(cfg: RunConfig):
    b = generate_tiling(cfg.extent, cfg.scale)
    rep = Report(__version__, _echo(cfg))
    n_exp = expected_vertex_count(cfg.extent)
    rep.check("cells", math.prod(cfg.extent), len(b.cells))
    rep.check("vertex_count_keys", n_exp, len(b.vertices))
    rep.check("vertex_count_hashing", n_exp, vertex_count_by_hashing(b))
    res = cell_congruence_residual(b)
    rep.check("cell_congruence", 0.0, res, cfg.tol, passed=res <= cfg.tol)
    vols = cell_volumes(b)
    target = 3.0 * math.sqrt(3.0) * cfg.scale**4
    worst = float(vols[np.argmax(np.abs(vols - target))])
    rep.check("cell_volume", target, worst, cfg.tol)
    lc = verify_face_lightcross(b)
    rep.check("lightcross_violations", 0, len(lc.violations))
    rep.check("balanced_interior_faces", lc.interior_faces, lc.balanced_faces)
    lat = extract_lightray_lattice(b)
    lr = verify_lattice(lat)
    rep.check("segments_null", True, lr.null_ok)
    rep.check("interior_degree_8", True, lr.degree_ok)
    rep.check("boundary_degree_below_8", True, lr.boundary_below_8)
    rep.check("rays_collinear", True, lr.collinear_ok)
    rep.check("rays_affinely_spaced", True, lr.spacing_ok)
    rep.check("translation_invariance", True, translation_invariance_check(lat))
    dirs = tetrahedral_direction_check(lat)
    rep.check("ray_cosine_deviation", 0.0, dirs.max_deviation, 1e-9, passed=dirs.ok)

    deg = np.bincount(lat.segments[:, :2].ravel(), minlength=len(b.vertices))
    interior = lat.interior_nodes()
    block = dict(b.summary(), vertices=flat(b.vertices),
                 vertex_keys={"fields": ["m0", "m1", "m2", "m3"], "data": b.vertex_keys.ravel().tolist()},
                 cells=[{"index": list(c.index), "vertex_ids": list(c.vertex_ids)} for c in b.cells],
                 lightcross=lc.as_dict())
    lattice = None
    if cfg.with_lattice:
        lattice = {
            "node_ids": lat.node_ids.tolist(),
            "segments": {"fields": ["from", "to", "direction"], "data": lat.segments.ravel().tolist()},
            "ray_directions": flat(lat.ray_directions),
            "degree_histogram": lat.degree_histogram(),
            "interior_degree_histogram": {int(k): int(v) for k, v in
                                          zip(*np.unique(deg[interior], return_counts=True))},
            "checks": lr.as_dict(),
        }
    report = dict(rep.as_dict(), ray_cosines=dirs.cosines)
    env = envelope(__version__, _echo(cfg), block=block, lattice=lattice, report=report)
    rows = [[i, *k, *v] for i, (k, v) in enumerate(zip(b.vertex_keys.tolist(), b.vertices))]
    return env, (["id", "m0", "m1", "m2", "m3", "t", "x", "y", "z"], rows), \
        EXIT_OK if rep.ok else EXIT_FAIL


def _echo(cfg: RunConfig) -> list:
    return list(cfg.argv)


# --- argument parsing --------------------------------------------------------

def _positive_float(s):
    try:
        x = float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {s}") from None
    if not (x > 0 and math.isfinite(x)):
        raise argparse.ArgumentTypeError("must be a positive finite number")
    return x


def _extent(s):
    try:
        ext = tuple(int(x) for x in s.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad extent: {s}") from None
    if len(ext) != 4 or min(ext) < 1:
        raise argparse.ArgumentTypeError("extent needs four integers >= 1")
    return ext


def _non_negative_int(s):
    try:
        n = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s}") from None
    if n < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return n


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="minkpoly", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"minkpoly {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def io_flags(p):
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", help="output file (default: standard output)")

    b = sub.add_parser("build", help="write a canonical shape")
    b.add_argument("shape", choices=tuple(POLYTOPE_SHAPES) + HYPERFACE_SHAPES)
    b.add_argument("--scale", type=_positive_float, default=1.0)
    io_flags(b)

    v = sub.add_parser("verify", help="run the invariant suite on a shape or an exported file")
    v.add_argument("target", help="shape name or path to a JSON file written by build")
    v.add_argument("--scale", type=_positive_float, default=1.0)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--trials", type=_non_negative_int, default=100)
    v.add_argument("--tol", type=_positive_float, default=1e-9, help="relative tolerance of agreement checks")
    io_flags(v)

    t = sub.add_parser("tile", help="generate a block of the parallelotope tiling")
    t.add_argument("--extent", type=_extent, default=(1, 1, 1, 1))
    t.add_argument("--scale", type=_positive_float, default=1.0)
    t.add_argument("--with-lattice", action="store_true")
    t.add_argument("--tol", type=_positive_float, default=1e-9)
    io_flags(t)
    return ap


def parse_config(argv) -> RunConfig:
    ns = build_parser().parse_args(argv)
    cfg = RunConfig(
        command=ns.command,
        target=getattr(ns, "shape", None) or getattr(ns, "target", None),
        scale=ns.scale,
        extent=getattr(ns, "extent", (1, 1, 1, 1)),
        seed=getattr(ns, "seed", 0),
        trials=getattr(ns, "trials", 100),
        tol=getattr(ns, "tol", 1e-9),
        with_lattice=getattr(ns, "with_lattice", False),
        fmt=ns.format,
        out=ns.out,
        argv=tuple(argv),
    )
    return cfg


COMMANDS = {"build": cmd_build, "verify": cmd_verify, "tile": cmd_tile}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cfg = parse_config(argv)
    except SystemExit as exc:  # argparse reports usage errors with status 2
        return int(exc.code or 0)
    try:
        env, (header, rows), status = COMMANDS[cfg.command](cfg)
    except InputError as exc:
        print(f"minkpoly: {exc}", file=sys.stderr)
        return EXIT_IO
    except MinkPolyError as exc:
        print(f"minkpoly: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = dumps_json(env) if cfg.fmt == "json" else dumps_csv(header, rows)
    try:
        if cfg.out:
            with open(cfg.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"minkpoly: {exc}", file=sys.stderr)
        return EXIT_IO
    return status


if __name__ == "__main__":
    sys.exit(main())
