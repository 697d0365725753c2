"""Periodic tiling by the regular doubly-null parallelotope and its lightray lattice.

Cell ``n`` (an integer 4-index) is the regular parallelotope translated by
``n @ G`` where the rows of ``G`` are the four generators. Its vertex with
local pattern ``s`` sits at lattice point ``m = n + s``, so vertices are
keyed by integer 4-tuples and shared vertices coincide exactly.

A global hyperface is ``(i, m)``: the parallelepiped of lattice points with
coordinate ``i`` fixed at ``m[i]`` and the other three in ``[m, m + 1]``.
A global face is ``(i, j, m)``: coordinates ``i`` and ``j`` fixed, the other
two free.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .core import DEFAULT_TOL, ETA, Tolerance
from .errors import ExtentTooLarge, NonPositiveScale
from .polytopes.families import PATTERNS, regular_parallelotope_generators

DEFAULT_MAX_CELLS = 10**6
_UNIT = np.eye(4, dtype=int)


@dataclass(frozen=True)
class Cell:
    index: tuple
    vertex_ids: tuple  # in PATTERNS order


@dataclass(frozen=True)
class BlockFace:
    pair: tuple      # the two fixed lattice directions (i, j), i < j
    corner: tuple    # lowest lattice point of the face
    vertex_ids: tuple


@dataclass(eq=False)
class TilingBlock:
    extent: tuple
    scale: float
    origin: np.ndarray
    generators: np.ndarray
    cells: list
    vertices: np.ndarray
    vertex_keys: np.ndarray
    faces: list
    # face id -> [(cell id, local hyperface index)]
    face_adjacency: dict = field(default_factory=dict)

    def vertex_id(self, key) -> int:
        return self._key_index[tuple(int(c) for c in key)]

    @property
    def _key_index(self) -> dict:
        cache = self.__dict__.get("_keys")
        if cache is None:
            cache = {tuple(k): i for i, k in enumerate(self.vertex_keys.tolist())}
            self.__dict__["_keys"] = cache
        return cache

    def hyperface_keys(self) -> set:
        out = set()
        for c in self.cells:
            n = np.array(c.index)
            for i in range(4):
                for side in (0, 1):
                    out.add((i, tuple(n + side * _UNIT[i])))
        return out

    def incident_hyperfaces(self, face_id: int) -> set:
        """Distinct global hyperfaces of the block that contain a face."""
        out = set()
        for cid, h in self.face_adjacency[face_id]:
            i, side = divmod(h, 2)
            out.add((i, tuple(np.array(self.cells[cid].index) + side * _UNIT[i])))
        return out

    def summary(self) -> dict:
        return {
            "extent": list(self.extent),
            "scale": self.scale,
            "cells": len(self.cells),
            "vertices": len(self.vertices),
            "faces": len(self.faces),
            "hyperfaces": len(self.hyperface_keys()),
        }


def _check_extent(extent, max_cells):
    ext = tuple(int(e) for e in extent)
    if len(ext) != 4 or any(e != x for e, x in zip(ext, extent)):
        raise ValueError("extent needs four integers")
    if min(ext) < 1:
        raise ValueError("each extent must be >= 1")
    if math.prod(ext) > max_cells:
        raise ExtentTooLarge(f"{math.prod(ext)} cells exceeds the cap of {max_cells}")
    return ext


def generate_tiling(extent, scale: float = 1.0, max_cells: int = DEFAULT_MAX_CELLS) -> TilingBlock:
    """Block of prod(extent) cells with deduplicated vertices and face incidences."""
    if not scale > 0:
        raise NonPositiveScale("scale must be positive")
    ext = _check_extent(extent, max_cells)
    gens = regular_parallelotope_generators(scale)
    origin = np.array([-scale, 0.0, 0.0, 0.0])
    pats = np.array(PATTERNS, dtype=int)

    index: dict = {}
    keys: list = []
    cells = []
    for n in itertools.product(*(range(e) for e in ext)):
        ids = []
        for m in map(tuple, np.array(n) + pats):
            vid = index.get(m)
            if vid is None:
                vid = index[m] = len(keys)
                keys.append(m)
            ids.append(vid)
        cells.append(Cell(tuple(n), tuple(ids)))
    vkeys = np.array(keys, dtype=int)
    verts = origin + vkeys @ gens

    faces: list = []
    face_index: dict = {}
    adjacency: dict = {}
    for cid, c in enumerate(cells):
        n = np.array(c.index)
        for i, j in itertools.combinations(range(4), 2):
            for si, sj in itertools.product((0, 1), repeat=2):
                corner = tuple(n + si * _UNIT[i] + sj * _UNIT[j])
                fkey = (i, j, corner)
                fid = face_index.get(fkey)
                if fid is None:
                    free = [k for k in range(4) if k not in (i, j)]
                    ids = tuple(index[tuple(np.array(corner) + a * _UNIT[free[0]] + b * _UNIT[free[1]])]
                                for a, b in itertools.product((0, 1), repeat=2))
                    fid = face_index[fkey] = len(faces)
                    faces.append(BlockFace((i, j), corner, ids))
                    adjacency[fid] = []
                adjacency[fid].append((cid, 2 * i + si))
                adjacency[fid].append((cid, 2 * j + sj))
    return TilingBlock(ext, float(scale), origin, gens, cells, verts, vkeys, faces, adjacency)


def vertex_count_by_hashing(block: TilingBlock, digits: int = 9) -> int:
    """Distinct vertex positions found by rounding coordinates, independent of the keys."""
    pos = []
    for c in block.cells:
        base = block.origin + np.array(c.index) @ block.generators
        pos.append(base + np.array(PATTERNS, dtype=float) @ block.generators)
    q = np.round(np.vstack(pos) / block.scale, digits)
    q[q == 0] = 0.0  # merge -0.0 with 0.0
    return len({tuple(r) for r in q.tolist()})


def expected_vertex_count(extent) -> int:
    return math.prod(int(e) + 1 for e in extent)


def cell_congruence_residual(block: TilingBlock) -> float:
    """Largest deviation of any cell's vertex offsets from the reference cell, relative to scale."""
    ref = np.array(PATTERNS, dtype=float) @ block.generators
    worst = 0.0
    for c in block.cells:
        v = block.vertices[list(c.vertex_ids)]
        worst = max(worst, float(np.max(np.abs(v - v[0] - ref))))
    return worst / block.scale


def cell_volumes(block: TilingBlock) -> np.ndarray:
    """|det| of the four edge vectors at each cell's initial vertex, from stored coordinates."""
    unit = [PATTERNS.index(tuple(int(k == i) for k in range(4))) for i in range(4)]
    out = np.empty(len(block.cells))
    for n, c in enumerate(block.cells):
        v = block.vertices[list(c.vertex_ids)]
        out[n] = abs(np.linalg.det(v[unit] - v[0]))
    return out


# --- lightcross at the faces -----------------------------------------------

@dataclass
class LightcrossReport:
    interior_faces: int
    boundary_faces: int
    balanced_faces: int
    violations: list  # (face id, reason)

    @property
    def ok(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        return {
            "interior_faces": self.interior_faces,
            "boundary_faces": self.boundary_faces,
            "balanced_faces": self.balanced_faces,
            "violations": [list(v) for v in self.violations],
        }


def _complement_projector(span):
    """Minkowski-orthogonal projector onto the complement of a spacelike 2-plane."""
    g = span @ ETA @ span.T
    coef = np.linalg.solve(g, span @ ETA)  # rows: dual basis pairing
    return np.eye(4) - span.T @ coef


def _is_null(v, tol):
    return abs(float(v @ ETA @ v)) <= tol.rel_eps * float(v @ v)


def verify_face_lightcross(block: TilingBlock, tol: Tolerance = DEFAULT_TOL) -> LightcrossReport:
    """Check that every interior face sits on four null hyperfaces, one per lightcross leg.

    For each incident hyperface the extension vector (from a face vertex to
    the adjacent hyperface vertex off the face) is projected onto the
    orthogonal complement of the face. Each projection must be null, and the
    four must point along four distinct legs: two opposite pairs on two
    distinct null rays.

    The dihedral tally counts, over the cells around the face, how many see
    it between a past and a future hyperface. Interior faces must have as
    many past-future incidences as past-past plus future-future ones.
    """
    interior = boundary = balanced = 0
    violations = []
    v = block.vertices
    for fid, face in enumerate(block.faces):
        hyper = block.incident_hyperfaces(fid)
        if len(hyper) < 4:
            boundary += 1
            continue
        interior += 1
        i, j = face.pair
        corner = np.array(face.corner)
        base = v[face.vertex_ids[0]]
        span = np.array([v[face.vertex_ids[1]] - base, v[face.vertex_ids[2]] - base])
        proj = _complement_projector(span)
        legs = []
        for a, mh in sorted(hyper):
            # the hyperface fixes a; its third direction is the other fixed index of the face
            b = j if a == i else i
            step = 1 if mh[b] == corner[b] else -1
            off = block.vertex_id(corner + step * _UNIT[b])
            legs.append(proj @ (v[off] - base))
        reason = None
        if not all(_is_null(x, tol) and np.linalg.norm(x) > tol.abs_eps for x in legs):
            reason = "non-null leg"
        else:
            unit = [x / np.linalg.norm(x) for x in legs]
            dots = np.array([[float(p @ q) for q in unit] for p in unit])
            # each leg has exactly one antiparallel partner and no parallel duplicate
            anti = np.sum(np.isclose(dots, -1.0, atol=1e-9), axis=1)
            para = np.sum(np.isclose(dots, 1.0, atol=1e-9), axis=1)
            if not (np.all(anti == 1) and np.all(para == 1)):
                reason = "legs do not form a lightcross"
        if reason:
            violations.append((fid, reason))

        tally = {"PF": 0, "other": 0}
        for cid, h in block.face_adjacency[fid][::2]:
            n = np.array(block.cells[cid].index)
            si, sj = corner[i] - n[i], corner[j] - n[j]
            # side 0 of every pair is past for the regular cell
            tally["PF" if si != sj else "other"] += 1
        if tally["PF"] == tally["other"]:
            balanced += 1
        else:
            violations.append((fid, "dihedral counts unbalanced"))
    return LightcrossReport(interior, boundary, balanced, violations)


# --- lightray lattice ------------------------------------------------------

@dataclass(eq=False)
class LightrayLattice:
    block: TilingBlock
    node_ids: np.ndarray     # vertex ids of the nodes
    segments: np.ndarray     # rows (earlier node, later node, direction index)
    ray_directions: np.ndarray

    @property
    def nodes(self) -> np.ndarray:
        return self.block.vertices[self.node_ids]

    def incident(self, vid: int) -> list:
        """(other vertex id, direction, 'future' | 'past') for segments at a node."""
        out = []
        for a, b, d in self.segments[(self.segments[:, 0] == vid) | (self.segments[:, 1] == vid)]:
            out.append((int(b), int(d), "future") if a == vid else (int(a), int(d), "past"))
        return out

    def degree_histogram(self) -> dict:
        deg = np.bincount(self.segments[:, :2].ravel(), minlength=len(self.block.vertices))
        vals, counts = np.unique(deg[self.node_ids], return_counts=True)
        return {int(a): int(b) for a, b in zip(vals, counts)}

    def interior_nodes(self) -> list:
        """Nodes all 16 of whose surrounding cells belong to the block."""
        ext = np.array(self.block.extent)
        keys = self.block.vertex_keys[self.node_ids]
        mask = np.all((keys >= 1) & (keys <= ext - 1), axis=1)
        return [int(x) for x in self.node_ids[mask]]


def extract_lightray_lattice(block: TilingBlock) -> LightrayLattice:
    """Keep only the null diagonals of the hyperfaces and the vertices they join.

    Diagonal ``i`` runs from ``m`` to ``m + (1,1,1,1) - e_i``; it is the
    diagonal of past hyperface ``i`` of cell ``m`` and of future hyperface
    ``i`` of cell ``m - e_i``.
    """
    cells = {c.index for c in block.cells}
    segs = set()
    for n in cells:
        n = np.array(n)
        for i in range(4):
            d = np.ones(4, dtype=int) - _UNIT[i]
            for start in (n, n + _UNIT[i]):
                segs.add((block.vertex_id(start), block.vertex_id(start + d), i))
    seg = np.array(sorted(segs), dtype=int)
    nodes = np.unique(seg[:, :2])
    g = block.generators
    rays = np.array([g.sum(axis=0) - g[i] for i in range(4)])
    return LightrayLattice(block, nodes, seg, rays)


@dataclass
class LatticeReport:
    interior_nodes: int
    degree_ok: bool
    collinear_ok: bool
    spacing_ok: bool
    null_ok: bool
    boundary_below_8: bool

    @property
    def ok(self) -> bool:
        return self.degree_ok and self.collinear_ok and self.spacing_ok and self.null_ok and self.boundary_below_8

    def as_dict(self) -> dict:
        return dict(self.__dict__, ok=self.ok)


def verify_lattice(lat: LightrayLattice, tol: Tolerance = DEFAULT_TOL) -> LatticeReport:
    """Null segments, degree 8 with 4 + 4 split at interior nodes on 4 straight rays, even spacing."""
    v = lat.block.vertices
    seg = v[lat.segments[:, 1]] - v[lat.segments[:, 0]]
    norm2 = np.einsum("ij,ij->i", seg, seg)
    null_ok = bool(np.all(np.abs(np.einsum("ij,jk,ik->i", seg, ETA, seg)) <= 1e-10 * norm2))

    interior = set(lat.interior_nodes())
    degree_ok = collinear_ok = spacing_ok = True
    for node in interior:
        inc = lat.incident(node)
        fut = sorted((d, o) for o, d, s in inc if s == "future")
        past = sorted((d, o) for o, d, s in inc if s == "past")
        if [d for d, _ in fut] != [0, 1, 2, 3] or [d for d, _ in past] != [0, 1, 2, 3]:
            degree_ok = False
            continue
        for (_, f), (_, p) in zip(fut, past):
            a, b = v[f] - v[node], v[node] - v[p]
            # collinear and equally spaced: the two steps along the ray coincide
            if np.linalg.norm(np.outer(a, b) - np.outer(b, a)) > tol.rel_eps * np.dot(a, a):
                collinear_ok = False
            if abs(np.linalg.norm(a) - np.linalg.norm(b)) > tol.rel_eps * np.linalg.norm(a):
                spacing_ok = False
    deg = np.bincount(lat.segments[:, :2].ravel(), minlength=len(v))
    boundary = [n for n in lat.node_ids if int(n) not in interior]
    return LatticeReport(len(interior), degree_ok, collinear_ok, spacing_ok, null_ok,
                         bool(np.all(deg[boundary] < 8)) if boundary else True)


@dataclass
class DirectionReport:
    cosines: np.ndarray
    max_deviation: float

    @property
    def ok(self) -> bool:
        return self.max_deviation <= 1e-9

    def as_dict(self) -> dict:
        return {"cosines": self.cosines.tolist(), "max_deviation": self.max_deviation, "ok": self.ok}


def tetrahedral_direction_check(lat: LightrayLattice) -> DirectionReport:
    """Pairwise cosines of the spatial ray directions, expected -1/3 off the diagonal."""
    r = lat.ray_directions / lat.ray_directions[:, :1]
    k = r[:, 1:] / np.linalg.norm(r[:, 1:], axis=1, keepdims=True)
    cos = k @ k.T
    target = np.full((4, 4), -1.0 / 3.0)
    np.fill_diagonal(target, 1.0)
    return DirectionReport(cos, float(np.max(np.abs(cos - target))))


def translation_invariance_check(lat: LightrayLattice, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Every interior node sees the same neighbour offsets, and nodes differ by generator translations."""
    interior = lat.interior_nodes()
    if not interior:
        return True
    v = lat.block.vertices
    g = lat.block.generators

    def offsets(node):
        inc = sorted(lat.incident(node), key=lambda x: (x[1], x[2]))
        return np.array([v[o] - v[node] for o, _, _ in inc])

    ref_node = interior[0]
    ref = offsets(ref_node)
    for node in interior[1:]:
        if np.max(np.abs(offsets(node) - ref)) > tol.rel_eps * lat.block.scale:
            return False
        coef = np.linalg.solve(g.T, v[node] - v[ref_node])
        if np.max(np.abs(coef - np.round(coef))) > 1e-9:
            return False
    return True
