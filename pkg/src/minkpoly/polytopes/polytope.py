"""The null-faced 4-polytope container and its combinatorial assembly."""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.spatial import ConvexHull

from ..core import (
    DEFAULT_TOL,
    ETA,
    CausalClass,
    Tolerance,
    as_vector,
    causal_class,
    minkowski_dot,
    normal_zero_sum_residual,
    volume_normal,
)
from ..errors import DegenerateSpan, NonNullHyperface, NonSpacelikeEdge, NonSpacelikeFace, NotNullSpan
from ..null_geometry import FUTURE, PAST, NullHyperplane, hyperplane_from_points


class Family(enum.Enum):
    SIMPLEX = "simplex"
    DIAMOND = "diamond"
    PARALLELOTOPE = "parallelotope"


@dataclass(frozen=True, eq=False)
class Hyperface:
    vertex_ids: tuple
    plane: NullHyperplane
    label: str
    normal: np.ndarray
    # fan triangulation from the first vertex, as vertex-id quadruples
    tetrahedra: tuple


@dataclass(frozen=True, eq=False)
class Face:
    vertex_ids: tuple
    hyperfaces: tuple
    causal_pair: str
    area: float


@dataclass(frozen=True, eq=False)
class Edge:
    vertex_ids: tuple
    hyperfaces: tuple
    signature: tuple  # (n_past, n_future)
    length: float


@dataclass(frozen=True, eq=False)
class NullFaced4Polytope:
    vertices: np.ndarray
    labels: tuple
    hyperfaces: tuple
    faces: tuple
    edges: tuple
    family: Family

    @property
    def normals(self) -> np.ndarray:
        return np.array([h.normal for h in self.hyperfaces])

    @property
    def centroid(self) -> np.ndarray:
        return self.vertices.mean(axis=0)

    def vertex(self, label) -> np.ndarray:
        return self.vertices[self.labels.index(label)]

    def vertex_signature(self, i: int) -> tuple:
        labs = [h.label for h in self.hyperfaces if i in h.vertex_ids]
        return (labs.count(PAST), labs.count(FUTURE))

    def face_between(self, i: int, j: int) -> Face | None:
        key = tuple(sorted((i, j)))
        for f in self.faces:
            if f.hyperfaces == key:
                return f
        return None

    def normal_residual(self) -> float:
        """Zero-sum residual of the outgoing normals relative to their size."""
        n = self.normals
        return normal_zero_sum_residual(n) / float(np.max(np.linalg.norm(n, axis=1)))

    def edge_lengths(self) -> np.ndarray:
        return np.array([e.length for e in self.edges])

    def face_areas(self) -> np.ndarray:
        return np.array([f.area for f in self.faces])


def spacelike_polygon_area(points, tol: Tolerance = DEFAULT_TOL) -> float:
    """Area of a planar convex polygon lying in a spacelike 2-plane.

    The polygon is expressed in a basis of two of its edges; the area is the
    coordinate area times sqrt(det) of the 2x2 Minkowski Gram matrix.
    Raises :class:`NonSpacelikeFace` when the plane is not spacelike.
    """
    p = np.atleast_2d(as_vector(points))
    d = p[1:] - p[0]
    a = d[0]
    # second basis vector: the edge most independent of the first
    cross = [np.linalg.norm(np.outer(a, x) - np.outer(x, a)) for x in d[1:]]
    b = d[1 + int(np.argmax(cross))]
    basis = np.array([a, b])
    g = basis @ ETA @ basis.T
    det = float(np.linalg.det(g))
    if not (g[0, 0] > 0 and det > tol.rel_eps * g[0, 0] * max(g[1, 1], 0.0)):
        raise NonSpacelikeFace(-1, "face plane is not spacelike")
    coef, *_ = np.linalg.lstsq(basis.T, d.T, rcond=None)
    c = np.vstack([[0.0, 0.0], coef.T])
    centre = c.mean(axis=0)
    order = np.argsort(np.arctan2(c[:, 1] - centre[1], c[:, 0] - centre[0]))
    c = c[order]
    shoelace = 0.5 * abs(float(np.sum(c[:, 0] * np.roll(c[:, 1], -1) - np.roll(c[:, 0], -1) * c[:, 1])))
    return shoelace * math.sqrt(det)


def _fan_tetrahedra(ids, coords):
    """Fan triangulation of a convex 3d point set from its first point."""
    if len(ids) == 4:
        return (tuple(ids),)
    hull = ConvexHull(coords)
    out = []
    for tri in hull.simplices:
        if 0 in tri:
            continue
        out.append((ids[0],) + tuple(ids[k] for k in tri))
    return tuple(out)


def hyperface_normal(vertices, tetrahedra, outgoing, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Sum of the outgoing volume normals of the tetrahedra of a triangulation."""
    total = np.zeros(4)
    for t in tetrahedra:
        v = vertices[list(t)]
        try:
            total += volume_normal(v[1] - v[0], v[2] - v[0], v[3] - v[0], outgoing, tol=tol)
        except DegenerateSpan:
            continue  # sliver from coplanar hull facets
    return total


def assemble(vertices, labels: Sequence, hyperface_sets: Sequence[Sequence[int]], family: Family,
             tol: Tolerance = DEFAULT_TOL) -> NullFaced4Polytope:
    """Build a polytope from vertices and the vertex sets of its hyperfaces.

    Faces and edges are derived from the hyperface incidences: a face is
    the 2d intersection of two hyperfaces, an edge is a vertex pair whose
    common hyperfaces meet in exactly that pair.
    """
    v = as_vector(vertices)
    centroid = v.mean(axis=0)
    hyperfaces = []
    for k, ids in enumerate(hyperface_sets):
        ids = tuple(ids)
        pts = v[list(ids)]
        try:
            plane = hyperplane_from_points(pts, tol)
        except NotNullSpan as exc:
            raise NonNullHyperface(k, f"hyperface {k}: {exc}") from exc
        if not all(plane.contains(p, tol) for p in pts):
            raise NonNullHyperface(k, f"hyperface {k} is not planar")
        # polytope lies to the future of the plane iff normal.(C - x0) < 0
        side = plane.residual(centroid)
        label = PAST if side < 0 else FUTURE
        tets = _fan_tetrahedra(ids, plane.coords(pts))
        outgoing = pts.mean(axis=0) - centroid
        normal = hyperface_normal(v, tets, outgoing, tol)
        hyperfaces.append(Hyperface(ids, plane, label, normal, tets))

    faces = []
    for i, j in itertools.combinations(range(len(hyperfaces)), 2):
        shared = sorted(set(hyperfaces[i].vertex_ids) & set(hyperfaces[j].vertex_ids))
        if len(shared) < 3:
            continue
        d = v[shared[1:]] - v[shared[0]]
        if np.linalg.matrix_rank(d, tol=tol.rel_eps * float(np.abs(d).max())) != 2:
            continue
        try:
            area = spacelike_polygon_area(v[shared], tol)
        except NonSpacelikeFace as exc:
            raise NonSpacelikeFace(len(faces)) from exc
        labs = sorted((hyperfaces[i].label, hyperfaces[j].label))
        pair = {(PAST, PAST): "PP", (FUTURE, PAST): "PF", (FUTURE, FUTURE): "FF"}[tuple(labs)]
        faces.append(Face(tuple(shared), (i, j), pair, area))

    edges = []
    for a, b in itertools.combinations(range(len(v)), 2):
        inc = [k for k, h in enumerate(hyperfaces) if a in h.vertex_ids and b in h.vertex_ids]
        if len(inc) < 3:
            continue
        common = set.intersection(*(set(hyperfaces[k].vertex_ids) for k in inc))
        if common != {a, b}:
            continue
        d = v[b] - v[a]
        if causal_class(d, tol) is not CausalClass.SPACELIKE:
            raise NonSpacelikeEdge(len(edges))
        labs = [hyperfaces[k].label for k in inc]
        edges.append(Edge((a, b), tuple(inc), (labs.count(PAST), labs.count(FUTURE)),
                          math.sqrt(float(minkowski_dot(d, d)))))

    return NullFaced4Polytope(v.copy(), tuple(labels), tuple(hyperfaces), tuple(faces),
                              tuple(edges), family)


def hull_volume_oracle(p: NullFaced4Polytope) -> float:
    """4-volume by coning the triangulated boundary from vertex 0.

    Independent of the volume normals: only vertex coordinates and the
    hyperface triangulations enter.
    """
    base = p.vertices[0]
    total = 0.0
    for h in p.hyperfaces:
        if 0 in h.vertex_ids:
            continue
        for t in h.tetrahedra:
            total += abs(np.linalg.det(p.vertices[list(t)] - base))
    return total / 24.0
