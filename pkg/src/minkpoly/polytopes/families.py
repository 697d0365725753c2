"""Constructors for null-faced 4-simplices, tetrahedral diamonds and parallelotopes."""
from __future__ import annotations

import itertools
import math
from typing import Sequence

import numpy as np

from ..core import (
    DEFAULT_TOL,
    CausalClass,
    Tolerance,
    as_vector,
    causal_class,
    levi_civita_contract,
    minkowski_dot,
)
from ..errors import (
    DegenerateBase,
    DegeneratePlanes,
    DependentGenerators,
    NonNullHyperface,
    NonPositiveScale,
    NonSpacelikeBase,
    NonSpacelikeGenerator,
)
from ..null_geometry import NullHyperplane
from .polytope import Family, NullFaced4Polytope, assemble


def _check_scale(scale):
    if not scale > 0:
        raise NonPositiveScale("scale must be positive")


# --- 4-simplex ---------------------------------------------------------------

def simplex_from_vertices(vertices, labels: Sequence | None = None,
                          tol: Tolerance = DEFAULT_TOL) -> NullFaced4Polytope:
    """Null-faced 4-simplex; hyperface k is the tetrahedron opposite vertex k."""
    v = as_vector(vertices)
    if v.shape != (5, 4):
        raise ValueError("a 4-simplex needs 5 vertices")
    d = v[1:] - v[0]
    if abs(np.linalg.det(d)) <= tol.rel_eps * np.prod(np.linalg.norm(d, axis=1)):
        raise DegeneratePlanes("vertices are affinely dependent")
    sets = [tuple(i for i in range(5) if i != k) for k in range(5)]
    return assemble(v, labels or tuple(f"v{i}" for i in range(5)), sets, Family.SIMPLEX, tol)


def simplex_from_hyperplanes(planes: Sequence[NullHyperplane],
                             tol: Tolerance = DEFAULT_TOL) -> NullFaced4Polytope:
    """Convex hull of the pairwise-generic intersections of five null hyperplanes.

    Vertex k is the common point of the four planes other than plane k.
    """
    if len(planes) != 5:
        raise ValueError("need five hyperplanes")
    n = np.array([p.normal for p in planes])
    c = np.array([p.offset for p in planes])
    verts = []
    for k in range(5):
        idx = [i for i in range(5) if i != k]
        a = n[idx]
        if np.linalg.cond(a) > 1.0 / tol.rel_eps:
            raise DegeneratePlanes(f"planes other than {k} do not meet in a point")
        verts.append(np.linalg.solve(a, c[idx]))
    return simplex_from_vertices(np.array(verts), tol=tol)


def regular_simplex(scale: float = 1.0, tol: Tolerance = DEFAULT_TOL) -> NullFaced4Polytope:
    """Maximally regular null-faced 4-simplex: 3 equator and 2 pole vertices."""
    _check_scale(scale)
    a, s3 = scale, math.sqrt(3.0)
    v = np.array([
        [0.0, -s3 * a, -a, 0.0],
        [0.0, s3 * a, -a, 0.0],
        [0.0, 0.0, 2 * a, 0.0],
        [a, 0.0, 0.0, -a],
        [a, 0.0, 0.0, a],
    ])
    return simplex_from_vertices(v, ("e1", "e2", "e3", "p1", "p2"), tol)


# --- tetrahedral diamond -----------------------------------------------------

def _spacelike_frame(base, tol):
    """Orthonormal spatial basis of the base hyperplane and its future unit normal."""
    d = base[1:] - base[0]
    n = levi_civita_contract(*d)
    scale = float(np.prod(np.linalg.norm(d, axis=1)))
    if np.linalg.norm(n) <= tol.rel_eps * scale:
        raise DegenerateBase("base tetrahedron is degenerate")
    t = n @ np.diag([-1.0, 1.0, 1.0, 1.0])  # raise
    if causal_class(t, tol) is not CausalClass.TIMELIKE:
        raise NonSpacelikeBase("base tetrahedron does not span a spacelike hyperplane")
    t = t / math.sqrt(-float(minkowski_dot(t, t)))
    if t[0] < 0:
        t = -t
    # Gram-Schmidt in the Minkowski metric, positive definite on the base
    frame = []
    for x in d:
        y = x.copy()
        for f in frame:
            y = y - float(minkowski_dot(y, f)) * f
        y = y / math.sqrt(float(minkowski_dot(y, y)))
        frame.append(y)
    return np.array(frame), t


def insphere(base, tol: Tolerance = DEFAULT_TOL):
    """Centre and radius of the sphere inscribed in a spacelike tetrahedron.

    Uses the incentre formula: vertices weighted by the areas of the
    opposite faces, radius = 3 * volume / total area.
    """
    b = as_vector(base)
    if b.shape != (4, 4):
        raise ValueError("base needs 4 vertices")
    frame, _ = _spacelike_frame(b, tol)
    x = (b - b[0]) @ np.diag([-1.0, 1.0, 1.0, 1.0]) @ frame.T
    areas = np.empty(4)
    for i in range(4):
        a, bb, c = x[[j for j in range(4) if j != i]]
        areas[i] = 0.5 * np.linalg.norm(np.cross(bb - a, c - a))
    vol = abs(np.linalg.det(x[1:] - x[0])) / 6.0
    if vol <= tol.rel_eps * float(np.max(np.linalg.norm(x, axis=1))) ** 3:
        raise DegenerateBase("base tetrahedron has zero volume")
    centre = (areas @ b) / areas.sum()
    return centre, 3.0 * vol / areas.sum()


def base_volume(base, tol: Tolerance = DEFAULT_TOL) -> float:
    b = as_vector(base)
    frame, _ = _spacelike_frame(b, tol)
    x = (b[1:] - b[0]) @ np.diag([-1.0, 1.0, 1.0, 1.0]) @ frame.T
    return abs(float(np.linalg.det(x))) / 6.0


def tetrahedral_diamond(base, tol: Tolerance = DEFAULT_TOL) -> NullFaced4Polytope:
    """Diamond bounded by the null hyperplanes through the faces of a spacelike base.

    Vertex order: ``i`` (initial), ``b1..b4``, ``f`` (final). The initial and
    final vertices sit on the base normal through the incentre, at a proper
    time equal to the inradius.
    """
    b = as_vector(base)
    _, t = _spacelike_frame(b, tol)
    centre, r = insphere(b, tol)
    v = np.vstack([centre - r * t, b, centre + r * t])
    sets = []
    for apex in (0, 5):
        for k in range(4):
            sets.append((apex,) + tuple(1 + j for j in range(4) if j != k))
    return assemble(v, ("i", "b1", "b2", "b3", "b4", "f"), sets, Family.DIAMOND, tol)


def regular_diamond_base(scale: float = 1.0) -> np.ndarray:
    _check_scale(scale)
    a, s2, s6 = scale, math.sqrt(2.0), math.sqrt(6.0)
    return np.array([
        [0.0, -s6 * a, -s2 * a, -a],
        [0.0, s6 * a, -s2 * a, -a],
        [0.0, 0.0, 2 * s2 * a, -a],
        [0.0, 0.0, 0.0, 3 * a],
    ])


def regular_diamond(scale: float = 1.0, tol: Tolerance = DEFAULT_TOL) -> NullFaced4Polytope:
    return tetrahedral_diamond(regular_diamond_base(scale), tol)


def diamond_volume(base, tol: Tolerance = DEFAULT_TOL) -> float:
    """Closed form r V / 2 (inradius times base volume over two)."""
    _, r = insphere(base, tol)
    return 0.5 * r * base_volume(base, tol)


def diamond_halves(p: NullFaced4Polytope):
    """Hull volumes of the initial and final 4-simplices sharing the base."""
    b = p.vertices[1:5]
    out = []
    for apex in (p.vertices[0], p.vertices[5]):
        out.append(abs(float(np.linalg.det(np.vstack([b[1:] - b[0], [apex - b[0]]])))) / 24.0)
    return tuple(out)


# --- parallelotope -----------------------------------------------------------

#: Binary vertex patterns in lexicographic order; bit i says which
#: hyperface of pair i the vertex belongs to (0: the one through the origin).
PATTERNS = tuple(itertools.product((0, 1), repeat=4))


def hyperface_triple_normals(gens) -> np.ndarray:
    """Raw contractions for the four hyperfaces through the origin; row i omits gens[i]."""
    g = np.asarray(gens, dtype=float)
    return np.array([levi_civita_contract(*g[[j for j in range(4) if j != i]]) for i in range(4)])


def parallelotope_from_generators(origin, gens, tol: Tolerance = DEFAULT_TOL) -> NullFaced4Polytope:
    """Parallelotope origin + sum s_i gens[i], s in {0,1}^4, with null hyperfaces.

    Hyperface 2*i + s is the set of vertices with s_i == s. Vertex labels
    are p/f 4-tuples recording, for each pair, whether the vertex lies on
    the past or the future member.
    """
    o = as_vector(origin)
    g = as_vector(gens)
    if g.shape != (4, 4):
        raise ValueError("need four generators")
    for i in range(4):
        if causal_class(g[i], tol) is not CausalClass.SPACELIKE:
            raise NonSpacelikeGenerator(i)
    if abs(np.linalg.det(g)) <= tol.rel_eps * np.prod(np.linalg.norm(g, axis=1)):
        raise DependentGenerators("generators are linearly dependent")
    for i, n in enumerate(hyperface_triple_normals(g)):
        if causal_class(n, tol) is not CausalClass.NULL:
            raise NonNullHyperface(2 * i)
    s = np.array(PATTERNS, dtype=float)
    v = o + s @ g
    sets = []
    for i in range(4):
        for side in (0, 1):
            sets.append(tuple(k for k, pat in enumerate(PATTERNS) if pat[i] == side))
    p = assemble(v, tuple(range(16)), sets, Family.PARALLELOTOPE, tol)
    past_side = [0 if p.hyperfaces[2 * i].label == "past" else 1 for i in range(4)]
    labels = tuple("".join("p" if pat[i] == past_side[i] else "f" for i in range(4)) for pat in PATTERNS)
    return NullFaced4Polytope(p.vertices, labels, p.hyperfaces, p.faces, p.edges, p.family)


def regular_parallelotope_generators(scale: float = 1.0) -> np.ndarray:
    """Edges from pppp to fppp, pfpp, ppfp, pppf."""
    _check_scale(scale)
    h = math.sqrt(3.0) / 2.0
    signs = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]], dtype=float)
    return scale * np.column_stack([np.full(4, 0.5), h * signs])


def regular_parallelotope(scale: float = 1.0, tol: Tolerance = DEFAULT_TOL) -> NullFaced4Polytope:
    """The doubly-null parallelotope with initial vertex at (-scale, 0, 0, 0)."""
    g = regular_parallelotope_generators(scale)
    return parallelotope_from_generators(np.array([-scale, 0.0, 0.0, 0.0]), g, tol)


def parallelotope_generators(p: NullFaced4Polytope):
    """(origin, gens) of a parallelotope built by :func:`parallelotope_from_generators`."""
    o = p.vertices[0]
    return o, np.array([p.vertices[PATTERNS.index(tuple(int(k == i) for k in range(4)))] - o
                        for i in range(4)])
