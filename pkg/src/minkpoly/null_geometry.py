"""Null hyperplanes, planar images and null polyhedra.

A null hyperplane is foliated by parallel lightrays. Its intrinsic metric
only sees the 2d space of rays, so every metric quantity of a null
polyhedron (edge lengths, face areas, angles) can be read off its
*planar image*: the projection that collapses each lightray to a point.

Hyperplane coordinates ``(u, x1, x2)`` are attached to every
:class:`NullHyperplane`: ``u`` is the affine parameter along the ray
direction (normalized to unit time component) and ``x1, x2`` are
Cartesian coordinates of the quotient plane.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import (
    DEFAULT_TOL,
    CausalClass,
    Tolerance,
    as_vector,
    causal_class,
    minkowski_dot,
)
from .errors import (
    ConvexityViolation,
    DegenerateFace,
    NonPositiveScale,
    NonSpacelikeEdge,
    NotNullDirection,
    NotNullSpan,
    PointOffPlane,
)

PAST = "past"
FUTURE = "future"


@dataclass(frozen=True, eq=False)
class NullHyperplane:
    """The plane ``{x : normal . x = offset}`` with a null normal covector.

    The normal is stored with ``normal[0] == -1`` so that the raised normal,
    which is also the ray direction, is future-pointing.
    """

    normal: np.ndarray
    offset: float
    e1: np.ndarray
    e2: np.ndarray
    ray_dir: np.ndarray

    @classmethod
    def from_normal(cls, normal, offset: float = 0.0, tol: Tolerance = DEFAULT_TOL):
        n = as_vector(normal)
        if causal_class(n, tol) is not CausalClass.NULL:
            raise NotNullDirection("hyperplane normal is not null")
        s = -1.0 / n[0]
        n, offset = n * s, offset * s
        # snap the spatial part to unit length; the offset shifts by O(eps)
        k = n[1:] / np.linalg.norm(n[1:])
        n = np.concatenate([[-1.0], k])
        e1, e2 = _quotient_frame(k)
        ray = np.concatenate([[1.0], k])
        return cls(n, float(offset), e1, e2, ray)

    @property
    def base_point(self) -> np.ndarray:
        return np.array([-self.offset, 0.0, 0.0, 0.0])

    def residual(self, point) -> float:
        return float(self.normal @ as_vector(point) - self.offset)

    def contains(self, point, tol: Tolerance = DEFAULT_TOL) -> bool:
        p = as_vector(point)
        return abs(self.residual(p)) <= tol.rel_eps * max(1.0, float(np.linalg.norm(p))) + tol.abs_eps

    def coords(self, points) -> np.ndarray:
        """Hyperplane coordinates (u, x1, x2) of points assumed to lie in the plane."""
        d = np.atleast_2d(as_vector(points)) - self.base_point
        return np.column_stack([d[:, 0], d[:, 1:] @ self.e1[1:], d[:, 1:] @ self.e2[1:]])

    def from_coords(self, coords) -> np.ndarray:
        c = np.atleast_2d(np.asarray(coords, dtype=float))
        return (self.base_point + c[:, :1] * self.ray_dir + c[:, 1:2] * self.e1
                + c[:, 2:3] * self.e2)


def _quotient_frame(k):
    """Orthonormal spatial pair orthogonal to the unit 3-vector k.

    Seeded from the spatial axis least aligned with k, so the frame is the
    same on every run and platform.
    """
    axis = np.zeros(3)
    axis[int(np.argmin(np.abs(k)))] = 1.0
    a = axis - (axis @ k) * k
    a /= np.linalg.norm(a)
    b = np.cross(k, a)
    return np.concatenate([[0.0], a]), np.concatenate([[0.0], b])


def hyperplane_through(point, null_dir, tol: Tolerance = DEFAULT_TOL) -> NullHyperplane:
    """The unique null hyperplane containing the lightray point + s * null_dir."""
    d = as_vector(null_dir)
    if causal_class(d, tol) is not CausalClass.NULL:
        raise NotNullDirection("direction is not a nonzero null vector")
    ray = d / d[0]
    normal = ray * np.array([-1.0, 1.0, 1.0, 1.0])
    return NullHyperplane.from_normal(normal, float(normal @ as_vector(point)), tol)


def hyperplane_from_points(points, tol: Tolerance = DEFAULT_TOL) -> NullHyperplane:
    """Null hyperplane spanned by 4 or more points (affine hull must be null)."""
    p = np.atleast_2d(as_vector(points))
    edges = p[1:] - p[0]
    if len(edges) < 3:
        raise NotNullSpan("need at least 4 points")
    # the normal covector annihilates every edge: smallest right singular vector
    _, s, vt = np.linalg.svd(edges)
    if s[2] <= tol.rel_eps * s[0]:
        raise NotNullSpan("points do not span a hyperplane")
    n = vt[-1]
    if causal_class(n, tol) is not CausalClass.NULL:
        raise NotNullSpan("affine hull is not a null hyperplane")
    plane = NullHyperplane.from_normal(n, float(n @ p[0]), tol)
    if not all(plane.contains(x, tol) for x in p):
        raise NotNullSpan("points are not coplanar")
    return plane


@dataclass(frozen=True, eq=False)
class PlanarImage:
    points: np.ndarray
    labels: tuple

    def __post_init__(self):
        if not np.all(np.isfinite(self.points)):
            raise ValueError("non-finite image point")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("image labels must be unique")

    def __getitem__(self, label):
        return self.points[self.labels.index(label)]


def planar_image(points, host: NullHyperplane, labels: Sequence | None = None,
                 tol: Tolerance = DEFAULT_TOL) -> PlanarImage:
    p = np.atleast_2d(as_vector(points))
    for i, q in enumerate(p):
        if not host.contains(q, tol):
            raise PointOffPlane(i)
    if labels is None:
        labels = tuple(range(len(p)))
    return PlanarImage(host.coords(p)[:, 1:], tuple(labels))


def apply_hyperplane_symmetry(p, host: NullHyperplane, translation=(0.0, 0.0), angle: float = 0.0,
                              u_shift: float = 0.0, u_scale: float = 1.0, u_shear=(0.0, 0.0),
                              tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Act on a point of ``host`` with the 7-parameter hyperplane symmetry.

    The quotient coordinates undergo a Euclidean motion (rotation by
    ``angle``, then ``translation``) and the ray coordinate maps as
    ``u -> u_scale * u + u_shear . x + u_shift`` using the original x.
    """
    p = as_vector(p)
    if not host.contains(p, tol):
        raise PointOffPlane(0)
    if u_scale <= 0:
        raise NonPositiveScale("u_scale must be positive")
    u, x1, x2 = host.coords(p)[0]
    c, s = math.cos(angle), math.sin(angle)
    nx1 = c * x1 - s * x2 + translation[0]
    nx2 = s * x1 + c * x2 + translation[1]
    nu = u_scale * u + u_shear[0] * x1 + u_shear[1] * x2 + u_shift
    return host.from_coords([nu, nx1, nx2])[0]


def _cross2(a, b):
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


# --- null tetrahedra ---------------------------------------------------------

@dataclass(frozen=True, eq=False)
class NullTetrahedron:
    """Face ``i`` is the triangle opposite vertex ``i``.

    ``face_areas`` are signed: positive when the outgoing ray direction of
    the face is future-pointing.
    """

    vertices: np.ndarray
    host: NullHyperplane
    face_areas: np.ndarray
    tetra_type: tuple

    @property
    def face_labels(self):
        return tuple(FUTURE if s > 0 else PAST for s in self.face_areas)

    @property
    def area_residual(self) -> float:
        return float(abs(self.face_areas.sum()))

    def image(self) -> PlanarImage:
        return PlanarImage(self.host.coords(self.vertices)[:, 1:], tuple(range(4)))


def _image_scale(img):
    return float(np.max(np.linalg.norm(img - img.mean(axis=0), axis=1)))


def build_null_tetrahedron(vertices, tol: Tolerance = DEFAULT_TOL) -> NullTetrahedron:
    v = as_vector(vertices)
    if v.shape != (4, 4):
        raise ValueError("need exactly 4 vertices")
    host = hyperplane_from_points(v, tol)
    q = host.coords(v)
    img = q[:, 1:]
    scale = _image_scale(img)
    for e, (i, j) in enumerate(itertools.combinations(range(4), 2)):
        if causal_class(v[j] - v[i], tol) is not CausalClass.SPACELIKE:
            raise NonSpacelikeEdge(e)
    areas = np.empty(4)
    for i in range(4):
        a, b, c = (q[j] for j in range(4) if j != i)
        n = np.cross(b - a, c - a)
        if np.dot(n, q[i] - a) > 0:
            n = -n
        # n[0] is twice the signed image area; outward n with n_u > 0 means future
        if abs(n[0]) <= tol.rel_eps * scale ** 2 + tol.abs_eps:
            raise DegenerateFace(i)
        areas[i] = 0.5 * n[0]
    n_past = int(np.sum(areas < 0))
    return NullTetrahedron(v.copy(), host, areas, (n_past, 4 - n_past))


def _canonical_u(img, u):
    """Ray coordinates with the affine part removed and a fixed normalization.

    Any u -> lam*u + lam_a x^a + u0 with lam > 0 leaves the result unchanged.
    """
    a = np.column_stack([np.ones(len(img)), img])
    coef, *_ = np.linalg.lstsq(a, u, rcond=None)
    r = u - a @ coef
    rn = np.linalg.norm(r)
    if rn == 0:
        raise NotNullSpan("vertices are coplanar in the hyperplane")
    rms = math.sqrt(np.mean(np.sum((img - img.mean(axis=0)) ** 2, axis=1)))
    return r / rn * rms


def canonicalize_in_hyperplane(t: NullTetrahedron, tol: Tolerance = DEFAULT_TOL) -> NullTetrahedron:
    """Representative of the tetrahedron's congruence class inside its host.

    The planar image is kept; the ray coordinates are replaced by the part of
    ``u`` orthogonal to affine functions of the image, scaled to the RMS
    image radius. Two tetrahedra with the same image that differ only by
    shifts along rays (within the symmetry group, lam > 0) canonicalize to
    the same vertices.
    """
    q = t.host.coords(t.vertices)
    u = _canonical_u(q[:, 1:], q[:, 0])
    return build_null_tetrahedron(t.host.from_coords(np.column_stack([u, q[:, 1:]])), tol)


def _default_host():
    return hyperplane_through(np.zeros(4), [1.0, 0.0, 0.0, 1.0])


def regular_null_tetrahedron(kind=(1, 3), scale: float = 1.0, host: NullHyperplane | None = None,
                             tol: Tolerance = DEFAULT_TOL) -> NullTetrahedron:
    """Maximally regular null tetrahedron of type (1,3), (3,1) or (2,2).

    (1,3): image is an equilateral triangle of side ``scale`` plus its
    centroid. (2,2): image is a square of side ``scale`` with both
    diagonals as edges.
    """
    if scale <= 0:
        raise NonPositiveScale("scale must be positive")
    host = host or _default_host()
    kind = tuple(kind)
    if kind in ((1, 3), (3, 1)):
        ang = np.pi / 2 + 2 * np.pi * np.arange(3) / 3
        corners = scale / math.sqrt(3) * np.column_stack([np.cos(ang), np.sin(ang)])
        img = np.vstack([corners, [0.0, 0.0]])
    elif kind == (2, 2):
        img = 0.5 * scale * np.array([[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]])
    else:
        raise ValueError(f"unknown tetrahedron type {kind}")
    u = _canonical_u(img, np.array([0.0, 0.0, 0.0, 1.0]) if kind != (2, 2) else np.array([1.0, 0, 1.0, 0]))
    t = build_null_tetrahedron(host.from_coords(np.column_stack([u, img])), tol)
    if t.tetra_type != kind:
        t = build_null_tetrahedron(host.from_coords(np.column_stack([-u, img])), tol)
    return t


# --- null parallelepipeds ----------------------------------------------------

#: Face order: past triple (bc, ca, ab) at the initial vertex, then the
#: opposing future triple. Each entry is (spanning edge ids, offset edge id).
PARALLELEPIPED_FACES = (((1, 2), None), ((2, 0), None), ((0, 1), None),
                        ((1, 2), 0), ((2, 0), 1), ((0, 1), 2))


@dataclass(frozen=True, eq=False)
class NullParallelepiped:
    initial_vertex: np.ndarray
    edges: np.ndarray
    host: NullHyperplane
    face_areas: np.ndarray

    @property
    def vertices(self) -> np.ndarray:
        """8 vertices ordered by the binary pattern (s_a, s_b, s_c)."""
        s = np.array(list(itertools.product((0, 1), repeat=3)), dtype=float)
        return self.initial_vertex + s @ self.edges

    @property
    def final_vertex(self) -> np.ndarray:
        return self.initial_vertex + self.edges.sum(axis=0)

    @property
    def face_labels(self):
        return (PAST,) * 3 + (FUTURE,) * 3

    def edge_images(self) -> np.ndarray:
        return self.host.coords(self.initial_vertex + self.edges)[:, 1:] - \
            self.host.coords(self.initial_vertex)[0, 1:]

    def image(self) -> PlanarImage:
        return PlanarImage(self.host.coords(self.vertices)[:, 1:], tuple(range(8)))

    @property
    def area_residual(self) -> float:
        return float(abs(self.face_areas.sum()))


def _barycentric_origin(a, b, c):
    """Barycentric coordinates of the origin in the triangle (a, b, c)."""
    w = np.array([_cross2(b, c), _cross2(c, a), _cross2(a, b)])
    total = w.sum()
    if total == 0:
        return None
    return w / total


def build_null_parallelepiped(initial, edges, tol: Tolerance = DEFAULT_TOL) -> NullParallelepiped:
    """Parallelepiped from a vertex and its three edge vectors.

    The given vertex may be either the initial or the final vertex; in the
    latter case the shape is re-anchored at the true initial vertex.
    """
    o = as_vector(initial)
    e = as_vector(edges)
    if e.shape != (3, 4):
        raise ValueError("need three edge vectors")
    host = hyperplane_from_points(np.vstack([o, o + e]), tol)
    for i in range(3):
        if causal_class(e[i], tol) is not CausalClass.SPACELIKE:
            raise NonSpacelikeEdge(i)
    q = host.coords(o + e) - host.coords(o)
    img = q[:, 1:]
    bary = _barycentric_origin(*img)
    if bary is None or np.any(bary <= tol.abs_eps):
        raise ConvexityViolation("vertex is not inside the image triangle of its neighbours")
    d = float(np.linalg.det(q))
    if d == 0:
        raise NotNullSpan("edges are coplanar")
    # faces at o are past iff the ray direction points into the solid
    if np.sign(_cross2(img[1], img[2])) != np.sign(d):
        o = o + e.sum(axis=0)
        e = -e
        img = -img
    areas = np.array([_cross2(img[j], img[k]) for (j, k), _ in PARALLELEPIPED_FACES[:3]])
    areas = np.abs(areas)
    return NullParallelepiped(o, e.copy(), host, np.concatenate([-areas, areas]))


def is_doubly_null(p: NullParallelepiped, tol: Tolerance = DEFAULT_TOL) -> bool:
    img = p.edge_images()
    scale = float(np.max(np.linalg.norm(img, axis=1)))
    return float(np.linalg.norm(img.sum(axis=0))) <= tol.rel_eps * scale + tol.abs_eps


def regular_doubly_null_parallelepiped(scale: float = 1.0, host: NullHyperplane | None = None,
                                       tol: Tolerance = DEFAULT_TOL) -> NullParallelepiped:
    """Doubly-null parallelepiped with a regular-hexagon image and unit rhombi angles 2pi/3."""
    if scale <= 0:
        raise NonPositiveScale("scale must be positive")
    host = host or _default_host()
    ang = np.pi / 2 + 2 * np.pi * np.arange(3) / 3
    img = scale * np.column_stack([np.cos(ang), np.sin(ang)])
    q = np.column_stack([np.full(3, scale), img])
    o = host.base_point
    return build_null_parallelepiped(o, host.from_coords(q) - o, tol)


# --- shape degrees of freedom ------------------------------------------------

def _pair_sq_distances(pts):
    pts = pts.reshape(-1, 2)
    i, j = np.triu_indices(len(pts), 1)
    d = pts[i] - pts[j]
    return np.sum(d * d, axis=1)


def _numerical_rank(f, x, h, rtol=1e-6):
    cols = []
    for k in range(len(x)):
        dx = np.zeros_like(x)
        dx[k] = h
        cols.append((f(x + dx) - f(x - dx)) / (2 * h))
    s = np.linalg.svd(np.column_stack(cols), compute_uv=False)
    return int(np.sum(s > rtol * s[0]))


def planar_shape_rank(image_points, h: float = 1e-5) -> int:
    """Rank of the map from image coordinates to congruence invariants.

    The invariants are all pairwise squared distances; their Jacobian rank
    counts the shape degrees of freedom of the planar image (5 for a
    generic null tetrahedron).
    """
    x = np.asarray(image_points, dtype=float).ravel()
    return _numerical_rank(_pair_sq_distances, x, h * max(1.0, np.abs(x).max()))


def parallelepiped_shape_rank(edge_images, doubly_null: bool = False, h: float = 1e-5) -> int:
    """Shape degrees of freedom of a parallelepiped image.

    With ``doubly_null`` the third edge image is tied to ``-(a + b)`` and
    the rank is taken on that constraint manifold.
    """
    e = np.asarray(edge_images, dtype=float)

    def hexagon(x):
        a, b = x[0:2], x[2:4]
        c = -(a + b) if doubly_null else x[4:6]
        s = np.array(list(itertools.product((0, 1), repeat=3)), dtype=float)
        return _pair_sq_distances(s @ np.array([a, b, c]))

    x = e[:2].ravel() if doubly_null else e.ravel()
    return _numerical_rank(hexagon, x, h * max(1.0, np.abs(x).max()))


def triangle_area_2d(a, b, c) -> float:
    return 0.5 * abs(float(_cross2(np.asarray(b) - a, np.asarray(c) - a)))


def hyperplane_interval(p, q) -> float:
    """Length between two points of one null hyperplane (spacelike or zero)."""
    return math.sqrt(max(float(minkowski_dot(np.asarray(q) - p, np.asarray(q) - p)), 0.0))
