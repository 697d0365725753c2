import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import mdot
from minkpoly.core import random_null_direction
from minkpoly.errors import (
    ConvexityViolation,
    DegenerateFace,
    NonPositiveScale,
    NonSpacelikeEdge,
    NotNullDirection,
    NotNullSpan,
    PointOffPlane,
)
from minkpoly.null_geometry import (
    NullHyperplane,
    apply_hyperplane_symmetry,
    build_null_parallelepiped,
    build_null_tetrahedron,
    canonicalize_in_hyperplane,
    hyperplane_from_points,
    hyperplane_interval,
    hyperplane_through,
    is_doubly_null,
    parallelepiped_shape_rank,
    planar_image,
    planar_shape_rank,
    regular_doubly_null_parallelepiped,
    regular_null_tetrahedron,
)

T_EQ_Z = hyperplane_through([0, 0, 0, 0], [1, 0, 0, 1])


def random_host(rng):
    return NullHyperplane.from_normal(-random_null_direction(rng) * [1, -1, -1, -1], rng.uniform(-1, 1))


def tetra_from(host, img, u):
    return build_null_tetrahedron(host.from_coords(np.column_stack([u, img])))


def parallelepiped_from(host, edge_images, u=(1.0, 1.0, 1.0)):
    o = host.base_point
    e = host.from_coords(np.column_stack([u, edge_images])) - o
    return build_null_parallelepiped(o, e)


# --- hyperplanes -------------------------------------------------------------

def test_plane_through_origin():
    assert np.allclose(T_EQ_Z.normal, [-1, 0, 0, 1])
    assert T_EQ_Z.offset == 0
    assert np.allclose(T_EQ_Z.ray_dir, [1, 0, 0, 1])


def test_plane_translated():
    p = hyperplane_through([1, 0, 0, 0], [1, 0, 0, 1])
    assert np.allclose(p.normal, T_EQ_Z.normal)
    assert p.contains([1, 0, 0, 0]) and p.contains([3, 5, -1, 2])
    assert not p.contains([0, 0, 0, 0])


def test_plane_rejects_non_null():
    with pytest.raises(NotNullDirection):
        hyperplane_through([0, 0, 0, 0], [0, 1, 0, 0])


def test_frame(rng):
    for _ in range(20):
        h = random_host(rng)
        e1, e2, k = h.e1, h.e2, h.ray_dir
        assert mdot(e1, e1) == pytest.approx(1) and mdot(e2, e2) == pytest.approx(1)
        assert abs(mdot(e1, e2)) < 1e-12 and abs(mdot(e1, k)) < 1e-12 and abs(mdot(e2, k)) < 1e-12
        assert abs(mdot(k, k)) < 1e-12 and k[0] > 0
        # tangent to the plane
        for v in (e1, e2, k):
            assert abs(h.normal @ v) < 1e-12


def test_plane_from_points_rejects_spacelike_span():
    pts = [[0, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    with pytest.raises(NotNullSpan):
        hyperplane_from_points(pts)


# --- planar images and symmetries -------------------------------------------

def test_image_of_regular_13():
    t = regular_null_tetrahedron((1, 3), 1.0)
    img = planar_image(t.vertices, t.host).points
    d = {round(float(np.linalg.norm(img[i] - img[j])), 12) for i, j in itertools.combinations(range(4), 2)}
    assert d == {1.0, round(1 / math.sqrt(3), 12)}
    corners = [i for i in range(4) if np.linalg.norm(img[i] - img.mean(axis=0)) > 1e-9]
    assert len(corners) == 3


def test_image_collapses_rays():
    h = T_EQ_Z
    p = h.from_coords([0.3, 1.0, -2.0])[0]
    img = planar_image([p, p + 2.5 * h.ray_dir], h).points
    assert np.allclose(img[0], img[1])


def test_image_off_plane():
    with pytest.raises(PointOffPlane) as exc:
        planar_image([[0, 0, 0, 0], [1, 0, 0, 0]], T_EQ_Z)
    assert exc.value.index == 1


def test_image_of_regular_parallelepiped():
    pp = regular_doubly_null_parallelepiped(1.0)
    img = planar_image(pp.vertices, pp.host).points
    c = img.mean(axis=0)
    r = np.linalg.norm(img - c, axis=1)
    assert np.sum(r < 1e-12) == 2
    ring = img[r > 1e-12] - c
    assert np.allclose(np.linalg.norm(ring, axis=1), 1.0)
    ang = np.sort(np.arctan2(ring[:, 1], ring[:, 0]))
    assert np.allclose(np.diff(ang), math.pi / 3)


def test_symmetry_identity_and_ray_shift():
    p = T_EQ_Z.from_coords([0.2, 0.5, -1.0])[0]
    assert np.allclose(apply_hyperplane_symmetry(p, T_EQ_Z), p)
    assert np.allclose(apply_hyperplane_symmetry(p, T_EQ_Z, u_shift=1.0), p + np.array([1, 0, 0, 1]))


def test_symmetry_u_scale_keeps_image(rng):
    h = random_host(rng)
    pts = h.from_coords(rng.normal(size=(10, 3)))
    out = np.array([apply_hyperplane_symmetry(p, h, u_scale=2.0, u_shear=(0.3, -1.0), u_shift=4.0) for p in pts])
    assert np.allclose(planar_image(out, h).points, planar_image(pts, h).points)
    assert all(h.contains(x) for x in out)


def test_symmetry_errors():
    with pytest.raises(NonPositiveScale):
        apply_hyperplane_symmetry(np.zeros(4), T_EQ_Z, u_scale=0.0)
    with pytest.raises(PointOffPlane):
        apply_hyperplane_symmetry([1, 0, 0, 0], T_EQ_Z)


def test_symmetry_is_isometry(rng):
    h = random_host(rng)
    p, q = h.from_coords(rng.normal(size=(2, 3)))
    args = dict(translation=(0.4, -0.2), angle=1.1, u_shift=0.5, u_scale=3.0, u_shear=(1.0, 2.0))
    p2, q2 = (apply_hyperplane_symmetry(x, h, **args) for x in (p, q))
    assert hyperplane_interval(p2, q2) == pytest.approx(hyperplane_interval(p, q), rel=1e-10)


# --- tetrahedra --------------------------------------------------------------

def test_regular_13_areas():
    t = regular_null_tetrahedron((1, 3), 1.0)
    a = math.sqrt(3) / 4
    areas = np.sort(t.face_areas)
    assert areas[0] == pytest.approx(-a)
    assert np.allclose(areas[1:], a / 3)
    assert t.tetra_type == (1, 3)
    assert t.area_residual <= 1e-15


def test_regular_22_faces():
    t = regular_null_tetrahedron((2, 2), 1.0)
    assert t.tetra_type == (2, 2)
    assert np.allclose(np.abs(t.face_areas), 0.5)
    assert t.area_residual <= 1e-15
    for i in range(4):
        a, b, c = (t.vertices[j] for j in range(4) if j != i)
        sides = sorted(hyperplane_interval(x, y) for x, y in ((a, b), (b, c), (a, c)))
        assert sides[0] == pytest.approx(sides[1]) and sides[2] == pytest.approx(math.sqrt(2) * sides[0])


def test_regular_tetra_homogeneity():
    for kind in ((1, 3), (2, 2)):
        t1, t2 = regular_null_tetrahedron(kind, 1.0), regular_null_tetrahedron(kind, 2.0)
        assert np.allclose(t2.image().points, 2 * t1.image().points)
    with pytest.raises(NonPositiveScale):
        regular_null_tetrahedron((1, 3), 0.0)


def test_tetra_errors():
    with pytest.raises(NotNullSpan):
        build_null_tetrahedron([[0, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    h = T_EQ_Z
    with pytest.raises(NonSpacelikeEdge):
        tetra_from(h, [[0, 0], [0, 0], [1, 0], [0, 1]], [0, 1, 0, 0])
    with pytest.raises(DegenerateFace):
        tetra_from(h, [[0, 0], [1, 0], [2, 0], [0, 1]], [0, 1, 0, 0])


def random_tetra(rng, host=None):
    host = host or random_host(rng)
    while True:
        img = rng.normal(size=(4, 2))
        u = rng.normal(size=4)
        try:
            return tetra_from(host, img, u)
        except (NonSpacelikeEdge, DegenerateFace, NotNullSpan):
            continue


def test_random_tetra_invariants(rng):
    types = set()
    for _ in range(200):
        t = random_tetra(rng)
        total = np.abs(t.face_areas).sum()
        assert t.area_residual <= 1e-10 * total
        past = -t.face_areas[t.face_areas < 0].sum()
        fut = t.face_areas[t.face_areas > 0].sum()
        assert past == pytest.approx(fut, rel=1e-10)
        img = t.image().points
        for i, j in itertools.combinations(range(4), 2):
            assert hyperplane_interval(t.vertices[i], t.vertices[j]) == pytest.approx(
                np.linalg.norm(img[i] - img[j]), rel=1e-9)
        types.add(t.tetra_type)
    assert types == {(1, 3), (3, 1), (2, 2)}


def test_signed_area_independent_oracle(rng):
    t = random_tetra(rng)
    for i in range(4):
        a, b, c = (t.vertices[j] for j in range(4) if j != i)
        u, v = b - a, c - a
        area = 0.5 * math.sqrt(max(mdot(u, u) * mdot(v, v) - mdot(u, v) ** 2, 0.0))
        assert abs(t.face_areas[i]) == pytest.approx(area, rel=1e-9)


def test_tetra_shape_rank(rng):
    for _ in range(10):
        assert planar_shape_rank(rng.normal(size=(4, 2))) == 5


@given(st.floats(0.2, 5.0), st.floats(-2, 2), st.floats(-2, 2), st.floats(-3, 3))
@settings(max_examples=30, deadline=None)
def test_canonical_form_is_congruence_invariant(lam, s1, s2, u0):
    base = regular_null_tetrahedron((1, 3), 1.0)
    q = base.host.coords(base.vertices)
    perturbed = tetra_from(base.host, q[:, 1:], q[:, 0] + np.array([0.1, -0.3, 0.2, 0.05]))
    qq = perturbed.host.coords(perturbed.vertices)
    img = qq[:, 1:]
    moved = tetra_from(perturbed.host, img, lam * qq[:, 0] + img @ [s1, s2] + u0)
    c1 = canonicalize_in_hyperplane(perturbed)
    c2 = canonicalize_in_hyperplane(moved)
    assert np.allclose(c1.vertices, c2.vertices, atol=1e-9)


def test_canonicalize_idempotent_and_image_preserving(rng):
    for _ in range(20):
        t = random_tetra(rng)
        c = canonicalize_in_hyperplane(t)
        assert np.allclose(c.image().points, t.image().points)
        assert np.allclose(canonicalize_in_hyperplane(c).vertices, c.vertices)
        assert c.tetra_type == t.tetra_type


def test_ray_shift_keeps_image():
    t = regular_null_tetrahedron((2, 2), 1.0)
    shifted = build_null_tetrahedron(t.vertices + np.outer([1, 2, 3, 4], t.host.ray_dir))
    assert np.allclose(planar_image(shifted.vertices, t.host).points, t.image().points)


# --- parallelepipeds ---------------------------------------------------------

def test_regular_parallelepiped():
    pp = regular_doubly_null_parallelepiped(1.0)
    assert is_doubly_null(pp)
    assert np.allclose(np.abs(pp.face_areas), math.sqrt(3) / 2)
    v = pp.vertices
    lengths = [hyperplane_interval(v[i], v[j]) for i, j in itertools.combinations(range(8), 2)
               if bin(i ^ j).count("1") == 1]
    assert len(lengths) == 12 and np.allclose(lengths, 1.0)
    # rhombi with angles 2pi/3, pi/3
    e = pp.edges
    for a, b in itertools.combinations(range(3), 2):
        cos = mdot(e[a], e[b]) / math.sqrt(mdot(e[a], e[a]) * mdot(e[b], e[b]))
        assert abs(cos) == pytest.approx(0.5)
    d = pp.final_vertex - pp.initial_vertex
    assert abs(mdot(d, d)) < 1e-12 and d[0] > 0
    assert list(pp.face_labels).count("past") == 3


def test_parallelepiped_convexity():
    with pytest.raises(ConvexityViolation):
        parallelepiped_from(T_EQ_Z, [[1, 0], [0, 1], [1, 1]])
    # origin strictly inside the triangle of these images: accepted
    pp = parallelepiped_from(T_EQ_Z, [[1, 0], [0, 1], [-2, -2]])
    assert not is_doubly_null(pp)


def test_parallelepiped_reanchors_at_initial_vertex():
    pp = parallelepiped_from(T_EQ_Z, [[1, 0], [-0.5, 0.8], [-0.4, -0.9]], u=(-1.0, -0.5, -0.7))
    assert list(pp.face_labels[:3]) == ["past"] * 3
    assert np.all(pp.face_areas[:3] < 0) and np.all(pp.face_areas[3:] > 0)


def test_parallelepiped_eq3(rng):
    for _ in range(50):
        ang = np.sort(rng.uniform(0, 2 * math.pi, 3))
        if np.max(np.diff(np.append(ang, ang[0] + 2 * math.pi))) >= math.pi:
            continue  # origin must be inside the image triangle
        img = rng.uniform(0.5, 2.0, (3, 1)) * np.column_stack([np.cos(ang), np.sin(ang)])
        pp = parallelepiped_from(random_host(rng), img, u=rng.normal(size=3))
        past = -pp.face_areas[:3].sum()
        assert past == pytest.approx(pp.face_areas[3:].sum(), rel=1e-12)
        assert pp.area_residual <= 1e-10 * np.abs(pp.face_areas).sum()


def test_doubly_null_detection():
    generic = parallelepiped_from(T_EQ_Z, [[1.0, 0.0], [-0.5, 0.9], [-0.2, -0.8]])  # image sum (0.3, 0.1)
    assert not is_doubly_null(generic)
    s3 = math.sqrt(3) / 2
    img = np.array([[1.0, 0.0], [-0.5, s3], [-0.5, -s3]])
    assert is_doubly_null(parallelepiped_from(T_EQ_Z, img))
    img[0, 0] += 1e-8
    assert not is_doubly_null(parallelepiped_from(T_EQ_Z, img))


def test_doubly_null_shape_rank():
    pp = regular_doubly_null_parallelepiped(1.0)
    assert parallelepiped_shape_rank(pp.edge_images(), doubly_null=True) == 3
    # six image coordinates minus one planar rotation
    assert parallelepiped_shape_rank(pp.edge_images()) == 5


def test_parallelepiped_errors():
    with pytest.raises(NonPositiveScale):
        regular_doubly_null_parallelepiped(-1.0)
