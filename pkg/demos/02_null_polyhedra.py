"""
Null tetrahedra and null parallelepipeds
========================================

Every face of a polyhedron inside a null hyperplane is past or future
oriented, and the signed face areas cancel.
"""

import math

import numpy as np

from minkpoly.null_geometry import (
    build_null_parallelepiped,
    build_null_tetrahedron,
    canonicalize_in_hyperplane,
    hyperplane_through,
    is_doubly_null,
    regular_doubly_null_parallelepiped,
    regular_null_tetrahedron,
)

for kind in ((1, 3), (2, 2)):
    t = regular_null_tetrahedron(kind, 1.0)
    print(kind, "signed areas", np.round(t.face_areas, 6), "sum", t.face_areas.sum())

# canonical form: the same tetrahedron after an arbitrary ray reparametrisation
t = regular_null_tetrahedron((1, 3), 1.0)
q = t.host.coords(t.vertices)
u = 3.0 * q[:, 0] + q[:, 1:] @ [0.5, -2.0] + 1.0
other = build_null_tetrahedron(t.host.from_coords(np.column_stack([u, q[:, 1:]])))
print("congruent after canonicalisation:",
      np.allclose(canonicalize_in_hyperplane(t).vertices, canonicalize_in_hyperplane(other).vertices))

# a generic parallelepiped in t = z, anchored at its initial vertex
plane = hyperplane_through([0, 0, 0, 0], [1, 0, 0, 1])
edges = plane.from_coords([[1.0, 1.0, 0.0], [0.5, -0.5, 0.9], [0.2, -0.2, -0.8]]) - plane.base_point
pp = build_null_parallelepiped(plane.base_point, edges)
print("generic: doubly null?", is_doubly_null(pp), " areas", np.round(pp.face_areas, 4))

# the regular doubly-null one: final vertex on the ray of the initial vertex
reg = regular_doubly_null_parallelepiped(1.0)
d = reg.final_vertex - reg.initial_vertex
print("regular: doubly null?", is_doubly_null(reg), " face area", reg.face_areas[3], "vs", math.sqrt(3) / 2)
print("initial-to-final displacement", np.round(d, 6))
