"""
Null hyperplanes and their planar images
========================================

A null hyperplane contains a one-parameter family of parallel light rays.
Collapsing each ray to a point leaves an ordinary Euclidean plane.
"""

import numpy as np

from minkpoly import minkowski_dot
from minkpoly.null_geometry import apply_hyperplane_symmetry, hyperplane_interval, hyperplane_through, planar_image

# the plane t = z through the origin
plane = hyperplane_through([0, 0, 0, 0], [1, 0, 0, 1])
print("normal", plane.normal, "ray", plane.ray_dir)
print("frame e1.e1 =", minkowski_dot(plane.e1, plane.e1), " k.k =", minkowski_dot(plane.ray_dir, plane.ray_dir))

# points are addressed by (u, x1, x2): u runs along the ray
p, q = plane.from_coords([[0.0, 0.0, 0.0], [3.0, 1.0, 1.0]])
print("interval p-q:", hyperplane_interval(p, q), " image distance:", np.hypot(1, 1))

# sliding a point along its ray does not move its image
img = planar_image([p, p + 5 * plane.ray_dir], plane).points
print("images of p and p + 5k:", img.tolist())

# rescaling and shearing u is a symmetry of the plane that fixes every image
moved = apply_hyperplane_symmetry(q, plane, u_scale=2.0, u_shear=(1.0, -1.0), u_shift=0.5)
print("moved q still on plane:", plane.contains(moved))
print("image unchanged:", np.allclose(planar_image([moved], plane).points, planar_image([q], plane).points))
