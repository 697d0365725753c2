"""Null hyperplanes, null polyhedra and null-faced 4-polytopes in Minkowski spacetime.

Conventions: metric diag(-1, 1, 1, 1), vectors as length-4 arrays (t, x, y, z),
covectors with lower indices, eps_{0123} = +1.
"""
from .core import (
    DEFAULT_TOL,
    EPSILON,
    ETA,
    CausalClass,
    Tolerance,
    causal_class,
    levi_civita_contract,
    minkowski_dot,
    timelike_parallelogram_area_check,
    volume_normal,
)
from .errors import MinkPolyError
from .null_geometry import (
    NullHyperplane,
    build_null_parallelepiped,
    build_null_tetrahedron,
    hyperplane_from_points,
    hyperplane_through,
    is_doubly_null,
    planar_image,
    regular_doubly_null_parallelepiped,
    regular_null_tetrahedron,
)

__version__ = "0.1.0"
