from .polytope import (
    Edge,
    Face,
    Family,
    Hyperface,
    NullFaced4Polytope,
    assemble,
    hull_volume_oracle,
    spacelike_polygon_area,
)
from .families import (
    PATTERNS,
    base_volume,
    hyperface_triple_normals,
    regular_diamond_base,
    diamond_halves,
    diamond_volume,
    insphere,
    parallelotope_from_generators,
    parallelotope_generators,
    regular_diamond,
    regular_parallelotope,
    regular_parallelotope_generators,
    regular_simplex,
    simplex_from_hyperplanes,
    simplex_from_vertices,
    tetrahedral_diamond,
)
from .formulas import (
    default_basis,
    AreaMatrix,
    GramMatrix,
    area_matrix_direct,
    face_areas_from_gram,
    gram_matrix,
    volume_from_area_matrix,
    volume_from_gram,
)
from .analysis import (
    CausalProfile,
    causal_levels,
    causal_profile,
    dof_rank,
    hyperface_polyhedron,
    signature_sequence,
    tessellation_obstruction_check,
)
from .random_shapes import random_diamond, random_parallelotope, random_simplex
from .uniqueness import ProbeReport, doubly_null_uniqueness_probe, edge_spread, solve_doubly_null
