"""
The doubly-null parallelotope
=============================

Sixteen vertices labelled by past/future membership in four hyperface pairs,
stacked in five equally spaced time levels.
"""

import numpy as np

from minkpoly.polytopes import (
    Family,
    causal_levels,
    causal_profile,
    dof_rank,
    gram_matrix,
    hull_volume_oracle,
    random_parallelotope,
    regular_parallelotope,
    tessellation_obstruction_check,
    volume_from_gram,
)

p = regular_parallelotope(1.0)
for level, ids in causal_levels(p).items():
    print(level, "future hyperfaces:", [p.labels[i] for i in ids], "t =", p.vertices[ids[0]][0])

print("volume", hull_volume_oracle(p), volume_from_gram(gram_matrix(p)))
print("edges", set(p.edge_lengths().round(12).tolist()), " faces", set(p.face_areas().round(12).tolist()))
print("profile", causal_profile(p).as_dict())
print("obstruction", tessellation_obstruction_check(p))
print("shape degrees of freedom", dof_rank(Family.PARALLELOTOPE, p))

# a nearby null-faced parallelotope that is no longer doubly null
q = random_parallelotope(np.random.default_rng(1))
print("random: edge lengths", np.unique(q.edge_lengths().round(4)))
