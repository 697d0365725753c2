"""
The null-faced 4-simplex
========================

Three volume routes: a direct triangulation, the Gram matrix of hyperface
normals, and the matrix of signed face areas.
"""

import numpy as np

from minkpoly.polytopes import (
    area_matrix_direct,
    causal_profile,
    face_areas_from_gram,
    gram_matrix,
    hull_volume_oracle,
    random_simplex,
    regular_simplex,
    tessellation_obstruction_check,
    volume_from_area_matrix,
    volume_from_gram,
)

p = regular_simplex(1.0)
for label, v in zip(p.labels, p.vertices):
    print(f"{label}: {v}")

g = gram_matrix(p)
print("L =\n", np.round(g.L, 6))
print("sign violations:", g.sign_violations())

s = face_areas_from_gram(g)
print("hull      ", hull_volume_oracle(p))
print("gram      ", volume_from_gram(g))
print("areas     ", volume_from_area_matrix(s))
print("face areas from L match direct:", np.allclose(s.S, area_matrix_direct(p).S))

pr = causal_profile(p)
print("profile", pr.as_dict())
print("obstruction (PF, PP+FF, balanced):", tessellation_obstruction_check(p))

# the same identities on a random simplex
rng = np.random.default_rng(0)
q = random_simplex(rng)
print("random: hull", hull_volume_oracle(q), " gram", volume_from_gram(gram_matrix(q)))
