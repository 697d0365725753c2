"""
Tiling and the lightray lattice
===============================

Translating the regular parallelotope by its generators fills spacetime.
Keeping only the null hyperface diagonals leaves a lattice of nodes joined
along four ray directions.
"""

import numpy as np

from minkpoly.tiling import (
    extract_lightray_lattice,
    generate_tiling,
    tetrahedral_direction_check,
    translation_invariance_check,
    verify_face_lightcross,
    verify_lattice,
)

block = generate_tiling((3, 3, 3, 3))
print(block.summary())

lc = verify_face_lightcross(block)
print("faces with four hyperfaces:", lc.interior_faces, " violations:", len(lc.violations))

lat = extract_lightray_lattice(block)
print("degree histogram", lat.degree_histogram())
print("interior nodes", len(lat.interior_nodes()), verify_lattice(lat).as_dict())

node = lat.interior_nodes()[0]
for other, d, side in sorted(lat.incident(node), key=lambda x: (x[1], x[2])):
    print(f"  ray {d} {side:6s} -> {block.vertices[other] - block.vertices[node]}")

rep = tetrahedral_direction_check(lat)
print("spatial ray cosines\n", np.round(rep.cosines, 12))
print("same neighbourhood at every interior node:", translation_invariance_check(lat))
