"""
The tetrahedral diamond
=======================

Null hyperplanes through the faces of a spacelike tetrahedron close off a
diamond with one initial and one final vertex.
"""

from minkpoly.polytopes import (
    causal_profile,
    diamond_halves,
    diamond_volume,
    hull_volume_oracle,
    insphere,
    regular_diamond,
    regular_diamond_base,
    tessellation_obstruction_check,
)

base = regular_diamond_base(1.0)
centre, r = insphere(base)
print("inradius", r, "centre", centre)

p = regular_diamond(1.0)
print("initial", p.vertex("i"), " final", p.vertex("f"))
print("volume: hull", hull_volume_oracle(p), " closed form", diamond_volume(base))
print("two simplex halves", diamond_halves(p))
print("edge lengths", sorted(set(p.edge_lengths().round(9).tolist())))
print("face areas  ", sorted(set(p.face_areas().round(9).tolist())))
print("profile", causal_profile(p).as_dict())
print("obstruction", tessellation_obstruction_check(p))
