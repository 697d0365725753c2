"""
Is the doubly-null parallelotope unique?
========================================

Random null-faced parallelotopes are pushed onto the doubly-null
conditions; every solution found should have equal edge lengths. Leaving
one hyperface pair unconstrained shows that the test can fail.
"""

from minkpoly.polytopes import doubly_null_uniqueness_probe

full = doubly_null_uniqueness_probe(100, seed=42)
print("all four pairs:", full.as_dict()["converged"], "converged, max edge spread", full.max_spread)

relaxed = doubly_null_uniqueness_probe(100, seed=42, doubly_null_pairs=(0, 1, 2))
spreads = sorted(t.edge_spread for t in relaxed.converged)
print("three pairs:   ", len(spreads), "converged, spread range", spreads[0], "to", spreads[-1])
