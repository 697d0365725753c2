"""Causal profiles, tessellation counting and shape degrees of freedom."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import null_space
from scipy.spatial import ConvexHull

from ..core import ETA, lorentz_generators, levi_civita_contract
from ..errors import FamilyUnsupported, RankUnstable
from ..null_geometry import FUTURE, PAST
from .families import parallelotope_generators
from .polytope import Family, NullFaced4Polytope


def signature_sequence(hist: dict) -> tuple:
    """Nonzero counts ordered from most-past to most-future signature."""
    return tuple(hist[k] for k in sorted(hist, key=lambda s: (-s[0], s[1])) if hist[k])


def hyperface_polyhedron(p: NullFaced4Polytope, k: int):
    """Signed areas of the 2d faces of hyperface k, as a null polyhedron.

    Returns (signed_areas, (n_past, n_future)). Computed from the convex
    hull of the hyperface in its own (u, x1, x2) coordinates; a face is
    future when its outward normal has a positive ray component.
    """
    h = p.hyperfaces[k]
    q = h.plane.coords(p.vertices[list(h.vertex_ids)])
    hull = ConvexHull(q)
    span = float(np.ptp(q, axis=0).max())
    groups: dict = {}
    for tri, eq in zip(hull.simplices, hull.equations):
        a, b, c = q[tri]
        img = 0.5 * ((b[1] - a[1]) * (c[2] - a[2]) - (b[2] - a[2]) * (c[1] - a[1]))
        key = tuple(np.round(np.append(eq[:3], eq[3] / span), 7))
        groups[key] = groups.get(key, 0.0) + np.sign(eq[0]) * abs(img)
    areas = np.array(list(groups.values()))
    return areas, (int(np.sum(areas < 0)), int(np.sum(areas > 0)))


@dataclass
class CausalProfile:
    hyperface_counts: tuple          # (past, future)
    face_counts: tuple               # (PP, PF, FF)
    edge_signature_histogram: dict   # (n_past, n_future) -> count
    vertex_signature_histogram: dict
    hyperface_types: dict = field(default_factory=dict)  # label -> Counter of null-polyhedron types
    incidence_ok: bool | None = None
    time_reversed: bool = False

    @property
    def edge_counts(self) -> tuple:
        return signature_sequence(self.edge_signature_histogram)

    @property
    def vertex_counts(self) -> tuple:
        return signature_sequence(self.vertex_signature_histogram)

    def as_dict(self) -> dict:
        return {
            "hyperfaces": list(self.hyperface_counts),
            "faces": list(self.face_counts),
            "edges": list(self.edge_counts),
            "vertices": list(self.vertex_counts),
            "time_reversed": self.time_reversed,
            "incidence_ok": self.incidence_ok,
        }


def _swap(lab):
    return FUTURE if lab == PAST else PAST


def causal_profile(p: NullFaced4Polytope) -> CausalProfile:
    """Histogram of causal signatures, reported with past count <= future count."""
    labels = [h.label for h in p.hyperfaces]
    n_past = labels.count(PAST)
    reverse = n_past > len(labels) - n_past
    if reverse:
        labels = [_swap(x) for x in labels]

    def sig(ids):
        labs = [labels[k] for k in ids]
        return (labs.count(PAST), labs.count(FUTURE))

    faces = Counter()
    for f in p.faces:
        s = sig(f.hyperfaces)
        faces[{(2, 0): "PP", (1, 1): "PF", (0, 2): "FF"}[s]] += 1
    edges = Counter(sig(e.hyperfaces) for e in p.edges)
    verts = Counter(sig([k for k, h in enumerate(p.hyperfaces) if i in h.vertex_ids])
                    for i in range(len(p.vertices)))

    types: dict = {PAST: Counter(), FUTURE: Counter()}
    for k in range(len(p.hyperfaces)):
        _, t = hyperface_polyhedron(p, k)
        if reverse:
            t = t[::-1]
        types[labels[k]][t] += 1

    incidence = None
    if p.family is Family.SIMPLEX:
        # every pair of tetrahedra meets in exactly one triangle
        pairs = sorted(f.hyperfaces for f in p.faces)
        incidence = pairs == [(i, j) for i in range(5) for j in range(i + 1, 5)]
        incidence &= types[PAST] == Counter({(1, 3): 2}) and types[FUTURE] == Counter({(2, 2): 3})

    return CausalProfile(
        (labels.count(PAST), labels.count(FUTURE)),
        (faces["PP"], faces["PF"], faces["FF"]),
        dict(edges), dict(verts), types, incidence, reverse,
    )


def tessellation_obstruction_check(p: NullFaced4Polytope):
    """(past-future face count, past-past + future-future count, balanced?).

    Every 2d face of a tessellation with null hyperfaces carries as many
    past-future dihedral angles as past-past plus future-future ones, so a
    tile must be balanced in the same way.
    """
    pf = sum(1 for f in p.faces if f.causal_pair == "PF")
    other = len(p.faces) - pf
    return pf, other, pf == other


# --- degrees of freedom ------------------------------------------------------

def _normalized_null_residual(n):
    return float(n @ ETA @ n) / float(n @ n)


def _simplex_config(p):
    x = p.vertices.ravel().copy()

    def constraints(x):
        v = x.reshape(5, 4)
        out = []
        for k in range(5):
            w = v[[i for i in range(5) if i != k]]
            out.append(_normalized_null_residual(levi_civita_contract(*(w[1:] - w[0]))))
        return np.array(out)

    def isometries(x):
        v = x.reshape(5, 4)
        cols = [np.tile(np.eye(4)[m], 5) for m in range(4)]
        cols += [(v @ k.T).ravel() for k in lorentz_generators()]
        return np.column_stack(cols)

    return x, constraints, isometries


def _parallelotope_config(p):
    o, g = parallelotope_generators(p)
    x = np.concatenate([o, g.ravel()])

    def constraints(x):
        gg = x[4:].reshape(4, 4)
        return np.array([_normalized_null_residual(levi_civita_contract(*gg[[j for j in range(4) if j != i]]))
                         for i in range(4)])

    def isometries(x):
        pts = x.reshape(5, 4)
        cols = [np.concatenate([np.eye(4)[m], np.zeros(16)]) for m in range(4)]
        cols += [(pts @ k.T).ravel() for k in lorentz_generators()]
        return np.column_stack(cols)

    return x, constraints, isometries


def _rank(m, rtol):
    s = np.linalg.svd(m, compute_uv=False)
    return int(np.sum(s > rtol * s[0])) if s.size and s[0] > 0 else 0


def _dof_at_step(x, constraints, isometries, h, rtol):
    cols = []
    for k in range(len(x)):
        dx = np.zeros_like(x)
        dx[k] = h
        cols.append((constraints(x + dx) - constraints(x - dx)) / (2 * h))
    jac = np.array(cols).T
    rc = _rank(jac, rtol)
    kernel = null_space(jac, rcond=rtol)
    ri = _rank(kernel.T @ isometries(x), rtol)
    return len(x) - rc - ri


def dof_rank(family: Family, at: NullFaced4Polytope, rel_step: float = 1e-5, rtol: float = 1e-6) -> int:
    """Dimension of the shape space modulo isometries at a given polytope.

    Counts coordinates minus independent zero-volume constraints minus
    independent Poincare directions, with the constraint Jacobian taken by
    central differences. The count must agree for steps h and 10 h.
    """
    if family is not at.family:
        raise ValueError("family does not match the polytope")
    if family is Family.SIMPLEX:
        x, c, iso = _simplex_config(at)
    elif family is Family.PARALLELOTOPE:
        x, c, iso = _parallelotope_config(at)
    else:
        raise FamilyUnsupported(f"no degree-of-freedom count for {family.value}")
    h = rel_step * float(np.max(np.abs(x)) or 1.0)
    r1 = _dof_at_step(x, c, iso, h, rtol)
    r2 = _dof_at_step(x, c, iso, 10 * h, rtol)
    if r1 != r2:
        raise RankUnstable(f"rank {r1} at step {h:g} but {r2} at step {10 * h:g}")
    return r1


def causal_levels(p: NullFaced4Polytope) -> dict:
    """Vertex ids grouped by the number of future hyperfaces through them."""
    out: dict = {}
    for i in range(len(p.vertices)):
        out.setdefault(p.vertex_signature(i)[1], []).append(i)
    return dict(sorted(out.items()))
