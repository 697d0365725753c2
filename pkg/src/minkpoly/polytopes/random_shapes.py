"""Seeded generators of random valid simplices, diamonds and parallelotopes."""
from __future__ import annotations

import itertools

import numpy as np

from ..core import DEFAULT_TOL, ETA, EPSILON, Tolerance, random_lorentz, random_null_direction
from ..errors import MinkPolyError
from ..null_geometry import NullHyperplane
from .families import (
    hyperface_triple_normals,
    parallelotope_from_generators,
    regular_parallelotope_generators,
    simplex_from_hyperplanes,
    tetrahedral_diamond,
)
from .polytope import NullFaced4Polytope, hull_volume_oracle

_MAX_ATTEMPTS = 1000


def _well_conditioned(p: NullFaced4Polytope, min_ratio: float) -> bool:
    d = p.vertices[:, None, :] - p.vertices[None, :, :]
    span = float(np.max(np.linalg.norm(d, axis=-1)))
    return hull_volume_oracle(p) >= min_ratio * span ** 4


def random_simplex(rng: np.random.Generator, min_angle: float = 0.1, min_volume_ratio: float = 1e-6,
                   tol: Tolerance = DEFAULT_TOL) -> NullFaced4Polytope:
    """Simplex bounded by 5 null hyperplanes with isotropic directions and offsets in [-1, 1]."""
    for _ in range(_MAX_ATTEMPTS):
        k = np.array([random_null_direction(rng)[1:] for _ in range(5)])
        cos = np.clip(k @ k.T, -1.0, 1.0)
        iu = np.triu_indices(5, 1)
        if np.min(np.arccos(cos[iu])) < min_angle:
            continue
        offsets = rng.uniform(-1.0, 1.0, 5)
        planes = [NullHyperplane.from_normal(np.concatenate([[-1.0], k[i]]), offsets[i], tol) for i in range(5)]
        try:
            p = simplex_from_hyperplanes(planes, tol)
        except MinkPolyError:
            continue
        n_past = sum(h.label == "past" for h in p.hyperfaces)
        if n_past not in (2, 3) or not _well_conditioned(p, min_volume_ratio):
            continue
        return p
    raise RuntimeError("no valid simplex drawn")


def random_diamond(rng: np.random.Generator, max_rapidity: float = 1.0, min_volume_ratio: float = 1e-3,
                   tol: Tolerance = DEFAULT_TOL) -> NullFaced4Polytope:
    """Diamond over a random base tetrahedron in a randomly boosted spacelike hyperplane."""
    for _ in range(_MAX_ATTEMPTS):
        x = rng.uniform(-1.0, 1.0, (4, 3))
        vol = abs(np.linalg.det(x[1:] - x[0])) / 6.0
        span = max(np.linalg.norm(a - b) for a, b in itertools.combinations(x, 2))
        if vol < min_volume_ratio * span ** 3:
            continue
        lam = random_lorentz(rng, max_rapidity)
        base = np.column_stack([np.zeros(4), x]) @ lam.T + rng.uniform(-1.0, 1.0, 4)
        try:
            return tetrahedral_diamond(base, tol)
        except MinkPolyError:
            continue
    raise RuntimeError("no valid diamond drawn")


def null_constraints(gens) -> np.ndarray:
    """n.n for the four triple normals; zero iff every hyperface is null."""
    n = hyperface_triple_normals(gens)
    return np.einsum("im,mn,in->i", n, ETA, n)


def null_constraints_jacobian(gens) -> np.ndarray:
    """d(n_i.n_i)/d(gens), shape (4, 16)."""
    g = np.asarray(gens, dtype=float)
    jac = np.zeros((4, 4, 4))
    n = hyperface_triple_normals(g)
    for i in range(4):
        a, b, c = [j for j in range(4) if j != i]
        w = 2.0 * ETA @ n[i]
        jac[i, a] = np.einsum("m,mnrs,r,s->n", w, EPSILON, g[b], g[c])
        jac[i, b] = np.einsum("m,mnrs,n,s->r", w, EPSILON, g[a], g[c])
        jac[i, c] = np.einsum("m,mnrs,n,r->s", w, EPSILON, g[a], g[b])
    return jac.reshape(4, 16)


def newton_project(x0, residual, jacobian, atol: float, max_iter: int = 50):
    """Minimum-norm Gauss-Newton projection onto {residual(x) = 0}.

    Returns (x, converged). Each step is the least-squares solution of the
    linearized system, halved until the residual norm decreases.
    """
    x = np.array(x0, dtype=float)
    r = residual(x)
    for _ in range(max_iter):
        if np.max(np.abs(r)) <= atol:
            return x, True
        step, *_ = np.linalg.lstsq(jacobian(x), -r, rcond=None)
        t = 1.0
        while t > 1e-6:
            trial = x + t * step
            rt = residual(trial)
            if np.linalg.norm(rt) < np.linalg.norm(r):
                x, r = trial, rt
                break
            t *= 0.5
        else:
            return x, False
    return x, bool(np.max(np.abs(r)) <= atol)


def random_parallelotope(rng: np.random.Generator, perturbation: float = 0.2, max_rapidity: float = 1.0,
                         min_volume_ratio: float = 1e-3, tol: Tolerance = DEFAULT_TOL) -> NullFaced4Polytope:
    """Parallelotope from a perturbed regular shape projected back onto the 4 nullness constraints.

    A random Lorentz transformation and translation are applied afterwards.
    """
    base = regular_parallelotope_generators()
    for _ in range(_MAX_ATTEMPTS):
        g0 = base + perturbation * rng.standard_normal((4, 4))
        g, ok = newton_project(
            g0.ravel(),
            lambda x: null_constraints(x.reshape(4, 4)),
            lambda x: null_constraints_jacobian(x.reshape(4, 4)),
            atol=1e-14,
        )
        if not ok:
            continue
        lam = random_lorentz(rng, max_rapidity)
        gens = g.reshape(4, 4) @ lam.T
        origin = rng.uniform(-1.0, 1.0, 4)
        try:
            p = parallelotope_from_generators(origin, gens, tol)
        except MinkPolyError:
            continue
        if not _well_conditioned(p, min_volume_ratio):
            continue
        return p
    raise RuntimeError("no valid parallelotope drawn")
