"""Numerical probe: is the parallelotope with doubly-null hyperfaces unique?

Hyperface pair i is spanned by the generators other than i. It is
doubly-null when the sum s of its three generators is null and orthogonal
to each of them, i.e. g_j . s = 0 for the three j; summing those gives
s . s = 0. The probe projects random null-faced parallelotopes onto this
system and measures how far the resulting edge lengths spread.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..core import ETA
from .random_shapes import newton_project, null_constraints, null_constraints_jacobian, random_parallelotope
from .families import parallelotope_generators


def _doubly_null_residuals(g, pairs, ref):
    out = []
    for i in pairs:
        trip = [j for j in range(4) if j != i]
        s = g[trip].sum(axis=0)
        out.extend(float(g[j] @ ETA @ s) / ref for j in trip)
    return out


def _doubly_null_jacobian(g, pairs, ref):
    rows = []
    for i in pairs:
        trip = [j for j in range(4) if j != i]
        s = g[trip].sum(axis=0)
        for j in trip:
            row = np.zeros((4, 4))
            for k in trip:
                row[k] = ETA @ g[j]
            row[j] += ETA @ s
            rows.append(row.ravel() / ref)
    return np.array(rows)


@dataclass
class ProbeTrial:
    trial: int
    converged: bool
    residual: float
    edge_spread: float | None
    note: str = ""


@dataclass
class ProbeReport:
    doubly_null_pairs: tuple
    null_pairs: tuple
    trials: list = field(default_factory=list)

    @property
    def converged(self) -> list:
        return [t for t in self.trials if t.converged]

    @property
    def max_spread(self) -> float:
        return max((t.edge_spread for t in self.converged), default=float("nan"))

    def as_dict(self) -> dict:
        return {
            "doubly_null_pairs": list(self.doubly_null_pairs),
            "null_pairs": list(self.null_pairs),
            "trials": len(self.trials),
            "converged": len(self.converged),
            "max_edge_spread": self.max_spread,
            "non_convergence": [t.trial for t in self.trials if not t.converged],
        }


def edge_spread(gens) -> float:
    """(max - min) / mean of the generator lengths; every edge is a translate of one."""
    g = np.asarray(gens, dtype=float)
    sq = np.einsum("im,mn,in->i", g, ETA, g)
    if np.any(sq <= 0):
        return float("inf")
    length = np.sqrt(sq)
    return float((length.max() - length.min()) / length.mean())


def solve_doubly_null(gens, doubly_null_pairs=(0, 1, 2, 3), null_pairs=None, atol: float = 1e-13):
    """Project generators onto the chosen doubly-null (and plain null) constraints.

    Returns (gens, converged, residual).
    """
    dn = tuple(doubly_null_pairs)
    nl = tuple(i for i in (null_pairs or ()) if i not in dn)
    g0 = np.asarray(gens, dtype=float)
    ref = float(np.mean(np.sum(g0 * g0, axis=1)))

    def residual(x):
        g = x.reshape(4, 4)
        r = _doubly_null_residuals(g, dn, ref)
        if nl:
            r.extend(null_constraints(g)[list(nl)] / ref ** 3)
        return np.array(r)

    def jacobian(x):
        g = x.reshape(4, 4)
        j = _doubly_null_jacobian(g, dn, ref)
        if nl:
            j = np.vstack([j, null_constraints_jacobian(g)[list(nl)] / ref ** 3])
        return j

    x, ok = newton_project(g0.ravel(), residual, jacobian, atol=atol, max_iter=100)
    return x.reshape(4, 4), ok, float(np.max(np.abs(residual(x))))


def doubly_null_uniqueness_probe(trials: int, seed: int, doubly_null_pairs=(0, 1, 2, 3),
                                 null_pairs=None, perturbation: float = 0.3) -> ProbeReport:
    """Project ``trials`` random null-faced parallelotopes onto the doubly-null system.

    Relaxing ``doubly_null_pairs`` to fewer than four pairs (with the other
    pairs left free) is the negative control: its solutions need not be
    equilateral.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    report = ProbeReport(tuple(doubly_null_pairs), tuple(null_pairs or ()))
    for t in range(trials):
        _, g0 = parallelotope_generators(random_parallelotope(rng, perturbation=perturbation))
        g, ok, res = solve_doubly_null(g0, doubly_null_pairs, null_pairs)
        note = ""
        if ok:
            vol = abs(np.linalg.det(g)) / np.prod(np.linalg.norm(g, axis=1))
            if vol < 1e-6:
                ok, note = False, "collapsed to a degenerate parallelotope"
        else:
            note = "no convergence"
        report.trials.append(ProbeTrial(t, ok, res, edge_spread(g) if ok else None, note))
    return report
