"""Volume and face-area formulas from scalar products of volume normals."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..core import DEFAULT_TOL, ETA, Tolerance
from ..errors import DependentBasis, FamilyUnsupported, SingularAreaMatrix, SingularGram
from ..null_geometry import PAST
from .polytope import Family, NullFaced4Polytope

#: Prefactor of the normal products, and (volume, area) formula constants
#: keyed by family: Omega = vol_c * |det L|^(1/6), s = |L| / (area_c * |det L|^(1/6)),
#: Omega = svol_c * |det S|^(1/2).
_FAMILY_CONSTANTS = {
    Family.SIMPLEX: dict(kappa=36.0, vol_c=1.0 / 24.0, area_c=2.0, svol_c=1.0 / 6.0),
    Family.PARALLELOTOPE: dict(kappa=1.0, vol_c=1.0, area_c=1.0, svol_c=1.0),
}


def _constants(family):
    try:
        return _FAMILY_CONSTANTS[family]
    except KeyError:
        raise FamilyUnsupported(f"no normal-product formulas for {family.value}") from None


@dataclass(frozen=True, eq=False)
class GramMatrix:
    L: np.ndarray
    basis: tuple
    labels: tuple  # past/future label of each basis hyperface
    family: Family

    def expected_signs(self) -> np.ndarray:
        """+1 for past-future pairs, -1 for past-past / future-future, 0 on the diagonal."""
        lab = np.array([1 if x == PAST else -1 for x in self.labels])
        s = -np.outer(lab, lab)
        np.fill_diagonal(s, 0)
        return s

    def sign_violations(self) -> int:
        off = ~np.eye(4, dtype=bool)
        return int(np.sum(np.sign(self.L[off]) != self.expected_signs()[off]))

    def diagonal_residual(self) -> float:
        return float(np.max(np.abs(np.diag(self.L))) / np.max(np.abs(self.L)))


@dataclass(frozen=True, eq=False)
class AreaMatrix:
    S: np.ndarray
    basis: tuple
    family: Family


def default_basis(p: NullFaced4Polytope) -> tuple:
    """First four hyperfaces for a simplex, the four past hyperfaces for a parallelotope."""
    if p.family is Family.SIMPLEX:
        return (0, 1, 2, 3)
    if p.family is Family.PARALLELOTOPE:
        return tuple(k for k, h in enumerate(p.hyperfaces) if h.label == PAST)
    raise FamilyUnsupported(f"no normal-product formulas for {p.family.value}")


def gram_matrix(p: NullFaced4Polytope, basis: Sequence[int] | None = None,
                tol: Tolerance = DEFAULT_TOL) -> GramMatrix:
    """kappa * eta^{mu nu} l_mu l_nu over four hyperface normals."""
    c = _constants(p.family)
    basis = tuple(default_basis(p) if basis is None else basis)
    if len(basis) != 4 or len(set(basis)) != 4:
        raise DependentBasis("need four distinct hyperfaces")
    n = p.normals[list(basis)]
    norms = np.linalg.norm(n, axis=1)
    if abs(np.linalg.det(n)) <= 1e3 * tol.rel_eps * np.prod(norms):
        raise DependentBasis("hyperface normals are linearly dependent")
    L = c["kappa"] * n @ ETA @ n.T
    return GramMatrix(L, basis, tuple(p.hyperfaces[k].label for k in basis), p.family)


def _det_root(m, power, err, what):
    det = float(np.linalg.det(m))
    scale = float(np.max(np.abs(m))) ** 4
    if scale == 0 or abs(det) <= 1e-12 * scale:
        raise err(f"{what} is singular")
    return abs(det) ** power


def volume_from_gram(g: GramMatrix) -> float:
    c = _constants(g.family)
    return c["vol_c"] * _det_root(g.L, 1.0 / 6.0, SingularGram, "Gram matrix")


def face_areas_from_gram(g: GramMatrix) -> AreaMatrix:
    c = _constants(g.family)
    root = _det_root(g.L, 1.0 / 6.0, SingularGram, "Gram matrix")
    S = g.L / (c["area_c"] * root)
    np.fill_diagonal(S, 0.0)
    return AreaMatrix(S, g.basis, g.family)


def volume_from_area_matrix(s: AreaMatrix) -> float:
    c = _constants(s.family)
    return c["svol_c"] * _det_root(s.S, 0.5, SingularAreaMatrix, "area matrix")


def area_matrix_direct(p: NullFaced4Polytope, basis: Sequence[int] | None = None) -> AreaMatrix:
    """Signed face areas measured directly on the faces shared by basis hyperfaces."""
    basis = tuple(default_basis(p) if basis is None else basis)
    S = np.zeros((4, 4))
    for a in range(4):
        for b in range(a + 1, 4):
            f = p.face_between(basis[a], basis[b])
            if f is None:
                raise DependentBasis(f"hyperfaces {basis[a]} and {basis[b]} share no face")
            S[a, b] = S[b, a] = f.area if f.causal_pair == "PF" else -f.area
    return AreaMatrix(S, basis, p.family)
