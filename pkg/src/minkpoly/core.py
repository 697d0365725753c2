"""Minkowski linear algebra in signature (-,+,+,+).

Vectors and covectors are plain float arrays of shape (4,) ordered (t, x, y, z).
Covectors always carry lower indices; use :func:`lower` and :func:`raise_index`
to move between the two placements explicitly.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import AmbiguousOrientation, DegenerateSpan, NotNull

ETA = np.diag([-1.0, 1.0, 1.0, 1.0])
ETA.setflags(write=False)


def _perm_sign(p):
    sign = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def _levi_civita():
    eps = np.zeros((4, 4, 4, 4))
    for p in itertools.permutations(range(4)):
        eps[p] = _perm_sign(p)
    return eps


#: Fully antisymmetric symbol with lower indices, eps[0, 1, 2, 3] = +1.
EPSILON = _levi_civita()
EPSILON.setflags(write=False)


@dataclass(frozen=True)
class Tolerance:
    """Relative tolerance with an absolute floor, used by every causal test."""

    rel_eps: float = 1e-9
    abs_eps: float = 1e-12

    def __post_init__(self):
        if not (0 < self.abs_eps <= self.rel_eps < 1e-3):
            raise ValueError(
                f"need 0 < abs_eps <= rel_eps < 1e-3, got {self.abs_eps}, {self.rel_eps}"
            )


DEFAULT_TOL = Tolerance()


class CausalClass(enum.Enum):
    TIMELIKE = "timelike"
    NULL = "null"
    SPACELIKE = "spacelike"
    ZERO = "zero"


def vec(t, x, y, z) -> np.ndarray:
    return np.array([t, x, y, z], dtype=float)


def as_vector(v) -> np.ndarray:
    a = np.asarray(v, dtype=float)
    if a.shape[-1:] != (4,):
        raise ValueError(f"expected trailing dimension 4, got shape {a.shape}")
    if not np.isfinite(a).all():
        raise ValueError("non-finite component")
    return a


def lower(v) -> np.ndarray:
    """Vector -> covector (applies eta)."""
    return as_vector(v) @ ETA


def raise_index(c) -> np.ndarray:
    """Covector -> vector (applies the inverse metric, equal to eta)."""
    return as_vector(c) @ ETA


def minkowski_dot(u, v):
    """-u_t v_t + u_x v_x + u_y v_y + u_z v_z (broadcasts over leading axes)."""
    u = as_vector(u)
    v = as_vector(v)
    return -u[..., 0] * v[..., 0] + np.sum(u[..., 1:] * v[..., 1:], axis=-1)


def covector_dot(a, b):
    """eta^{mu nu} a_mu b_nu for two covectors."""
    return minkowski_dot(a, b)


def pair(c, v):
    """Natural pairing c_mu v^mu of a covector with a vector (no metric)."""
    return float(np.dot(as_vector(c), as_vector(v)))


def interval(v) -> float:
    """Signed length: sqrt(v.v) for spacelike, -sqrt(-v.v) for timelike."""
    s = float(minkowski_dot(v, v))
    return math.copysign(math.sqrt(abs(s)), s)


def causal_class(v, tol: Tolerance = DEFAULT_TOL) -> CausalClass:
    v = as_vector(v)
    if np.all(np.abs(v) <= tol.abs_eps):
        return CausalClass.ZERO
    s = float(minkowski_dot(v, v))
    if abs(s) <= tol.rel_eps * float(v @ v):
        return CausalClass.NULL
    return CausalClass.TIMELIKE if s < 0 else CausalClass.SPACELIKE


def is_null(v, tol: Tolerance = DEFAULT_TOL) -> bool:
    return causal_class(v, tol) is CausalClass.NULL


def is_future(v) -> bool:
    return as_vector(v)[0] > 0


def levi_civita_contract(a, b, c) -> np.ndarray:
    """Raw contraction eps_{mu nu rho sigma} a^nu b^rho c^sigma (a covector)."""
    return np.einsum("mnrs,n,r,s->m", EPSILON, as_vector(a), as_vector(b), as_vector(c))


def volume_normal(a, b, c, outgoing_witness, weight: float = 1.0 / 6.0,
                  tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Outgoing volume normal covector of the tetrahedron spanned by a, b, c.

    ``weight`` multiplies the raw contraction. The default 1/3! makes the
    normal of a triangulated hyperface equal to the sum of its tetrahedra,
    so a parallelepiped gets weight 1 in total. The sign is chosen so the
    pairing with ``outgoing_witness`` is positive.
    """
    a, b, c, w = (as_vector(x) for x in (a, b, c, outgoing_witness))
    raw = levi_civita_contract(a, b, c)
    scale = (np.linalg.norm(a) * np.linalg.norm(b) * np.linalg.norm(c))
    if scale == 0 or np.linalg.norm(raw) <= tol.rel_eps * scale:
        raise DegenerateSpan("edge vectors are linearly dependent")
    p = float(raw @ w)
    if abs(p) <= tol.rel_eps * np.linalg.norm(raw) * np.linalg.norm(w):
        raise AmbiguousOrientation("witness is tangent to the hyperface")
    return weight * raw if p > 0 else -weight * raw


def normal_zero_sum_residual(normals: Sequence) -> float:
    """Euclidean norm of the componentwise sum of the covectors."""
    arr = np.atleast_2d(np.asarray(normals, dtype=float))
    if arr.size == 0:
        raise ValueError("empty normal list")
    return float(np.linalg.norm(arr.sum(axis=0)))


class TimelikeAreaCheck(NamedTuple):
    """Both sides of the timelike-parallelogram identity.

    ``area`` is the magnitude of the bivector (l1 ^ l2)/sqrt(2), obtained from
    its full index contraction; ``neg_dot`` is -eta^{mu nu} l1_mu l2_nu.
    The identity states ``area == |neg_dot|``; ``neg_dot`` is positive when
    both covectors have the same time orientation.
    """

    area: float
    neg_dot: float

    def agrees(self, rel: float = 1e-10, abs_: float = 1e-300) -> bool:
        return abs(self.area - abs(self.neg_dot)) <= rel * max(self.area, abs(self.neg_dot)) + abs_


def timelike_parallelogram_area_check(l1, l2, tol: Tolerance = DEFAULT_TOL) -> TimelikeAreaCheck:
    l1 = as_vector(l1)
    l2 = as_vector(l2)
    for i, l in enumerate((l1, l2)):
        if causal_class(l, tol) is not CausalClass.NULL:
            raise NotNull(f"covector {i + 1} is not null")
    f_low = (np.outer(l1, l2) - np.outer(l2, l1)) / math.sqrt(2.0)
    f_up = ETA @ f_low @ ETA
    square = float(np.sum(f_low * f_up))
    return TimelikeAreaCheck(math.sqrt(abs(square)), -float(covector_dot(l1, l2)))


# Poincare generators, used for isometry tests and rank computations.

def lorentz_generators() -> list[np.ndarray]:
    """Six generators K (vector transformation dv = K v): 3 boosts, 3 rotations."""
    gens = []
    for i in range(1, 4):
        k = np.zeros((4, 4))
        k[0, i] = k[i, 0] = 1.0
        gens.append(k)
    for i, j in ((2, 3), (3, 1), (1, 2)):
        k = np.zeros((4, 4))
        k[i, j], k[j, i] = -1.0, 1.0
        gens.append(k)
    return gens


def boost(rapidity: float, direction) -> np.ndarray:
    n = np.asarray(direction, dtype=float)
    n = n / np.linalg.norm(n)
    ch, sh = math.cosh(rapidity), math.sinh(rapidity)
    m = np.eye(4)
    m[0, 0] = ch
    m[0, 1:] = m[1:, 0] = sh * n
    m[1:, 1:] += (ch - 1.0) * np.outer(n, n)
    return m


def rotation(axis, angle: float) -> np.ndarray:
    n = np.asarray(axis, dtype=float)
    n = n / np.linalg.norm(n)
    k = np.array([[0, -n[2], n[1]], [n[2], 0, -n[0]], [-n[1], n[0], 0]])
    r = np.eye(3) + math.sin(angle) * k + (1 - math.cos(angle)) * k @ k
    m = np.eye(4)
    m[1:, 1:] = r
    return m


def random_lorentz(rng: np.random.Generator, max_rapidity: float = 2.0) -> np.ndarray:
    """Random proper orthochronous Lorentz matrix with rapidity <= max_rapidity."""
    axis = rng.normal(size=3)
    b_dir = rng.normal(size=3)
    return boost(rng.uniform(0, max_rapidity), b_dir) @ rotation(axis, rng.uniform(0, 2 * math.pi))


def random_null_direction(rng: np.random.Generator) -> np.ndarray:
    """Future null vector (1, k) with k uniform on the unit sphere."""
    k = rng.normal(size=3)
    k /= np.linalg.norm(k)
    return np.concatenate([[1.0], k])
