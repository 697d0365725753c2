import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import ETA, epsilon_contract_oracle, mdot
from minkpoly.core import (
    EPSILON,
    CausalClass,
    Tolerance,
    boost,
    causal_class,
    levi_civita_contract,
    lorentz_generators,
    minkowski_dot,
    normal_zero_sum_residual,
    random_lorentz,
    timelike_parallelogram_area_check,
    volume_normal,
)
from minkpoly.errors import AmbiguousOrientation, DegenerateSpan, NotNull
from minkpoly.polytopes import regular_parallelotope, regular_simplex

finite = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)
vectors = st.lists(finite, min_size=4, max_size=4).map(np.array)


def test_dot_examples():
    assert minkowski_dot([1, 0, 0, 0], [1, 0, 0, 0]) == -1
    assert minkowski_dot([1, 0, 0, 1], [1, 0, 0, 1]) == 0
    h = math.sqrt(3) / 2
    assert minkowski_dot([0.5, h, h, h], [0.5, h, h, h]) == pytest.approx(2.0, rel=1e-15)


@given(vectors, vectors, vectors, finite)
def test_dot_bilinear_symmetric(u, v, w, k):
    assert minkowski_dot(u, v) == pytest.approx(minkowski_dot(v, u), rel=1e-12, abs=1e-9)
    lhs = minkowski_dot(k * u + w, v)
    rhs = k * minkowski_dot(u, v) + minkowski_dot(w, v)
    assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-3)


def test_non_finite_rejected():
    with pytest.raises(ValueError):
        minkowski_dot([np.nan, 0, 0, 0], [1, 0, 0, 0])
    with pytest.raises(ValueError):
        causal_class([np.inf, 0, 0, 0])


def test_causal_classes():
    assert causal_class([1, 0, 0, 1]) is CausalClass.NULL
    assert causal_class([0, 1, 0, 0]) is CausalClass.SPACELIKE
    assert causal_class([2, 1, 0, 0]) is CausalClass.TIMELIKE
    assert causal_class([0, 0, 0, 0]) is CausalClass.ZERO
    h = math.sqrt(3) / 2
    assert causal_class([1.5, -h, -h, -h]) is CausalClass.NULL


def test_tolerance_bounds():
    Tolerance(1e-6, 1e-9)
    for bad in ((1e-9, 1e-6), (1e-2, 1e-9), (1e-9, 0.0)):
        with pytest.raises(ValueError):
            Tolerance(*bad)


def test_epsilon_convention():
    assert EPSILON[0, 1, 2, 3] == 1
    assert EPSILON[1, 0, 2, 3] == -1
    assert np.count_nonzero(EPSILON) == 24


@given(vectors, vectors, vectors)
@settings(max_examples=50)
def test_contraction_matches_permutation_sum(a, b, c):
    np.testing.assert_allclose(levi_civita_contract(a, b, c), epsilon_contract_oracle(a, b, c),
                               rtol=1e-12, atol=1e-6)


def test_volume_normal_example():
    a, b, c = [0, 1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 1]
    w = [-1, 0, 0, 0]
    n = volume_normal(a, b, c, w)
    raw = epsilon_contract_oracle(np.array(a, float), np.array(b, float), np.array(c, float))
    # proportional to (1, 0, 0, -1) with positive pairing against the witness
    assert n[0] * -1 - n[3] * 1 == pytest.approx(0) and np.allclose(n[1:3], 0)
    assert n @ np.array(w) > 0
    assert np.allclose(np.abs(n), np.abs(raw) / 6)


def test_volume_normal_errors():
    with pytest.raises(DegenerateSpan):
        volume_normal([0, 1, 0, 0], [0, 2, 0, 0], [1, 0, 0, 1], [-1, 0, 0, 0])
    with pytest.raises(AmbiguousOrientation):
        volume_normal([0, 1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 1], [0, 1, 1, 0])


def test_volume_normal_alternating(rng):
    a, b, c = rng.normal(size=(3, 4))
    assert np.allclose(levi_civita_contract(a, b, c), -levi_civita_contract(b, a, c))
    assert np.allclose(levi_civita_contract(a, b, c), -levi_civita_contract(a, c, b))


def test_volume_normal_of_null_span_is_null(rng):
    k = np.array([1.0, 0.6, 0.0, 0.8])
    e1, e2 = np.array([0, 0, 1.0, 0]), np.array([0, 0.8, 0, -0.6])
    a, b, c = (rng.normal() * k + rng.normal() * e1 + rng.normal() * e2 for _ in range(3))
    n = volume_normal(a, b, c, [1.0, 0, 0, 0])
    scale = np.linalg.norm(n)
    for x in (a, b, c):
        assert abs(n @ x) <= 1e-12 * scale * np.linalg.norm(x)
    assert abs(mdot(n, n)) <= 1e-12 * scale**2


def test_zero_sum_examples():
    l = np.array([1.0, 2.0, 3.0, 4.0])
    assert normal_zero_sum_residual([l, -l]) == 0
    for p in (regular_simplex(), regular_parallelotope()):
        n = p.normals
        assert normal_zero_sum_residual(n) <= 1e-12 * np.max(np.linalg.norm(n, axis=1))
    with pytest.raises(ValueError):
        normal_zero_sum_residual([])


def test_timelike_area_examples():
    r = timelike_parallelogram_area_check([1, 0, 0, 1], [1, 0, 0, 1])
    assert r.area == 0 and r.neg_dot == 0
    # l1.l2 = -1 - 1 = -2 in the covector product, so -dot = 2
    r = timelike_parallelogram_area_check([1, 0, 0, 1], [1, 0, 0, -1])
    assert r.neg_dot == pytest.approx(2.0)
    # componentwise full contraction F_{mu nu} F^{mu nu} for F = (l1 ^ l2) / sqrt 2
    l1, l2 = np.array([1.0, 0, 0, 1]), np.array([1.0, 0, 0, -1])
    f = (np.outer(l1, l2) - np.outer(l2, l1)) / math.sqrt(2)
    sq = sum(f[m, n] * ETA[m, m] * ETA[n, n] * f[m, n] for m in range(4) for n in range(4))
    assert r.area == pytest.approx(math.sqrt(abs(sq)))
    # parallelogram spanned by the two raised vectors: sqrt |det Gram|
    gram = np.array([[mdot(x, y) for y in (l1, l2)] for x in (l1, l2)])
    assert r.area == pytest.approx(math.sqrt(abs(np.linalg.det(gram))))
    assert r.agrees()
    with pytest.raises(NotNull):
        timelike_parallelogram_area_check([1, 0, 0, 0], [1, 0, 0, 1])


def test_timelike_area_parallelotope_pairs():
    p = regular_parallelotope()
    past = [h.normal for h in p.hyperfaces if h.label == "past"]
    for i in range(4):
        for j in range(i + 1, 4):
            assert timelike_parallelogram_area_check(past[i], past[j]).agrees(1e-12)


def test_lorentz_transforms_preserve_metric(rng):
    for k in lorentz_generators():
        assert np.allclose(k.T @ ETA + ETA @ k, 0)
    for _ in range(20):
        lam = random_lorentz(rng, 2.0)
        assert np.allclose(lam.T @ ETA @ lam, ETA, atol=1e-9 * np.abs(lam).max() ** 2)
        assert lam[0, 0] >= 1
    b = boost(0.5, [0, 0, 1])
    assert b[0, 3] == pytest.approx(math.sinh(0.5))

