import itertools
import math

import numpy as np
import pytest

ETA = np.diag([-1.0, 1.0, 1.0, 1.0])


def mdot(u, v):
    return float(np.asarray(u) @ ETA @ np.asarray(v))


def perm_parity(p):
    inversions = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return -1 if inversions % 2 else 1


def epsilon_contract_oracle(a, b, c):
    """24-term sum over permutations, eps_{0123} = +1."""
    out = np.zeros(4)
    for p in itertools.permutations(range(4)):
        out[p[0]] += perm_parity(p) * a[p[1]] * b[p[2]] * c[p[3]]
    return out


def spacelike_triangle_area(p, q, r):
    u, v = np.asarray(q) - p, np.asarray(r) - p
    return 0.5 * math.sqrt(mdot(u, u) * mdot(v, v) - mdot(u, v) ** 2)


def insphere_oracle(points3):
    """Solve n_i . c + r = d_i for the four inward face planes."""
    x = np.asarray(points3, dtype=float)
    rows, rhs = [], []
    for i in range(4):
        a, b, c = x[[j for j in range(4) if j != i]]
        n = np.cross(b - a, c - a)
        n /= np.linalg.norm(n)
        if n @ (x[i] - a) < 0:
            n = -n
        # inward normal: n . (centre - a) = r
        rows.append(np.append(n, -1.0))
        rhs.append(n @ a)
    sol = np.linalg.solve(np.array(rows), np.array(rhs))
    return sol[:3], sol[3]


def hull_volume_scipy(vertices):
    """Euclidean 4-volume of the convex hull; |det eta| = 1 so it is also the Minkowski volume."""
    from scipy.spatial import ConvexHull

    return ConvexHull(np.asarray(vertices)).volume


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# --- one line per acceptance criterion in the terminal summary ---------------

_ACCEPTANCE = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    num, title = marker.args
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _ACCEPTANCE[num] = (title, rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_ACCEPTANCE):
        title, ok = _ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {title}")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): acceptance criterion")
