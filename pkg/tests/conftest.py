import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from pathtri.triangulation import Triangulation, triangulate

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# criterion number -> PASS/FAIL line, filled by test_acceptance.py
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])


TRIANGLE = [(0.0, 0.0), (1.0, 2.0), (2.0, 0.0)]
SQUARE = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]

# fish complex: ten outline/interior vertices, then p (10) and q (11)
FISH_POINTS = [
    (0.5, 1.5), (1.0, 2.0), (1.5, 2.2), (3.0, 1.8), (4.0, 2.2),
    (3.5, 1.6), (3.0, 1.4), (1.0, 1.0), (2.0, 0.75), (4.0, 1.2),
    (1.2, 1.5), (2.5, 1.5),
]
P, Q = 10, 11
FISH_FACES = [
    (P, 0, 1), (P, 1, 2), (P, 2, Q), (P, Q, 8), (P, 8, 7), (P, 7, 0),
    (Q, 2, 3), (Q, 3, 6), (Q, 6, 8),
    (6, 3, 5), (6, 5, 9), (3, 4, 5),
]


def hexagon_fan_points():
    return [(0.0, 0.0)] + [(math.cos(a), math.sin(a)) for a in np.arange(6) * math.pi / 3]


def hexagon_fan() -> Triangulation:
    return Triangulation.from_faces(hexagon_fan_points(), [(0, i, i % 6 + 1) for i in range(1, 7)])


def fish() -> Triangulation:
    return Triangulation.from_faces(FISH_POINTS, FISH_FACES)


def random_points(seed: int, n: int | None = None) -> np.ndarray:
    rng = np.random.default_rng(seed)
    if n is None:
        n = int(rng.integers(3, 51))
    return rng.random((n, 2)) * 10.0


def convex_points(seed: int, n: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    ang = np.sort(rng.uniform(0.0, 2.0 * math.pi, n))
    while np.min(np.diff(np.append(ang, ang[0] + 2 * math.pi))) < 1e-3:
        ang = np.sort(rng.uniform(0.0, 2.0 * math.pi, n))
    r = rng.uniform(1.0, 3.0)
    return np.column_stack([r * np.cos(ang), r * np.sin(ang)])


@pytest.fixture
def triangle3():
    return triangulate(TRIANGLE)


@pytest.fixture
def square():
    return triangulate(SQUARE)


@pytest.fixture
def fan():
    return hexagon_fan()


@pytest.fixture
def fish_complex():
    return fish()


@pytest.fixture
def overlapping():
    pts = [(0.0, 0.0), (2.0, 0.0), (0.0, 2.0), (0.5, 0.5), (3.0, 0.5), (0.5, 3.0)]
    return Triangulation(pts, [(0, 1, 2), (3, 4, 5)], validate=False)
