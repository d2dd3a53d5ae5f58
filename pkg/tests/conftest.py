import numpy as np
import pytest

from qhv.geometry import Frame, Front, canonicalize

FIG2_POINTS = [(0.3, 0.6), (0.5, 0.4), (0.6, 0.2)]

# (criterion, passed, detail) rows filled in by test_acceptance.py
ACCEPTANCE_LINES = []


def random_front(rng, n, d, kind=None):
    """Seeded test front: shell points (all nondominated) or a uniform cloud."""
    kind = kind or rng.choice(["shell", "cloud"])
    pts = rng.random((n, d)) + 1e-9
    if kind == "shell":
        pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    return canonicalize(pts, np.zeros(d), upper=np.ones(d) * max(1.0, pts.max()))


@pytest.fixture
def fig2_front():
    return Front(FIG2_POINTS, Frame.unit(2))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in ACCEPTANCE_LINES:
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {name}: {detail}")
