"""Reference volume computations used to cross-check the pivot recursion.

* :func:`ie_volume` - inclusion-exclusion over all ``2^n - 1`` point subsets.
* :func:`sweep2d_volume` - the classical sorted strip sum for two objectives.
* :func:`mc_estimate` - Karp-Luby union-of-boxes estimator (randomized).

Randomness comes from ``numpy.random.default_rng(seed)``, i.e. PCG64 with
numpy's SeedSequence initialisation, so estimates are reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numba
import numpy as np

from .geometry import Front

IE_MAX_POINTS = 25
_IE_BLOCK = 12


class CapacityError(ValueError):
    """Raised when an exhaustive oracle is asked for too large an input."""


def _subset_table(pts: np.ndarray):
    """Coordinate-wise minima and signs for every subset of ``pts`` (incl. empty).

    Row ``s`` of the table corresponds to the subset whose members are the set
    bits of ``s``; row 0 (empty set) holds ``+inf``.
    """
    k, d = pts.shape
    mins = np.full((1, d), np.inf)
    # signs[s] = (-1)^(|s|+1); the empty-set entry is only a seed
    signs = np.array([-1.0])
    for i in range(k):
        mins = np.concatenate((mins, np.minimum(mins, pts[i])))
        signs = np.concatenate((signs, -signs))
    return mins, signs


def inclusion_exclusion(points: np.ndarray, lower: np.ndarray) -> float:
    """Union volume of boxes ``[lower, p]`` by inclusion-exclusion.

    Array-level kernel shared by :func:`ie_volume` and the small-case branch
    of the pivot recursion. Cost is ``O(2^n d)``.
    """
    n = points.shape[0]
    if n == 0:
        return 0.0
    if n > IE_MAX_POINTS:
        raise CapacityError(f"inclusion-exclusion limited to {IE_MAX_POINTS} points, got {n}")
    pts = np.asarray(points, dtype=np.float64)
    lo_pts, hi_pts = pts[:_IE_BLOCK], pts[_IE_BLOCK:]
    lo_mins, lo_signs = _subset_table(lo_pts)

    total = 0.0
    # Outer loop walks subsets of the remaining points; the empty outer subset
    # must skip the empty inner one.
    for s in range(1 << hi_pts.shape[0]):
        members = [i for i in range(hi_pts.shape[0]) if s >> i & 1]
        if members:
            cap = hi_pts[members].min(axis=0)
            mins = np.minimum(lo_mins, cap)
            signs = lo_signs if len(members) % 2 == 0 else -lo_signs
            extent = np.maximum(mins - lower, 0.0)
            total += float(signs @ np.prod(extent, axis=1))
        else:
            extent = np.maximum(lo_mins[1:] - lower, 0.0)
            total += float(lo_signs[1:] @ np.prod(extent, axis=1))
    return total


def ie_volume(front: Front) -> float:
    """Exact dominated volume of ``front`` via inclusion-exclusion (n <= 25)."""
    return inclusion_exclusion(front.points, front.frame.z)


def sweep2d_volume(front: Front) -> float:
    """Exact dominated area of a two-objective front.

    Points are visited by decreasing ``x``; each one that rises above the
    running maximum ``y`` adds the strip ``(x - z_x) * (y - y_max)``.
    """
    if front.d != 2:
        raise ValueError(f"sweep2d_volume needs d == 2, got d == {front.d}")
    zx, zy = front.frame.z.tolist()
    area = 0.0
    y_max = zy
    for x, y in sorted(front.points.tolist(), key=lambda p: (-p[0], -p[1])):
        if y > y_max:
            area += (x - zx) * (y - y_max)
            y_max = y
    return area


@dataclass(frozen=True)
class McConfig:
    """Accuracy target for :func:`mc_estimate`.

    ``epsilon`` is the relative error, ``delta`` the probability of missing it.
    """

    epsilon: float = 0.01
    delta: float = 0.25
    seed: int = 0
    max_samples: int | None = None

    def __post_init__(self):
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if not 0.0 < self.delta < 1.0:
            raise ValueError(f"delta must lie in (0, 1), got {self.delta}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.max_samples is not None and self.max_samples < 1:
            raise ValueError("max_samples must be positive")


def sample_count(n: int, config: McConfig) -> int:
    """Number of Karp-Luby draws for ``n`` boxes.

    ``ceil(3 n ln(2/delta)) * ceil(1/epsilon^2)``, which is never below
    ``3 n ln(2/delta) / epsilon^2`` and scales exactly as ``1/epsilon^2`` when
    that is an integer. ``max_samples`` caps the result.
    """
    inv_eps2 = 1.0 / (config.epsilon * config.epsilon)
    # 1/0.01**2 evaluates to 10000.000000000002; don't let rounding noise bump the ceiling
    per_eps = math.ceil(inv_eps2 * (1.0 - 1e-12))
    m = math.ceil(3.0 * n * math.log(2.0 / config.delta)) * per_eps
    if config.max_samples is not None:
        m = min(m, config.max_samples)
    return m


@numba.njit(cache=True)
def _cover_counts(samples, boxes_t):
    # boxes_t is (d, n): the inner loops run over boxes without branches so
    # they vectorize.
    m, d = samples.shape
    n = boxes_t.shape[1]
    out = np.empty(m, dtype=np.int64)
    inside = np.empty(n, dtype=np.bool_)
    for s in range(m):
        x0 = samples[s, 0]
        for j in range(n):
            inside[j] = x0 <= boxes_t[0, j]
        for k in range(1, d):
            xk = samples[s, k]
            for j in range(n):
                inside[j] = inside[j] & (xk <= boxes_t[k, j])
        c = 0
        for j in range(n):
            c += inside[j]
        out[s] = c
    return out


def karp_luby_draws(front: Front, m: int, rng: np.random.Generator) -> np.ndarray:
    """Per-draw unbiased estimates ``S / c(x)`` of the union volume.

    ``S`` is the sum of box volumes, ``x`` is uniform in a box chosen with
    probability proportional to its volume, and ``c(x)`` counts the boxes
    containing ``x``.
    """
    if front.n == 0:
        raise ValueError("cannot estimate the volume of an empty front")
    z = front.frame.z
    boxes = np.ascontiguousarray(front.points)
    vols = np.prod(boxes - z, axis=1)
    total = float(vols.sum())
    if total == 0.0:
        return np.zeros(m)
    cum = np.cumsum(vols / total)
    picks = np.minimum(np.searchsorted(cum, rng.random(m), side="right"), front.n - 1)
    x = z + rng.random((m, front.d)) * (boxes[picks] - z)
    counts = _cover_counts(np.ascontiguousarray(x), np.ascontiguousarray(boxes.T))
    return total / counts


def mc_estimate(
    front: Front, config: McConfig = McConfig(), chunk: int = 1 << 18
) -> tuple[float, int]:
    """Randomized ``(1 +- epsilon)`` estimate of the dominated volume.

    Returns ``(estimate, samples_used)``. Draws are generated in fixed-size
    chunks from a single PCG64 stream so the result depends only on the seed.
    """
    if front.n == 0:
        raise ValueError("cannot estimate the volume of an empty front")
    m = sample_count(front.n, config)
    rng = np.random.default_rng(config.seed)
    acc = 0.0
    done = 0
    while done < m:
        k = min(chunk, m - done)
        acc += float(karp_luby_draws(front, k, rng).sum())
        done += k
    return acc / m, m
