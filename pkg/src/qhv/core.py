"""Pivot divide-and-conquer hypervolume (QHV).

Each step picks the point with the largest box ``[lower, p]`` as pivot, adds
that box's volume, and hands every other point to the hyperoctants around the
pivot that its box reaches into. Inside octant ``b`` a point keeps its
coordinates on the axes where ``b`` has a 1 bit and is clipped to the pivot on
the others; the octant's own lower corner then acts as the reference corner.
The all-zeros octant lies inside the pivot box and the all-ones octant is
empty because the pivot has maximal volume, so only ``2^d - 2`` octants can
recurse.

Octant labels are integers with bit ``i`` standing for coordinate ``i``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .geometry import Front, Frame, nondominated_mask
from .oracles import inclusion_exclusion


class InvariantError(RuntimeError):
    """A condition guaranteed by the pivot rule was violated."""


@dataclass(frozen=True)
class QhvConfig:
    base_threshold: int = 10
    collect_stats: bool = True

    def __post_init__(self):
        if not 1 <= self.base_threshold <= 20:
            raise ValueError(f"base_threshold must be in [1, 20], got {self.base_threshold}")


@dataclass
class RecursionStats:
    """Counters gathered during one :func:`hypervolume` run.

    ``octant_point_counts[b]`` is the total number of points that entered a
    subproblem in octant ``b`` (after clipping and filtering).
    """

    calls: int = 0
    max_depth: int = 0
    base_case_hits: int = 0
    octant_point_counts: Counter = field(default_factory=Counter)

    def merge(self, other: "RecursionStats") -> "RecursionStats":
        return RecursionStats(
            calls=self.calls + other.calls,
            max_depth=max(self.max_depth, other.max_depth),
            base_case_hits=self.base_case_hits + other.base_case_hits,
            octant_point_counts=self.octant_point_counts + other.octant_point_counts,
        )

    def summary(self) -> dict:
        return {
            "calls": self.calls,
            "max_depth": self.max_depth,
            "base_case_hits": self.base_case_hits,
            "octants_used": len(self.octant_point_counts),
        }


def octant_label_str(bits: int, d: int) -> str:
    """Render an octant label as a bit string, coordinate 0 first.

    With this reading the upper-left quadrant of a 2-D picture (x below the
    pivot, y above it) is ``"01"``.
    """
    if not 0 <= bits < 1 << d:
        raise ValueError(f"label {bits} out of range for d={d}")
    return "".join("1" if bits >> i & 1 else "0" for i in range(d))


def _pivot_index(points: np.ndarray, lower: np.ndarray) -> int:
    # np.argmax returns the first maximum, which is the tie rule we want
    return int(np.argmax(np.prod(points - lower, axis=1)))


def select_pivot(front: Front) -> int:
    """Index of the point with the largest box volume; lowest index on ties."""
    if front.n == 0:
        raise ValueError("cannot select a pivot from an empty front")
    return _pivot_index(front.points, front.frame.z)


def _split(points, pivot, lower, upper):
    """Yield ``(label, clipped_points, sub_lower, sub_upper)`` by ascending label."""
    d = pivot.size
    full = (1 << d) - 1
    weights = 1 << np.arange(d, dtype=np.int64)
    masks = (points > pivot) @ weights
    if np.any(masks == full):
        raise InvariantError("a point exceeds the pivot in every coordinate")

    labels = np.arange(1, full, dtype=np.int64)
    member = (masks[:, None] & labels[None, :]) == labels[None, :]
    for col in np.flatnonzero(member.any(axis=0)):
        b = int(labels[col])
        q = points[member[:, col]]
        bits = (b >> np.arange(d)) & 1 == 1
        clipped = np.where(bits, q, np.minimum(q, pivot))
        sub_lower = np.where(bits, pivot, lower)
        sub_upper = np.where(bits, upper, pivot)
        clipped = clipped[np.all(clipped > sub_lower, axis=1)]
        if clipped.shape[0] > 1:
            clipped = clipped[nondominated_mask(clipped)]
        if clipped.shape[0]:
            yield b, clipped, sub_lower, sub_upper


def split_octants(front: Front, pivot) -> dict[int, Front]:
    """Distribute ``front`` (pivot excluded) over the octants around ``pivot``.

    Returns a mapping from octant label to the clipped, filtered sub-front
    living in that octant's frame. Octants receiving no points are omitted.
    """
    pivot = np.asarray(pivot, dtype=np.float64)
    if pivot.size != front.d:
        raise ValueError(f"pivot has dimension {pivot.size}, front has {front.d}")
    return {
        b: Front(pts, Frame(lo, hi))
        for b, pts, lo, hi in _split(front.points, pivot, front.frame.z, front.frame.o)
    }


def _solve(points, lower, upper, threshold, stats, tally):
    # Explicit stack: deep recursions (e.g. convex 2-D fronts) stay safe and
    # partial sums are still combined in ascending label order afterwards.
    own = []
    kids = []
    stack = [(0, points, lower, upper, 1)]
    own.append(0.0)
    kids.append(())
    while stack:
        node, pts, lo, hi, depth = stack.pop()
        stats.calls += 1
        if depth > stats.max_depth:
            stats.max_depth = depth
        n = pts.shape[0]
        if n <= threshold:
            stats.base_case_hits += 1
            own[node] = inclusion_exclusion(pts, lo)
            continue
        k = _pivot_index(pts, lo)
        pivot = pts[k]
        own[node] = float(np.prod(pivot - lo))
        rest = np.delete(pts, k, axis=0)
        children = []
        for b, sub, sub_lo, sub_hi in _split(rest, pivot, lo, hi):
            if sub.shape[0] >= n:
                raise InvariantError("octant subproblem did not shrink")
            if tally:
                stats.octant_point_counts[b] += sub.shape[0]
            child = len(own)
            own.append(0.0)
            kids.append(())
            children.append(child)
            stack.append((child, sub, sub_lo, sub_hi, depth + 1))
        kids[node] = tuple(children)

    values = own[:]
    # children always carry larger ids than their parent
    for node in range(len(own) - 1, -1, -1):
        total = own[node]
        for child in kids[node]:
            total += values[child]
        values[node] = total
    return values[0]


def hypervolume(front: Front, config: QhvConfig = QhvConfig()) -> tuple[float, RecursionStats]:
    """Exact dominated volume of ``front`` and the recursion counters.

    Points are put in lexicographic order and filtered before the recursion
    starts, so the result is bit-identical for any ordering of the input.
    """
    stats = RecursionStats()
    z = front.frame.z
    pts = front.points[np.all(front.points > z, axis=1)]
    if pts.shape[0] == 0:
        return 0.0, stats
    pts = pts[np.lexsort(pts.T[::-1])]
    pts = pts[nondominated_mask(pts)]
    value = _solve(pts, z, front.frame.o, config.base_threshold, stats, config.collect_stats)
    return value, stats


def volume(front: Front, base_threshold: int = 10) -> float:
    """Shorthand for ``hypervolume(front)[0]``."""
    return hypervolume(front, QhvConfig(base_threshold, collect_stats=False))[0]
