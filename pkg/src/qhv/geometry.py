"""Points, frames, fronts and the dominance relation.

Points are plain float64 vectors. A :class:`Frame` is the axis-aligned box
``[z, o]`` in which everything lives; a :class:`Front` is a point set clamped
into a frame. All measures are taken with respect to the lower corner ``z``
in maximize orientation, so the dominated region of a front is the union of
the boxes ``[z, q]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Literal, Sequence

import numpy as np

Orientation = Literal["maximize", "minimize"]


def as_point(coords: Iterable[float] | np.ndarray) -> np.ndarray:
    """Return ``coords`` as a read-only 1-D float64 array, rejecting NaN/Inf."""
    p = np.array(coords, dtype=np.float64).reshape(-1)
    if not np.all(np.isfinite(p)):
        raise ValueError(f"point has non-finite coordinates: {p}")
    p.flags.writeable = False
    return p


@dataclass(frozen=True, eq=False)
class Frame:
    """The region ``[z, o]``; ``z`` is the reference corner."""

    z: np.ndarray
    o: np.ndarray

    def __post_init__(self):
        z = as_point(self.z)
        o = as_point(self.o)
        if z.shape != o.shape or z.size == 0:
            raise ValueError(f"corner dimensions differ or are empty: {z.shape} vs {o.shape}")
        if not np.all(z < o):
            raise ValueError(f"frame is empty: z={z}, o={o}")
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "o", o)

    @property
    def d(self) -> int:
        return self.z.size

    @property
    def volume(self) -> float:
        return float(np.prod(self.o - self.z))

    def __eq__(self, other):
        if not isinstance(other, Frame):
            return NotImplemented
        return np.array_equal(self.z, other.z) and np.array_equal(self.o, other.o)

    def __repr__(self):
        return f"Frame(z={self.z.tolist()}, o={self.o.tolist()})"

    @classmethod
    def unit(cls, d: int) -> "Frame":
        return cls(np.zeros(d), np.ones(d))


@dataclass(frozen=True, eq=False)
class Front:
    """A point set inside a frame.

    Points are clamped into ``[z, o]`` on construction. ``dropped`` records how
    many raw points :func:`canonicalize` discarded; it is diagnostic only and
    does not take part in equality.
    """

    points: np.ndarray
    frame: Frame
    dropped: int = field(default=0, compare=False)

    def __post_init__(self):
        d = self.frame.d
        pts = np.array(self.points, dtype=np.float64)
        if pts.size == 0:
            pts = pts.reshape(0, d)
        if pts.ndim != 2 or pts.shape[1] != d:
            raise ValueError(f"expected points of shape (n, {d}), got {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise ValueError("front contains non-finite coordinates")
        pts = np.clip(pts, self.frame.z, self.frame.o)
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.frame.d

    def __len__(self):
        return self.n

    def __eq__(self, other):
        if not isinstance(other, Front):
            return NotImplemented
        return self.frame == other.frame and np.array_equal(self.points, other.points)

    def __repr__(self):
        return f"Front(n={self.n}, d={self.d}, frame={self.frame!r})"


def _check_dims(*arrays: np.ndarray, d: int | None = None) -> None:
    sizes = {a.size for a in arrays}
    if d is not None:
        sizes.add(d)
    if len(sizes) != 1:
        raise ValueError(f"dimension mismatch: {sorted(sizes)}")


def dominates(p: Sequence[float], q: Sequence[float], frame: Frame | None = None) -> bool:
    """True iff ``q <= p`` in every coordinate and ``q != p``.

    Equal points never dominate each other.
    """
    p = as_point(p)
    q = as_point(q)
    _check_dims(p, q, d=None if frame is None else frame.d)
    return bool(np.all(q <= p) and np.any(q != p))


def box_volume(p: Sequence[float], frame: Frame) -> float:
    """Volume of the box ``[z, p]`` (zero if ``p`` is below ``z`` anywhere)."""
    p = as_point(p)
    _check_dims(p, d=frame.d)
    return float(np.prod(np.maximum(p - frame.z, 0.0)))


def nondominated_mask(points: np.ndarray) -> np.ndarray:
    """Boolean mask of rows not dominated by any other row.

    Among exact duplicates only the first occurrence survives.
    """
    pts = np.asarray(points, dtype=np.float64)
    n = pts.shape[0]
    if n <= 1:
        return np.ones(n, dtype=bool)
    if pts.shape[1] == 2:
        return _nondominated_mask_2d(pts)
    return _nondominated_mask_pairwise(pts)


def _nondominated_mask_2d(pts: np.ndarray) -> np.ndarray:
    # x descending, then y descending; stable so the first duplicate leads.
    order = np.lexsort((-pts[:, 1], -pts[:, 0]))
    ys = pts[order, 1]
    prev_max = np.maximum.accumulate(np.concatenate(([-np.inf], ys[:-1])))
    keep = np.zeros(pts.shape[0], dtype=bool)
    keep[order] = ys > prev_max
    return keep


def _nondominated_mask_pairwise(pts: np.ndarray, chunk_elems: int = 1 << 22) -> np.ndarray:
    n, d = pts.shape
    keep = np.ones(n, dtype=bool)
    rows = max(1, chunk_elems // max(1, n * d))
    idx = np.arange(n)
    for start in range(0, n, rows):
        block = pts[start:start + rows]
        # ge[i, j]: point j is >= block point i everywhere
        ge = np.all(pts[None, :, :] >= block[:, None, :], axis=2)
        eq = np.all(pts[None, :, :] == block[:, None, :], axis=2)
        dominated = np.any(ge & ~eq, axis=1)
        block_idx = idx[start:start + rows]
        earlier_dup = np.any(eq & (idx[None, :] < block_idx[:, None]), axis=1)
        keep[start:start + rows] = ~(dominated | earlier_dup)
    return keep


def filter_nondominated(front: Front) -> Front:
    """Drop dominated points and collapse duplicates, preserving order."""
    keep = nondominated_mask(front.points)
    if keep.all():
        return front
    return Front(front.points[keep], front.frame, dropped=front.dropped)


def canonicalize(
    points: Iterable[Sequence[float]] | np.ndarray,
    reference: Sequence[float],
    orientation: Orientation = "maximize",
    upper: Sequence[float] | None = None,
) -> Front:
    """Turn raw objective vectors into a maximize-oriented :class:`Front`.

    In minimize mode each point ``x`` becomes ``reference - x`` and the frame's
    lower corner is the origin; ``upper`` (the ideal corner, in the caller's
    coordinates) is transformed the same way. Without ``upper`` the frame's
    top corner is the coordinate-wise maximum of the points, pushed up by 1.0
    in any axis where it would coincide with ``z``.

    Points with any coordinate at or below ``z`` bound no volume and are
    dropped; the count is kept in ``Front.dropped``.
    """
    ref = as_point(reference)
    d = ref.size
    raw = np.array(points, dtype=np.float64)
    if raw.size == 0:
        raw = raw.reshape(0, d)
    if raw.ndim != 2 or raw.shape[1] != d:
        raise ValueError(f"expected points of shape (n, {d}), got {raw.shape}")
    if not np.all(np.isfinite(raw)):
        raise ValueError("points contain non-finite coordinates")

    if orientation == "maximize":
        pts, z = raw, ref
        top = None if upper is None else as_point(upper)
    elif orientation == "minimize":
        pts, z = ref - raw, np.zeros(d)
        top = None if upper is None else ref - as_point(upper)
    else:
        raise ValueError(f"unknown orientation {orientation!r}")

    alive = np.all(pts > z, axis=1)
    pts = pts[alive]
    if top is None:
        top = pts.max(axis=0) if len(pts) else z.copy()
        top = np.where(top <= z, z + 1.0, top)
    return Front(pts, Frame(z, top), dropped=int((~alive).sum()))
