"""Synthetic front generators and the WFG-style front file format.

Front files hold one point per line as whitespace-separated reals. A line
starting with ``#`` closes the current front. Blank lines are ignored, and
``#`` lines with no pending points (a leading marker, or two markers in a
row) produce nothing, so both the "separator" and "terminator" flavours of
the format read the same way.

The ``random``, ``degenerate`` and ``discontinuous`` families are stand-ins
that mimic the shape of the WFG benchmark sets; they are not those sets.
"""

from __future__ import annotations

import io
import os
from dataclasses import dataclass
from typing import IO, Iterator, Literal, Union

import numpy as np

from .geometry import Front, canonicalize

Family = Literal["spherical", "random", "degenerate", "discontinuous"]
FAMILIES = ("spherical", "random", "degenerate", "discontinuous")
PathOrStream = Union[str, os.PathLike, IO[str]]


class GenerationError(RuntimeError):
    """A rejection sampler ran out of attempts."""


class FrontFormatError(ValueError):
    """Malformed front file; ``lineno`` is 1-based."""

    def __init__(self, message: str, lineno: int):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class GenSpec:
    family: Family
    d: int
    n: int
    seed: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.d < 2 or self.n < 1:
            raise ValueError(f"need d >= 2 and n >= 1, got d={self.d}, n={self.n}")

    @property
    def name(self) -> str:
        return f"{self.family}-d{self.d}-n{self.n}-s{self.seed}"


def _project_to_sphere(rng: np.random.Generator, n: int, d: int) -> np.ndarray:
    out = np.empty((0, d))
    while out.shape[0] < n:
        raw = rng.random((n - out.shape[0], d))
        norms = np.linalg.norm(raw, axis=1)
        ok = norms > 0
        out = np.vstack((out, raw[ok] / norms[ok, None]))
    return out


def _spherical(rng, n, d, max_tries):
    return _project_to_sphere(rng, n, d)


def _incomparable(cands: np.ndarray, pts: np.ndarray) -> np.ndarray:
    """Rows of ``cands`` neither weakly above nor weakly below any row of ``pts``."""
    if pts.shape[0] == 0:
        return np.ones(cands.shape[0], dtype=bool)
    ge = np.all(pts[None, :, :] >= cands[:, None, :], axis=2)
    le = np.all(pts[None, :, :] <= cands[:, None, :], axis=2)
    return ~np.any(ge | le, axis=1)


def _random(rng, n, d, max_tries, batch=2048):
    # Draws are taken in order and kept only while the accepted set stays
    # mutually nondominated; the batch screen just skips hopeless draws early.
    accepted = np.empty((0, d))
    tries = 0
    while accepted.shape[0] < n:
        if tries >= max_tries:
            raise GenerationError(f"random front: {accepted.shape[0]}/{n} points after {tries} draws")
        cands = rng.uniform(0.1, 1.0, size=(min(batch, max_tries - tries), d))
        tries += cands.shape[0]
        base = accepted.shape[0]
        for cand in cands[_incomparable(cands, accepted)]:
            if _incomparable(cand[None, :], accepted[base:])[0]:
                accepted = np.vstack((accepted, cand))
                if accepted.shape[0] == n:
                    break
    return accepted


def _degenerate(rng, n, d, max_tries):
    return rng.dirichlet(np.ones(d), size=n)


def _discontinuous(rng, n, d, max_tries):
    accepted = np.empty((0, d))
    tries = 0
    while accepted.shape[0] < n:
        batch = _project_to_sphere(rng, 2 * (n - accepted.shape[0]) + 8, d)
        tries += batch.shape[0]
        in_gap = np.floor(batch[:, 0] / 0.1).astype(int) % 2 == 0
        accepted = np.vstack((accepted, batch[~in_gap]))[:n]
        if accepted.shape[0] < n and tries > max_tries:
            raise GenerationError(f"discontinuous front: {accepted.shape[0]}/{n} points after {tries} draws")
    return accepted


_GENERATORS = {
    "spherical": _spherical,
    "random": _random,
    "degenerate": _degenerate,
    "discontinuous": _discontinuous,
}


def gen_front(spec: GenSpec, max_tries: int | None = None) -> Front:
    """Generate a seeded front of ``spec.family`` shape.

    spherical
        uniform draws in ``[0, 1]^d`` scaled to unit Euclidean norm.
    random
        uniform draws in ``[0.1, 1]^d``, accepted while mutually nondominated.
    degenerate
        uniform on the simplex ``sum(x) == 1`` (a flat front).
    discontinuous
        spherical, minus points whose first coordinate falls in
        ``[0.2k, 0.2k + 0.1)``.

    The result is canonicalized against the origin in maximize orientation.
    """
    if max_tries is None:
        max_tries = 1000 * spec.n + 100_000
    rng = np.random.default_rng(spec.seed)
    pts = _GENERATORS[spec.family](rng, spec.n, spec.d, max_tries)
    return canonicalize(pts, np.zeros(spec.d))


def _open_text(src: PathOrStream, mode: str):
    if isinstance(src, (str, os.PathLike)):
        return open(src, mode, encoding="utf-8", newline="\n"), True
    return src, False


def iter_fronts(stream: IO[str]) -> Iterator[np.ndarray]:
    current: list[list[float]] = []
    dim = None
    for lineno, line in enumerate(stream, start=1):
        text = line.strip()
        if not text:
            continue
        if text.startswith("#"):
            if current:
                yield np.array(current, dtype=np.float64)
            current, dim = [], None
            continue
        try:
            row = [float(tok) for tok in text.split()]
        except ValueError:
            raise FrontFormatError(f"non-numeric token in {text!r}", lineno) from None
        if not all(np.isfinite(row)):
            raise FrontFormatError(f"non-finite coordinate in {text!r}", lineno)
        if dim is None:
            dim = len(row)
        elif len(row) != dim:
            raise FrontFormatError(f"expected {dim} coordinates, found {len(row)}", lineno)
        current.append(row)
    if current:
        yield np.array(current, dtype=np.float64)


def read_fronts(src: PathOrStream) -> list[np.ndarray]:
    """Read every front in a file or text stream as an ``(n, d)`` array."""
    stream, owned = _open_text(src, "r")
    try:
        return list(iter_fronts(stream))
    finally:
        if owned:
            stream.close()


def format_front(points: np.ndarray) -> str:
    buf = io.StringIO()
    for row in np.asarray(points, dtype=np.float64):
        buf.write(" ".join(f"{x:.17g}" for x in row))
        buf.write("\n")
    buf.write("#\n")
    return buf.getvalue()


def write_fronts(fronts, dst: PathOrStream) -> None:
    """Write several fronts; a path is overwritten, a stream is appended to."""
    stream, owned = _open_text(dst, "w")
    try:
        for front in fronts:
            points = front.points if isinstance(front, Front) else front
            stream.write(format_front(points))
    finally:
        if owned:
            stream.close()


def write_front(front: Front | np.ndarray, dst: PathOrStream) -> None:
    """Write one front with 17 significant digits, terminated by ``#``."""
    write_fronts([front], dst)
