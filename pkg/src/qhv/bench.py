"""Timing harness: run algorithms over fronts, store rows as CSV, fit scaling.

The scaling fit regresses ``log(seconds / log(n)^(d-2))`` on ``log(n)``, so
the slope estimates the exponent ``1 + eps`` of an ``n^(1+eps) log^(d-2) n``
running time.
"""

from __future__ import annotations

import csv
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .core import QhvConfig, RecursionStats, hypervolume
from .geometry import Front
from .oracles import McConfig, ie_volume, mc_estimate, sweep2d_volume

ALGOS = ("qhv", "ie", "mc", "sweep2d")
CSV_FIELDS = ("dataset", "family", "d", "n", "algo", "run", "seconds", "value", "error")


@dataclass
class TimingRecord:
    dataset: str
    family: str
    d: int
    n: int
    algo: str
    run: int
    seconds: float | None
    value: float | None
    error: str = ""
    stats: RecursionStats | None = field(default=None, compare=False)

    def as_row(self) -> dict:
        return {
            "dataset": self.dataset,
            "family": self.family,
            "d": self.d,
            "n": self.n,
            "algo": self.algo,
            "run": self.run,
            "seconds": "" if self.seconds is None else repr(self.seconds),
            "value": "" if self.value is None else repr(self.value),
            "error": self.error,
        }

    @classmethod
    def from_row(cls, row: dict) -> "TimingRecord":
        return cls(
            dataset=row["dataset"],
            family=row["family"],
            d=int(row["d"]),
            n=int(row["n"]),
            algo=row["algo"],
            run=int(row["run"]),
            seconds=float(row["seconds"]) if row["seconds"] else None,
            value=float(row["value"]) if row["value"] else None,
            error=row.get("error") or "",
        )


@dataclass(frozen=True)
class AlgoOptions:
    base_threshold: int = 10
    mc: McConfig = McConfig()


def run_algo(algo: str, front: Front, opts: AlgoOptions = AlgoOptions()):
    """Evaluate one algorithm; returns ``(value, stats_or_None)``."""
    if algo == "qhv":
        return hypervolume(front, QhvConfig(opts.base_threshold))
    if algo == "ie":
        return ie_volume(front), None
    if algo == "sweep2d":
        return sweep2d_volume(front), None
    if algo == "mc":
        return mc_estimate(front, opts.mc)[0], None
    raise ValueError(f"unknown algorithm {algo!r}")


def time_algo(algo: str, front: Front, opts: AlgoOptions = AlgoOptions()):
    """``(seconds, value, stats)`` for one run, wall clock via ``perf_counter``."""
    start = time.perf_counter()
    value, stats = run_algo(algo, front, opts)
    return time.perf_counter() - start, value, stats


def bench(
    datasets: Iterable[tuple[str, str, Callable[[], Front]]],
    algos: Sequence[str] = ("qhv",),
    reps: int = 10,
    opts: AlgoOptions = AlgoOptions(),
    progress: Callable[[TimingRecord], None] | None = None,
) -> list[TimingRecord]:
    """Time every algorithm on every dataset ``reps`` times.

    ``datasets`` yields ``(name, family, make_front)``. A dataset that fails
    to build, or an algorithm that raises, is recorded as rows with empty
    ``seconds``/``value`` and the message in ``error``.
    """
    records = []

    def emit(rec):
        records.append(rec)
        if progress is not None:
            progress(rec)

    for name, family, make in datasets:
        try:
            front = make()
        except Exception as exc:  # recorded, not raised
            for algo in algos:
                for run in range(reps):
                    emit(TimingRecord(name, family, 0, 0, algo, run, None, None, _describe(exc)))
            continue
        for algo in algos:
            for run in range(reps):
                try:
                    seconds, value, stats = time_algo(algo, front, opts)
                except Exception as exc:
                    emit(TimingRecord(name, family, front.d, front.n, algo, run, None, None, _describe(exc)))
                    continue
                emit(TimingRecord(name, family, front.d, front.n, algo, run, seconds, value, stats=stats))
    return records


def _describe(exc: Exception) -> str:
    return f"{type(exc).__name__}: {exc}"


def write_csv(records: Iterable[TimingRecord], path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_FIELDS)
        writer.writeheader()
        for rec in records:
            writer.writerow(rec.as_row())


def read_csv(path) -> list[TimingRecord]:
    with open(path, newline="", encoding="utf-8") as fh:
        return [TimingRecord.from_row(row) for row in csv.DictReader(fh)]


@dataclass(frozen=True)
class ScalingFit:
    slope: float
    intercept: float
    r2: float
    points: int

    def __str__(self):
        return f"slope={self.slope:.6f} intercept={self.intercept:.6f} r2={self.r2:.6f} points={self.points}"


class InsufficientDataError(ValueError):
    pass


def fit_scaling(records: Iterable[TimingRecord], family: str, d: int, algo: str) -> ScalingFit:
    """Least-squares fit of ``log(seconds / log(n)^(d-2))`` against ``log(n)``.

    Every successful row counts as one observation. At least three distinct
    ``n`` values are required.
    """
    rows = [
        r for r in records
        if r.family == family and r.d == d and r.algo == algo and r.seconds is not None and not r.error
    ]
    if len({r.n for r in rows}) < 3:
        raise InsufficientDataError(
            f"need at least 3 distinct n for family={family} d={d} algo={algo}, got {len({r.n for r in rows})}"
        )
    n = np.array([r.n for r in rows], dtype=np.float64)
    secs = np.array([r.seconds for r in rows], dtype=np.float64)
    if d > 2 and np.any(n <= 1):
        raise InsufficientDataError("log(n)^(d-2) is not positive for n <= 1")
    # perf_counter can report 0 for trivially fast runs
    secs = np.maximum(secs, 1e-12)
    x = np.log(n)
    y = np.log(secs) - (d - 2) * np.log(np.log(n)) if d > 2 else np.log(secs)
    A = np.column_stack((x, np.ones_like(x)))
    (slope, intercept), *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid**2)) / ss_tot if ss_tot > 0 else 1.0
    return ScalingFit(float(slope), float(intercept), r2, len(rows))

