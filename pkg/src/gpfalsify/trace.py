"""Sampled time series: time grids, vector-valued signals, and traces.

Signals are defined on a fixed time grid and carry their own interpolation
mode. Everything here is immutable after construction and safe to share.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

# Absolute tolerance used when matching a query time against grid points.
TIME_TOL = 1e-12


class OutOfDomainError(ValueError):
    """Query time falls outside a signal's grid domain."""


class Interpolation(str, enum.Enum):
    PIECEWISE_CONSTANT = "piecewise-constant"
    PIECEWISE_LINEAR = "piecewise-linear"


@dataclass(frozen=True)
class TimeGrid:
    """Strictly increasing time points starting at 0, within horizon T."""

    points: np.ndarray
    horizon: float

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        object.__setattr__(self, "points", pts)
        if pts.ndim != 1 or pts.size < 2:
            raise ValueError("time grid needs at least 2 points")
        if abs(pts[0]) > TIME_TOL:
            raise ValueError("time grid must start at 0")
        if np.any(np.diff(pts) <= 0):
            raise ValueError("time grid must be strictly increasing")
        if pts[-1] > self.horizon + TIME_TOL:
            raise ValueError(
                f"last grid point {pts[-1]} exceeds horizon {self.horizon}"
            )
        pts.setflags(write=False)

    @classmethod
    def uniform(cls, horizon: float, step: float) -> "TimeGrid":
        """Uniform grid with the given step, covering [0, horizon]."""
        n = int(round(horizon / step))
        if n < 1:
            raise ValueError("horizon must cover at least one step")
        return cls(points=np.linspace(0.0, n * step, n + 1), horizon=horizon)

    def __len__(self) -> int:
        return len(self.points)

    @property
    def end(self) -> float:
        return float(self.points[-1])

    def index_of(self, t: float) -> int | None:
        """Index of the grid point equal to t (within tolerance), else None."""
        i = int(np.searchsorted(self.points, t))
        for j in (i - 1, i):
            if 0 <= j < len(self.points) and abs(self.points[j] - t) <= TIME_TOL:
                return j
        return None

    def window_indices(self, lo: float, hi: float) -> np.ndarray:
        """Indices of grid points inside [lo, hi], endpoints rounded inward."""
        i0 = int(np.searchsorted(self.points, lo - TIME_TOL, side="left"))
        i1 = int(np.searchsorted(self.points, hi + TIME_TOL, side="right"))
        return np.arange(i0, i1)


@dataclass(frozen=True)
class Signal:
    """Vector-valued samples on a time grid with an interpolation mode."""

    grid: TimeGrid
    values: np.ndarray  # shape (len(grid), dim)
    interpolation: Interpolation = Interpolation.PIECEWISE_LINEAR

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim == 1:
            vals = vals[:, None]
        if vals.shape[0] != len(self.grid):
            raise ValueError(
                f"values length {vals.shape[0]} != grid length {len(self.grid)}"
            )
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "interpolation", Interpolation(self.interpolation))

    @property
    def dim(self) -> int:
        return self.values.shape[1]

    def value_at(self, t: float) -> np.ndarray:
        """Value at time t; left-hold for piecewise-constant signals."""
        pts = self.grid.points
        if t < pts[0] - TIME_TOL or t > pts[-1] + TIME_TOL:
            raise OutOfDomainError(
                f"time {t} outside signal domain [0, {pts[-1]}]"
            )
        k = self.grid.index_of(t)
        if k is not None:
            return self.values[k]
        i = int(np.searchsorted(pts, t)) - 1
        if self.interpolation is Interpolation.PIECEWISE_CONSTANT:
            return self.values[i]
        w = (t - pts[i]) / (pts[i + 1] - pts[i])
        return (1.0 - w) * self.values[i] + w * self.values[i + 1]

    def resample(self, grid: TimeGrid) -> "Signal":
        """Sample this signal onto another grid; interpolation mode kept."""
        if grid.points[-1] > self.grid.points[-1] + TIME_TOL:
            raise OutOfDomainError(
                f"target grid end {grid.points[-1]} exceeds signal domain "
                f"end {self.grid.points[-1]}"
            )
        vals = np.stack([self.value_at(t) for t in grid.points])
        return Signal(grid=grid, values=vals, interpolation=self.interpolation)


@dataclass(frozen=True)
class Trace:
    """System trajectory: state and input signals on a shared grid."""

    state: Signal
    input: Signal
    state_names: tuple[str, ...]
    input_names: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "state_names", tuple(self.state_names))
        object.__setattr__(self, "input_names", tuple(self.input_names))
        if self.state.grid is not self.input.grid and not np.array_equal(
            self.state.grid.points, self.input.grid.points
        ):
            raise ValueError("state and input must share one time grid")
        if len(self.state_names) != self.state.dim:
            raise ValueError("state_names must match state dimension")
        if len(self.input_names) != self.input.dim:
            raise ValueError("input_names must match input dimension")
        seen = set()
        for name in self.state_names + self.input_names:
            if name in seen:
                raise ValueError(f"duplicate trace variable name {name!r}")
            seen.add(name)

    @property
    def grid(self) -> TimeGrid:
        return self.state.grid

    @property
    def variables(self) -> tuple[str, ...]:
        return self.state_names + self.input_names

    def column(self, name: str) -> np.ndarray:
        """All grid-point values of one named variable."""
        if name in self.state_names:
            return self.state.values[:, self.state_names.index(name)]
        if name in self.input_names:
            return self.input.values[:, self.input_names.index(name)]
        raise KeyError(f"unknown trace variable {name!r}")

    def value(self, name: str, t: float) -> float:
        """Interpolated value of one named variable at time t."""
        if name in self.state_names:
            return float(self.state.value_at(t)[self.state_names.index(name)])
        if name in self.input_names:
            return float(self.input.value_at(t)[self.input_names.index(name)])
        raise KeyError(f"unknown trace variable {name!r}")

    def to_csv(self, path) -> None:
        """Write `t,<states>,<inputs>` rows with 15 significant digits."""
        header = ",".join(("t",) + self.state_names + self.input_names)
        rows = np.hstack(
            [self.grid.points[:, None], self.state.values, self.input.values]
        )
        with open(path, "w") as fh:
            fh.write(header + "\n")
            for row in rows:
                fh.write(",".join(format(v, ".15g") for v in row) + "\n")


def trace_from_csv(path, state_names: Sequence[str] | None = None) -> Trace:
    """Load a trace CSV.

    When state_names is given, those header columns become the state and the
    rest the input; otherwise every column is treated as state.
    """
    with open(path) as fh:
        header = fh.readline().strip().split(",")
        data = np.loadtxt(fh, delimiter=",", ndmin=2)
    if header[0] != "t":
        raise ValueError(f"trace CSV must start with a 't' column, got {header[0]!r}")
    names = header[1:]
    times = data[:, 0]
    grid = TimeGrid(points=times, horizon=float(times[-1]))
    if state_names is None:
        state_idx = list(range(len(names)))
        input_idx = []
    else:
        missing = [n for n in state_names if n not in names]
        if missing:
            raise ValueError(f"state columns {missing} not in CSV header")
        state_idx = [names.index(n) for n in state_names]
        input_idx = [i for i in range(len(names)) if i not in state_idx]
    state = Signal(grid, data[:, [i + 1 for i in state_idx]])
    inp = Signal(grid, data[:, [i + 1 for i in input_idx]])
    return Trace(
        state=state,
        input=inp,
        state_names=tuple(names[i] for i in state_idx),
        input_names=tuple(names[i] for i in input_idx),
    )
