"""
sweep.py
========

Grid evaluation of both storage strategies over one or two parameters.

A sweep starts from a baseline (input state plus either two memory cells or a
direct channel) and varies up to two named parameters on a regular grid. Grid
points are independent and may be evaluated by several joblib workers; records
come back in row-major grid order regardless.
"""

from __future__ import annotations

import csv
import itertools
import json
import logging
import math
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from joblib import Parallel, delayed

from cv_storage.exceptions import ConfigError
from cv_storage.memory import DEFAULT_CONVENTION, LossNoiseConvention, MemoryCellParams, MemoryChannel, channel_from_cells
from cv_storage.scenarios import InputStateParams, ScenarioPair, compare

logger = logging.getLogger(__name__)

CELL_KEYS = ("g", "z_sq", "delta_at", "delta_q", "delta_p")
SWEEPABLE = {
    "input_state": ("s", "n1", "n2"),
    "cell1": CELL_KEYS,
    "cell2": CELL_KEYS,
    "channel": ("xi1", "xi2", "y_q1", "y_p1", "y_q2", "y_p2"),
}

METRIC_COLUMNS = (
    "e_n_a",
    "e_n_b",
    "delta_e_n",
    "f_a",
    "f_b",
    "delta_f_bar",
    "nu_a",
    "nu_b",
    "channel_physical",
    "state_a_physical",
    "state_b_physical",
)

OUTPUT_FORMATS = ("csv", "json")
SIGNIFICANT_DIGITS = 12


@dataclass(frozen=True)
class SweepAxis:
    """One swept parameter: ``target`` is "<section>.<key>", e.g. "cell2.g"."""

    target: str
    start: float
    stop: float
    steps: int = 25

    def __post_init__(self):
        section, _, key = self.target.partition(".")
        if key not in SWEEPABLE.get(section, ()):
            raise ConfigError(f"unknown sweep parameter {self.target!r}")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise ConfigError(f"sweep range of {self.target} must be finite")
        if self.steps < 2:
            raise ConfigError(f"sweep axis {self.target} needs at least 2 steps, got {self.steps}")

    @property
    def section(self) -> str:
        return self.target.partition(".")[0]

    @property
    def key(self) -> str:
        return self.target.partition(".")[2]

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)

    @classmethod
    def parse(cls, text: str) -> "SweepAxis":
        """Parse "<section>.<key> <min> <max> <steps>"."""
        parts = text.split()
        if len(parts) != 4:
            raise ConfigError(f"sweep axis must read '<section>.<key> <min> <max> <steps>', got {text!r}")
        try:
            return cls(parts[0], float(parts[1]), float(parts[2]), int(parts[3]))
        except ValueError:
            raise ConfigError(f"malformed sweep axis {text!r}") from None


@dataclass(frozen=True)
class SweepRecord:
    """The plotted quantities at one grid point."""

    axis_values: Tuple[float, ...]
    e_n_a: float
    e_n_b: float
    delta_e_n: float
    f_a: float
    f_b: float
    delta_f_bar: float
    nu_a: float
    nu_b: float
    channel_physical: bool
    state_a_physical: bool
    state_b_physical: bool

    @classmethod
    def from_pair(cls, axis_values: Sequence[float], pair: ScenarioPair) -> "SweepRecord":
        return cls(
            axis_values=tuple(float(v) for v in axis_values),
            e_n_a=pair.metrics_a.log_neg,
            e_n_b=pair.metrics_b.log_neg,
            delta_e_n=pair.delta_logneg,
            f_a=pair.metrics_a.fidelity,
            f_b=pair.metrics_b.fidelity,
            delta_f_bar=pair.delta_fidelity,
            nu_a=pair.metrics_a.nu_tilde,
            nu_b=pair.metrics_b.nu_tilde,
            channel_physical=pair.channel_physical,
            state_a_physical=pair.state_a_physical,
            state_b_physical=pair.state_b_physical,
        )

    def metric_values(self) -> Tuple[Union[float, bool], ...]:
        return tuple(getattr(self, name) for name in METRIC_COLUMNS)


@dataclass(frozen=True)
class Baseline:
    """Fixed parameters of a sweep; grid points replace individual fields."""

    input_state: InputStateParams
    cell1: Optional[MemoryCellParams] = None
    cell2: Optional[MemoryCellParams] = None
    channel: Optional[MemoryChannel] = None
    convention: LossNoiseConvention = DEFAULT_CONVENTION

    def __post_init__(self):
        if self.channel is None and (self.cell1 is None or self.cell2 is None):
            raise ConfigError("a sweep needs either both memory cells or a direct channel")

    def resolve(self, assignment: Dict[str, float]) -> Tuple[InputStateParams, MemoryChannel]:
        """Apply "<section>.<key>" -> value replacements and build the channel."""
        grouped: Dict[str, Dict[str, float]] = {}
        for target, value in assignment.items():
            section, _, key = target.partition(".")
            grouped.setdefault(section, {})[key] = float(value)

        params = replace(self.input_state, **grouped.get("input_state", {}))
        if self.channel is not None:
            if "cell1" in grouped or "cell2" in grouped:
                raise ConfigError("cell parameters cannot be swept when the channel is given directly")
            channel = self.channel
        else:
            cell1 = replace(self.cell1, **grouped.get("cell1", {}))
            cell2 = replace(self.cell2, **grouped.get("cell2", {}))
            channel = channel_from_cells(cell1, cell2, self.convention)
        channel = replace(channel, **grouped.get("channel", {}))
        return params, channel


def _evaluate_point(baseline: Baseline, targets: Tuple[str, ...], values: Tuple[float, ...]) -> SweepRecord:
    params, channel = baseline.resolve(dict(zip(targets, values)))
    return SweepRecord.from_pair(values, compare(params, channel))


@dataclass(frozen=True)
class SweepSummary:
    points: int
    positive_delta_e: float
    negative_delta_e: float
    positive_delta_f: float
    min_delta_e: float
    max_delta_e: float
    sign_disagreements: int
    unphysical_channels: int


@dataclass
class SweepResult:
    axes: Tuple[SweepAxis, ...]
    records: List[SweepRecord]

    @property
    def columns(self) -> Tuple[str, ...]:
        return tuple(axis.target for axis in self.axes) + METRIC_COLUMNS

    def delta_grid(self) -> np.ndarray:
        """delta E_N reshaped to the grid (steps1[, steps2])."""
        shape = tuple(axis.steps for axis in self.axes)
        return np.array([r.delta_e_n for r in self.records]).reshape(shape)

    def summary(self, threshold: float = 1e-9) -> SweepSummary:
        delta_e = np.array([r.delta_e_n for r in self.records])
        delta_f = np.array([r.delta_f_bar for r in self.records])
        raw_f = np.array([r.f_b - r.f_a for r in self.records])
        disagree = (np.abs(delta_e) > threshold) & (np.abs(raw_f) > threshold) & ((delta_e > 0) != (raw_f > 0))
        return SweepSummary(
            points=len(self.records),
            positive_delta_e=float(np.mean(delta_e > threshold)),
            negative_delta_e=float(np.mean(delta_e < -threshold)),
            positive_delta_f=float(np.mean(delta_f > threshold)),
            min_delta_e=float(delta_e.min()),
            max_delta_e=float(delta_e.max()),
            sign_disagreements=int(disagree.sum()),
            unphysical_channels=sum(not r.channel_physical for r in self.records),
        )


class SweepRunner:
    """
    Evaluates a baseline configuration over a grid of one or two parameters.

    Records are returned in row-major order over the axes, whatever the
    number of workers.
    """

    def __init__(self, baseline: Baseline, jobs: int = 1):
        """
        Args:
            baseline: Parameters held fixed across the grid
            jobs: joblib worker count (1 evaluates in-process)
        """
        self.baseline = baseline
        self.jobs = jobs

    def run(self, axes: Sequence[SweepAxis]) -> SweepResult:
        axes = tuple(axes)
        if not 1 <= len(axes) <= 2:
            raise ConfigError(f"a sweep takes 1 or 2 axes, got {len(axes)}")
        if len({axis.target for axis in axes}) != len(axes):
            raise ConfigError("sweep axes must name different parameters")

        targets = tuple(axis.target for axis in axes)
        grid = list(itertools.product(*(axis.values() for axis in axes)))
        logger.info("sweeping %s over %d points with %d job(s)", " x ".join(targets), len(grid), self.jobs)

        records = Parallel(n_jobs=self.jobs)(
            delayed(_evaluate_point)(self.baseline, targets, tuple(float(v) for v in point)) for point in grid
        )
        return SweepResult(axes=axes, records=list(records))


def _format_value(value: Union[float, bool]) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    return f"{value:.{SIGNIFICANT_DIGITS}g}"


def _json_value(value: Union[float, bool]) -> Union[float, bool]:
    if isinstance(value, bool):
        return value
    return float(_format_value(value))


def write_csv(result: SweepResult, path: Union[str, Path]) -> Path:
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, delimiter=",", lineterminator="\n")
        writer.writerow(result.columns)
        for record in result.records:
            writer.writerow([_format_value(v) for v in record.axis_values + record.metric_values()])
    return path


def write_json(result: SweepResult, path: Union[str, Path]) -> Path:
    path = Path(path)
    rows = [
        dict(zip(result.columns, (_json_value(v) for v in record.axis_values + record.metric_values())))
        for record in result.records
    ]
    payload = {
        "axes": [{f.name: getattr(axis, f.name) for f in fields(axis)} for axis in result.axes],
        "columns": list(result.columns),
        "records": rows,
    }
    with path.open("w", encoding="utf-8", newline="\n") as handle:
        json.dump(payload, handle, indent=2)
        handle.write("\n")
    return path


def write_result(result: SweepResult, path: Union[str, Path], fmt: str = "csv") -> Path:
    """Write a sweep as CSV or JSON; both carry the same column names."""
    if fmt == "csv":
        written = write_csv(result, path)
    elif fmt == "json":
        written = write_json(result, path)
    else:
        raise ConfigError(f"unknown output format {fmt!r} (expected csv or json)")
    logger.info("wrote %d records to %s", len(result.records), written)
    return written
