"""Capacity grids over parameter planes, and their CSV/JSON serialization.

A sweep evaluates chi on a uniform inclusive 2-D grid; any two of
{omega, gamma, T, p} form the axes and the rest are fixed.  Output is
deterministic byte-for-byte for identical invocations: cells may be computed
in parallel, but assembly and formatting are ordered, floats are rendered as
shortest round-trip decimals, and no timestamps are serialized.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from functools import partial

import numpy as np

from .coding import capacity_closed_form, capacity_numeric
from .linalg import InvalidStateError
from .thermal import (
    GravcatParams,
    InvalidParameterError,
    MIN_TEMPERATURE,
    build_hamiltonian,
    gibbs_numeric,
)
from .version import TOOL_NAME, __version__
from .weak_measurement import apply_qwm, capacity_wm_closed_form

AXIS_NAMES = ("omega", "gamma", "T", "p")
ENGINES = ("closed_form", "numeric")

DEFAULT_AXES: dict[str, tuple[float, float, int]] = {
    "omega": (0.01, 3.0, 200),
    "gamma": (0.0, 3.0, 200),
    "T": (0.01, 2.0, 200),
    "p": (0.0, 0.999, 200),
}

CHI_MIN = -1e-10
CHI_MAX = 2.0 + 1e-10


@dataclass(frozen=True)
class AxisSpec:
    """One sweep axis: a uniform inclusive grid of `count` points."""

    name: str
    start: float
    stop: float
    count: int

    def __post_init__(self) -> None:
        if self.name not in AXIS_NAMES:
            raise InvalidParameterError(
                f"unknown axis {self.name!r}; expected one of {', '.join(AXIS_NAMES)}"
            )
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise InvalidParameterError(f"axis {self.name}: bounds must be finite")
        if not self.start < self.stop:
            raise InvalidParameterError(
                f"axis {self.name}: start must be below stop, got [{self.start:g}, {self.stop:g}]"
            )
        if self.count < 2:
            raise InvalidParameterError(f"axis {self.name}: count must be at least 2")

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)

    def to_dict(self) -> dict:
        return {"name": self.name, "start": self.start, "stop": self.stop, "count": self.count}

    @classmethod
    def parse(cls, text: str) -> "AxisSpec":
        """Parse the CLI syntax ``name:start:stop:count``."""
        parts = text.split(":")
        if len(parts) != 4:
            raise InvalidParameterError(
                f"axis spec {text!r} must look like name:start:stop:count"
            )
        name, start, stop, count = parts
        try:
            return cls(name=name, start=float(start), stop=float(stop), count=int(count))
        except ValueError as exc:
            raise InvalidParameterError(f"axis spec {text!r}: {exc}") from exc

    @classmethod
    def default(cls, name: str) -> "AxisSpec":
        start, stop, count = DEFAULT_AXES[name]
        return cls(name=name, start=start, stop=stop, count=count)


def validate_axis_domain(axis: AxisSpec, *, allow_zero_omega: bool = False) -> None:
    """Check the axis bounds against the parameter's validity domain."""
    lo, hi = axis.start, axis.stop
    if axis.name == "omega":
        floor = 0.0 if allow_zero_omega else math.nextafter(0.0, 1.0)
        if lo < floor:
            raise InvalidParameterError("axis omega: omega must be positive")
    elif axis.name == "gamma":
        if lo < 0.0:
            raise InvalidParameterError("axis gamma: gamma must be nonnegative")
    elif axis.name == "T":
        if lo < MIN_TEMPERATURE:
            raise InvalidParameterError(
                f"axis T: temperature must be positive (minimum {MIN_TEMPERATURE:g})"
            )
    elif axis.name == "p":
        if lo < 0.0 or hi > 1.0:
            raise InvalidParameterError("axis p: measurement strength must lie in [0, 1]")


@dataclass(frozen=True, eq=False)
class SweepGrid:
    """A computed capacity grid: values[iy][ix] = chi(x_values[ix], y_values[iy])."""

    x_axis: AxisSpec
    y_axis: AxisSpec
    fixed: dict[str, float]
    values: np.ndarray
    engine: str
    version: str = __version__
    # metadata only; never serialized, since emitted bytes must be run-stable
    created_at: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat())


def cell_capacity(
    engine: str,
    omega: float,
    gamma: float,
    temperature: float,
    strength: float | None = None,
    *,
    allow_zero_omega: bool = False,
) -> float:
    """chi for one parameter point, on either engine."""
    params = GravcatParams(
        omega=omega, gamma=gamma, temperature=temperature, allow_degenerate_omega=allow_zero_omega
    )
    if engine == "closed_form":
        if strength is None:
            return capacity_closed_form(params).chi
        return capacity_wm_closed_form(params, strength).chi
    if engine == "numeric":
        rho = gibbs_numeric(build_hamiltonian(params), params.temperature)
        if strength is not None:
            rho = apply_qwm(rho, strength).state
        return capacity_numeric(rho).chi
    raise InvalidParameterError(f"unknown engine {engine!r}; expected one of {', '.join(ENGINES)}")


def _cell_point(
    x_name: str, x_value: float, y_name: str, y_value: float, fixed: dict[str, float]
) -> dict[str, float]:
    point = dict(fixed)
    point[x_name] = x_value
    point[y_name] = y_value
    return point


def _row_values(
    y_value: float,
    *,
    engine: str,
    x_name: str,
    x_values: tuple[float, ...],
    y_name: str,
    fixed: dict[str, float],
    allow_zero_omega: bool,
) -> list[float]:
    """One grid row; must stay a module-level function so worker processes can pickle it."""
    row = []
    for x_value in x_values:
        point = _cell_point(x_name, x_value, y_name, y_value, fixed)
        try:
            row.append(
                cell_capacity(
                    engine,
                    omega=point["omega"],
                    gamma=point["gamma"],
                    temperature=point["T"],
                    strength=point.get("p"),
                    allow_zero_omega=allow_zero_omega,
                )
            )
        except Exception as exc:
            coords = ", ".join(f"{k}={v:g}" for k, v in sorted(point.items()))
            raise RuntimeError(f"sweep cell ({coords}) failed: {exc}") from exc
    return row


def evaluate_sweep(
    x_axis: AxisSpec,
    y_axis: AxisSpec,
    fixed: dict[str, float],
    engine: str = "closed_form",
    jobs: int = 1,
    *,
    allow_zero_omega: bool = False,
) -> SweepGrid:
    """Evaluate chi over the grid; rows may run in parallel worker processes.

    ``fixed`` must cover exactly the parameters that are not axes ("p" is
    optional: leaving it out means no weak measurement).
    """
    if engine not in ENGINES:
        raise InvalidParameterError(
            f"unknown engine {engine!r}; expected one of {', '.join(ENGINES)}"
        )
    if x_axis.name == y_axis.name:
        raise InvalidParameterError(f"axes must name distinct parameters, both are {x_axis.name!r}")
    validate_axis_domain(x_axis, allow_zero_omega=allow_zero_omega)
    validate_axis_domain(y_axis, allow_zero_omega=allow_zero_omega)
    axis_names = {x_axis.name, y_axis.name}
    required = {"omega", "gamma", "T"} - axis_names
    allowed = required | ({"p"} - axis_names)
    missing = required - fixed.keys()
    if missing:
        raise InvalidParameterError(f"missing fixed value(s) for: {', '.join(sorted(missing))}")
    extra = fixed.keys() - allowed
    if extra:
        raise InvalidParameterError(
            f"fixed value(s) conflict with the axes or are unknown: {', '.join(sorted(extra))}"
        )
    if "p" in fixed and not 0.0 <= fixed["p"] <= 1.0:
        raise InvalidParameterError("p: measurement strength must lie in [0, 1]")

    x_values = tuple(float(v) for v in x_axis.values())
    y_values = tuple(float(v) for v in y_axis.values())
    worker = partial(
        _row_values,
        engine=engine,
        x_name=x_axis.name,
        x_values=x_values,
        y_name=y_axis.name,
        fixed=dict(fixed),
        allow_zero_omega=allow_zero_omega,
    )
    if jobs > 1:
        chunk = max(1, len(y_values) // (4 * jobs))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(worker, y_values, chunksize=chunk))
    else:
        rows = [worker(y) for y in y_values]
    return SweepGrid(
        x_axis=x_axis, y_axis=y_axis, fixed=dict(fixed), values=np.array(rows), engine=engine
    )


def _check_chi_range(values: np.ndarray) -> None:
    for v in np.asarray(values).ravel():
        if not CHI_MIN <= v <= CHI_MAX:  # also catches NaN
            raise InvalidStateError(
                f"capacity value {v!r} escapes [{CHI_MIN:g}, {CHI_MAX:g}]; refusing to emit"
            )


def format_float(v) -> str:
    """Shortest decimal that round-trips to the same double."""
    return repr(float(v))


def _ordered_fixed(fixed: dict[str, float]) -> list[tuple[str, float]]:
    return [(name, fixed[name]) for name in AXIS_NAMES if name in fixed]


def render_csv(grid: SweepGrid) -> str:
    """Serialize a grid in the self-describing CSV layout.

    Line 1 is ``# <tool> v<version> engine=<e> fixed=<k=v,...>``, line 2 the
    header ``y\\x,<x values>``, then one row per y value.
    """
    _check_chi_range(grid.values)
    fixed_part = ",".join(f"{k}={format_float(v)}" for k, v in _ordered_fixed(grid.fixed))
    lines = [f"# {TOOL_NAME} v{grid.version} engine={grid.engine} fixed={fixed_part}"]
    lines.append("y\\x," + ",".join(format_float(x) for x in grid.x_axis.values()))
    for y_value, row in zip(grid.y_axis.values(), grid.values):
        lines.append(format_float(y_value) + "," + ",".join(format_float(c) for c in row))
    return "\n".join(lines) + "\n"


def render_json(grid: SweepGrid) -> str:
    _check_chi_range(grid.values)
    payload = {
        "schema_version": 1,
        "tool": TOOL_NAME,
        "version": grid.version,
        "engine": grid.engine,
        "x_axis": grid.x_axis.to_dict(),
        "y_axis": grid.y_axis.to_dict(),
        "fixed": dict(_ordered_fixed(grid.fixed)),
        "x_values": [float(v) for v in grid.x_axis.values()],
        "y_values": [float(v) for v in grid.y_axis.values()],
        "values": [[float(c) for c in row] for row in grid.values],
    }
    return json.dumps(payload, indent=2) + "\n"


@dataclass(frozen=True)
class FigurePreset:
    """Axes and fixed values of one built-in figure grid."""

    x: str
    y: str
    fixed: dict[str, float]


FIGURES: dict[str, FigurePreset] = {
    "2a": FigurePreset(x="gamma", y="omega", fixed={"T": 0.01}),
    "2b": FigurePreset(x="gamma", y="omega", fixed={"T": 1.0}),
    "3a": FigurePreset(x="T", y="omega", fixed={"gamma": 1.0}),
    "3b": FigurePreset(x="T", y="omega", fixed={"gamma": 3.0}),
    "4a": FigurePreset(x="T", y="gamma", fixed={"omega": 1.0}),
    "4b": FigurePreset(x="T", y="gamma", fixed={"omega": 2.0}),
    "5a": FigurePreset(x="T", y="p", fixed={"omega": 1.0, "gamma": 1.0}),
    "5b": FigurePreset(x="T", y="p", fixed={"omega": 3.0, "gamma": 3.0}),
    "6a": FigurePreset(x="gamma", y="p", fixed={"T": 0.01, "omega": 1.0}),
    "6b": FigurePreset(x="omega", y="p", fixed={"T": 0.01, "gamma": 1.0}),
}


def figure_grid(
    figure_id: str,
    engine: str = "closed_form",
    jobs: int = 1,
    x_axis: AxisSpec | None = None,
    y_axis: AxisSpec | None = None,
) -> SweepGrid:
    """Evaluate one built-in figure grid (axes overridable)."""
    preset = _figure_preset(figure_id)
    x = x_axis if x_axis is not None else AxisSpec.default(preset.x)
    y = y_axis if y_axis is not None else AxisSpec.default(preset.y)
    if x.name != preset.x or y.name != preset.y:
        raise InvalidParameterError(
            f"figure {figure_id} uses axes ({preset.x}, {preset.y}), got ({x.name}, {y.name})"
        )
    return evaluate_sweep(x, y, dict(preset.fixed), engine=engine, jobs=jobs)


def figure_config(figure_id: str, grid: SweepGrid) -> dict:
    """Sidecar payload recording the exact configuration of a figure run."""
    return {
        "schema_version": 1,
        "tool": TOOL_NAME,
        "version": grid.version,
        "figure": figure_id,
        "engine": grid.engine,
        "x_axis": grid.x_axis.to_dict(),
        "y_axis": grid.y_axis.to_dict(),
        "fixed": dict(_ordered_fixed(grid.fixed)),
    }


def _figure_preset(figure_id: str) -> FigurePreset:
    try:
        return FIGURES[figure_id]
    except KeyError:
        known = ", ".join(sorted(FIGURES))
        raise InvalidParameterError(f"unknown figure id {figure_id!r}; known ids: {known}") from None
