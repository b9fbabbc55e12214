"""Splitting-integrator experiments: per-step BCH truncation error against the step size."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction as F

import numpy as np

from .algebra import Element, linear_combination
from .bch import bch_truncated
from .errors import ConfigurationError, DomainError
from .models import ModelSpec

REFERENCE_EXTRA = 8
GRID_POINTS = 20


def stability_threshold(model: ModelSpec, A_gen: Element, B_gen: Element, K: float = 1.0) -> float:
    """dt_max = 1 / (4 K B (||A|| + ||B||)); inf when both generators vanish."""
    s = float(model.norm(A_gen)) + float(model.norm(B_gen))
    if s == 0:
        return math.inf
    return 1.0 / (4.0 * K * model.analytic_B * s)


def default_grid(dt_max: float, points: int = GRID_POINTS) -> list:
    """Log-spaced steps over [dt_max / 10, 1.6 dt_max]."""
    if not math.isfinite(dt_max):
        raise DomainError("no finite threshold to build a grid around")
    return [float(d) for d in np.geomspace(dt_max / 10, 1.6 * dt_max, points)]


@dataclass
class SplittingExperiment:
    model: ModelSpec
    A_gen: Element
    B_gen: Element
    dt_grid: list | None = None
    N: int = 3
    horizon: int = 1
    K: float = 1.0

    def __post_init__(self):
        if not self.model.has_ambient_product:
            self.model.multiply(Element.zero(), Element.zero())
        for name, g in (("A_gen", self.A_gen), ("B_gen", self.B_gen)):
            if g.has_unit_part():
                raise DomainError(f"{name} must have no ambient unit component")
        if self.N < 1:
            raise DomainError(f"N must be >= 1, got {self.N}")
        if self.horizon < 1:
            raise ConfigurationError(f"horizon must be >= 1, got {self.horizon}")

    @property
    def threshold(self) -> float:
        return stability_threshold(self.model, self.A_gen, self.B_gen, self.K)

    def grid(self) -> list:
        return [float(d) for d in self.dt_grid] if self.dt_grid is not None else default_grid(self.threshold)


@dataclass
class SweepResult:
    N: int
    threshold: float
    dt: list
    error: list
    within: list
    levels: list = field(repr=False, default_factory=list)  # Z_n(A, B) for n <= N + 8
    model: ModelSpec | None = field(repr=False, default=None)

    def rows(self) -> list:
        return [{"dt": d, "error": e, "threshold": self.threshold, "within": w}
                for d, e, w in zip(self.dt, self.error, self.within)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=["dt", "error", "threshold", "within"], lineterminator="\n")
        writer.writeheader()
        for row in self.rows():
            writer.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in row.items()})
        return buf.getvalue()

    def error_at(self, dt: float) -> float:
        return truncation_error(self.levels, self.N, dt, self.model)


def truncation_error(levels: list, N: int, dt: float, model: ModelSpec) -> float:
    """||sum_{n=N+1}^{len(levels)} dt^n Z_n|| = ||BCH_ref(dt A, dt B) - BCH_N(dt A, dt B)||."""
    if dt == 0:
        return 0.0
    parts = [(dt ** n, z) for n, z in enumerate(levels, start=1) if n > N]
    return float(model.norm(linear_combination(parts, "float")))


def sweep(exp: SplittingExperiment) -> SweepResult:
    """e(dt) for each grid step, reference BCH at order N + 8.

    Z_n(dt A, dt B) = dt^n Z_n(A, B), so the expansion is built once.
    """
    A, B = exp.A_gen.to_backend("float"), exp.B_gen.to_backend("float")
    series = bch_truncated(A, B, exp.model, exp.N + REFERENCE_EXTRA)
    levels = series.levels()
    dt_max = exp.threshold
    grid = exp.grid()
    errors = [truncation_error(levels, exp.N, d, exp.model) for d in grid]
    return SweepResult(exp.N, dt_max, grid, errors, [bool(d < dt_max) for d in grid], levels, exp.model)


def lie_trotter_defect(result: SweepResult, dt: float) -> float:
    """||BCH_ref(dt A, dt B) - dt (A + B)||: the per-step defect of plain Lie-Trotter splitting."""
    return truncation_error(result.levels, 1, dt, result.model)


def horizon_error(exp: SplittingExperiment, result: SweepResult, dt: float) -> float:
    """Defect after ``horizon`` identical steps.

    Powers of one element associate in an alternative algebra, so composing
    equal steps multiplies the per-step defect by the number of steps.
    """
    return exp.horizon * result.error_at(dt)


def observed_order(dt, error, lo: float, hi: float) -> float:
    """Least-squares log-log slope of error against dt over lo <= dt <= hi."""
    pts = [(math.log(d), math.log(e)) for d, e in zip(dt, error) if lo <= d <= hi and e > 0]
    if len(pts) < 2:
        raise DomainError(f"need at least two positive errors in [{lo}, {hi}] to fit a slope")
    xs, ys = np.array(pts).T
    return float(np.polyfit(xs, ys, 1)[0])


def trend_fit(dt, error, lo: float, hi: float) -> tuple:
    """(slope, intercept) of the log-log trend line."""
    pts = [(math.log(d), math.log(e)) for d, e in zip(dt, error) if lo <= d <= hi and e > 0]
    if len(pts) < 2:
        raise DomainError(f"need at least two positive errors in [{lo}, {hi}] to fit a trend")
    xs, ys = np.array(pts).T
    slope, icpt = np.polyfit(xs, ys, 1)
    return float(slope), float(icpt)


def trend_excess(result: SweepResult, factor: float = 1.25, window: tuple = (0.05, 0.5)) -> float:
    """e(factor dt_max) divided by the below-threshold trend extrapolated to that step.

    The trend is fitted over window[0] dt_max <= dt <= window[1] dt_max.
    """
    dt_max = result.threshold
    slope, icpt = trend_fit(result.dt, result.error, window[0] * dt_max, window[1] * dt_max)
    at = factor * dt_max
    return result.error_at(at) / math.exp(icpt + slope * math.log(at))


def default_generators(model: ModelSpec, backend: str = "exact") -> tuple:
    """Generator pair with ||A|| + ||B|| = 1 and nonzero BCH levels at every order tried."""
    if model.name == "zorn":
        A = Element({(1, 0): F(3, 8), (4, 0): F(1, 8)}, "exact")
        B = Element({(1, 0): F(1, 4), (2, 0): F(1, 4)}, "exact")
        return A.to_backend(backend), B.to_backend(backend)
    if model.name == "operator_norm":
        x, y = model.reflection_pair(backend)
        return x / 2, y / 2
    model.multiply(Element.zero(), Element.zero())
    raise ConfigurationError(f"no default generators for {model.name!r}")
