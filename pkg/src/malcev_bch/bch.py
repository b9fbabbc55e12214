"""Truncated BCH series through exp/log in the ambient algebra.

Series are bigraded by (degree in x, degree in y).  The grading is carried
structurally, so every homogeneous component Z_n is extracted exactly and
no polarization over sample scalings is needed.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import Element, as_rational, coerce, linear_combination
from .errors import ConfigurationError, DomainError
from .models import ModelSpec, catalog_lookup
from .trees import TREE_CAP, TreeEvaluator, catalan, catalan_generating, majorant

# Zorn rows of the published truncation-norm table (x = t e1, y = t e2), kept
# only for the side-by-side reconciliation column
ZERO_LEVEL_RTOL = 1e-10

PRINTED_ZORN_NORMS = {
    0.12: (0.2400, 0.0576, 0.0138, 0.0033, 0.0008, 0.0002, 5.0e-5, 1.2e-5, 2.9e-6, 7.0e-7, 1.7e-7, 4.1e-8),
    0.13: (0.2600, 0.0676, 0.0176, 0.0046, 0.0012, 0.0003, 9.3e-5, 2.4e-5, 6.3e-6, 1.6e-6, 4.2e-7, 1.1e-7),
}


def _require_special(model: ModelSpec) -> None:
    if not model.has_ambient_product:
        model.multiply(Element.zero(), Element.zero())  # raises UnsupportedModelError


def _require_unit_free(x: Element, what: str) -> None:
    if x.has_unit_part():
        raise DomainError(f"{what} must have no ambient unit component")


class BigradedSeries:
    """Finite map (j, k) -> Element with j + k <= N."""

    __slots__ = ("terms", "N", "backend")

    def __init__(self, terms: dict, N: int, backend: str = "exact"):
        bad = [s for s in terms if s[0] < 0 or s[1] < 0 or s[0] + s[1] > N]
        if bad:
            raise DomainError(f"slots {bad} fall outside total degree {N}")
        self.terms = {s: e for s, e in terms.items() if not e.is_zero}
        self.N = N
        self.backend = backend

    def slot(self, j: int, k: int) -> Element:
        return self.terms.get((j, k), Element.zero(self.backend))

    def level(self, n: int) -> Element:
        """Z_n = sum of slots with j + k = n."""
        parts = [(1, e) for (j, k), e in self.terms.items() if j + k == n]
        return linear_combination(parts, self.backend)

    def levels(self) -> list:
        return [self.level(n) for n in range(1, self.N + 1)]

    def __add__(self, other):
        out = dict(self.terms)
        for s, e in other.terms.items():
            out[s] = out[s] + e if s in out else e
        return BigradedSeries(out, min(self.N, other.N), self.backend)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "BigradedSeries":
        return BigradedSeries({s: e * c for s, e in self.terms.items()}, self.N, self.backend)

    def without_slot(self, j: int, k: int) -> "BigradedSeries":
        return BigradedSeries({s: e for s, e in self.terms.items() if s != (j, k)}, self.N, self.backend)

    def multiply(self, other: "BigradedSeries", model: ModelSpec) -> "BigradedSeries":
        """Graded ambient product truncated at total degree N."""
        N = min(self.N, other.N)
        cells = {}
        for (j1, k1), a in self.terms.items():
            for (j2, k2), b in other.terms.items():
                j, k = j1 + j2, k1 + k2
                if j + k <= N:
                    cells.setdefault((j, k), []).append((1, model.multiply(a, b)))
        return BigradedSeries({s: linear_combination(p, self.backend) for s, p in cells.items()}, N, self.backend)

    def __eq__(self, other):
        if not isinstance(other, BigradedSeries):
            return NotImplemented
        return self.N == other.N and self.terms == other.terms

    __hash__ = None

    def to_dict(self) -> dict:
        """{"j,k": [[unit, degree, numerator, denominator], ...]} (floats by their exact binary value)."""
        out = {}
        for (j, k), e in sorted(self.terms.items()):
            rows = []
            for key, c in sorted(e.items()):
                num, den = (c.numerator, c.denominator) if isinstance(c, Fraction) else float(c).as_integer_ratio()
                rows.append([key.unit, key.degree, num, den])
            out[f"{j},{k}"] = rows
        return {"N": self.N, "backend": self.backend, "slots": out}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "BigradedSeries":
        backend = data.get("backend", "exact")
        terms = {}
        for slot, rows in data["slots"].items():
            j, k = (int(v) for v in slot.split(","))
            coeffs = {(u, d): Fraction(num, den) for u, d, num, den in rows}
            if backend == "float":
                coeffs = {key: float(c) for key, c in coeffs.items()}
            terms[(j, k)] = Element(coeffs, backend)
        return cls(terms, int(data["N"]), backend)


def _inverse_factorial(k: int, backend: str):
    return Fraction(1, math.factorial(k)) if backend == "exact" else 1.0 / math.factorial(k)


def exp_series(x: Element, model: ModelSpec, N: int, grade: tuple = (1, 0)) -> BigradedSeries:
    """sum_{k <= N} x^k / k! with x placed in the slot ``grade``.

    Powers are built by repeated left multiplication x^k = x x^{k-1}; in an
    alternative algebra every bracketing of a power agrees.
    """
    _require_special(model)
    _require_unit_free(x, "exp argument")
    if N < 0:
        raise DomainError(f"truncation order must be >= 0, got {N}")
    model.check_element(x)
    backend = x.backend
    gj, gk = grade
    terms = {(0, 0): model.one(backend)}
    power = model.one(backend)
    for k in range(1, N + 1):
        if (gj + gk) * k > N:
            break
        power = model.multiply(x, power)
        if power.is_zero:
            break
        terms[(gj * k, gk * k)] = power * _inverse_factorial(k, backend)
    return BigradedSeries(terms, N, backend)


def log_series(P: BigradedSeries, model: ModelSpec) -> BigradedSeries:
    """log P = sum_k (-1)^{k+1} (P - 1)^k / k for P with unit constant slot."""
    one = model.one(P.backend)
    if P.slot(0, 0) != one:
        raise DomainError("log needs a series whose (0, 0) slot is the ambient unit")
    Q = P.without_slot(0, 0)
    result = Q
    power = Q
    for k in range(2, P.N + 1):
        power = power.multiply(Q, model)
        if not power.terms:
            break
        c = Fraction((-1) ** (k + 1), k) if P.backend == "exact" else (-1) ** (k + 1) / k
        result = result + power.scale(c)
    return result


def bch_truncated(x: Element, y: Element, model: ModelSpec, N: int) -> BigradedSeries:
    """log(exp(x) exp(y)) through total degree N; slot (j, k) is the bidegree-(j, k) part."""
    _require_special(model)
    if N < 1:
        raise DomainError(f"BCH truncation order must be >= 1, got {N}")
    _require_unit_free(x, "x")
    _require_unit_free(y, "y")
    if x.backend != y.backend:
        raise ConfigurationError(f"backend mismatch: {x.backend} vs {y.backend}")
    P = exp_series(x, model, N, (1, 0)).multiply(exp_series(y, model, N, (0, 1)), model)
    return log_series(P, model)


def homogeneous_norms(series: BigradedSeries, model: ModelSpec) -> list:
    """[||Z_1||, ..., ||Z_N||] as floats."""
    return [float(model.norm(z)) for z in series.levels()]


def rescale_levels(levels: list, t, backend="float") -> list:
    """Z_n(t x, t y) = t^n Z_n(x, y)."""
    t = coerce(t, backend)
    return [z.to_backend(backend) * t ** n for n, z in enumerate(levels, start=1)]


def default_shift_cap(N: int, x: Element, y: Element) -> int:
    """N times the largest input shift degree: no truncation loss for monomial inputs."""
    return N * max(x.degrees() | y.degrees() | {0})


# ---------------------------------------------------------------------------
# truncation bounds


def truncation_bound(N: int, K: float, B: float, s: float) -> float:
    """sum_{n > N} K C_{n-1} B^{n-1} s^n, or inf outside K B s < 1/4.

    Closed form via the Catalan generating function; when the tail is tiny
    next to the full sum the subtraction cancels, so it is summed directly.
    """
    if N < 1:
        raise DomainError(f"truncation order must be >= 1, got {N}")
    if s < 0:
        raise DomainError(f"s must be >= 0, got {s}")
    if s == 0:
        return 0.0
    if K * B * s >= 0.25:
        return math.inf
    if B == 0:
        return 0.0
    r = B * s
    total = r * catalan_generating(r)
    head = math.fsum(catalan(n - 1) * r ** n for n in range(1, N + 1))
    tail = total - head
    if tail > 1e-6 * total:
        return K / B * tail
    # direct summation; ratios C_n / C_{n-1} r < 4 r < 1 give a geometric remainder
    term = catalan(N) * r ** (N + 1)
    parts = []
    n = N + 1
    while term > 1e-18 * (parts[0] if parts else term):
        parts.append(term)
        term *= r * (4 * n - 2) / (n + 1)
        n += 1
    return K / B * (math.fsum(parts) + term * 4 * r / (1 - 4 * r))


def asymptotic_tail(N: int, B: float, s: float) -> float:
    """K_N B^N s^{N+1} with K_N = 4^N / (sqrt(pi) N^{3/2})."""
    return 4.0 ** N / (math.sqrt(math.pi) * N ** 1.5) * B ** N * s ** (N + 1)


@dataclass
class TruncationReport:
    N: int
    K: float
    B: float
    s: float
    per_level_norms: list
    majorants: list
    tail_bound: float
    tail_sum: float
    within_radius: bool
    printed: list | None = None
    metadata: dict = field(default_factory=dict)

    def rows(self) -> list:
        out = []
        for n, (z, m) in enumerate(zip(self.per_level_norms, self.majorants), start=1):
            row = {"n": n, "Z_norm": z, "majorant": m, "within_radius": self.within_radius}
            if self.printed is not None:
                row["printed"] = self.printed[n - 1] if n <= len(self.printed) else None
                row["printed_over_computed"] = (row["printed"] / z) if row["printed"] and z else None
            out.append(row)
        return out

    def to_csv(self) -> str:
        rows = self.rows()
        buf = io.StringIO()
        cols = list(rows[0]) if rows else ["n", "Z_norm", "majorant", "within_radius"]
        writer = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: (repr(v) if isinstance(v, float) else ("" if v is None else v)) for k, v in row.items()})
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {"N": self.N, "K": self.K, "B": self.B, "s": self.s, "tail_bound": self.tail_bound,
                "tail_sum": self.tail_sum, "within_radius": self.within_radius, "rows": self.rows(),
                "metadata": self.metadata}


def truncation_report(x: Element, y: Element, model: ModelSpec, N: int, K: float = 1.0,
                      printed=None) -> TruncationReport:
    series = bch_truncated(x, y, model, N)
    norms = homogeneous_norms(series, model)
    B = model.analytic_B
    s = float(model.norm(x)) + float(model.norm(y))
    return TruncationReport(
        N=N, K=K, B=B, s=s, per_level_norms=norms,
        majorants=[majorant(n, K, B, s) for n in range(1, N + 1)],
        tail_bound=asymptotic_tail(N, B, s), tail_sum=truncation_bound(N, K, B, s),
        within_radius=K * B * s < 0.25, printed=list(printed) if printed is not None else None,
        metadata={"model": model.name, "params": {k: str(v) for k, v in model.params.items()},
                  "backend": x.backend, "shift_cap": model.shift_cap})


def default_directions(model: ModelSpec, backend: str = "exact") -> tuple:
    """A canonical unit-norm generator pair for the CLI and the radius scan."""
    if model.name == "zorn":
        return Element.basis(1, 0, 1, backend), Element.basis(2, 0, 1, backend)
    if model.name == "operator_norm":
        return model.reflection_pair(backend)
    _require_special(model)
    raise ConfigurationError(f"no default directions for {model.name!r}")


# ---------------------------------------------------------------------------
# radius diagnostic


@dataclass
class RadiusProfile:
    t_grid: list
    growth: list  # g(t) = max_n ||Z_{n+1}|| / ||Z_n||
    stable: list
    level_norms: list  # per t
    radius_estimate: float  # smallest t with g(t) >= 1 (inf if none)

    def rows(self) -> list:
        return [{"t": t, "growth": g, "stable": st} for t, g, st in zip(self.t_grid, self.growth, self.stable)]


def radius_diagnostic(model: ModelSpec, x_dir: Element, y_dir: Element, t_grid, N: int) -> RadiusProfile:
    """Level-ratio growth indicator along t -> (t x_dir, t y_dir).

    By homogeneity ||Z_n(t x, t y)|| = t^n ||Z_n(x, y)||, so the expansion is
    computed once and g(t) = t max_n q_n with q_n = ||Z_{n+1}|| / ||Z_n|| over
    levels with ||Z_n|| > 0.
    """
    series = bch_truncated(x_dir, y_dir, model, N)
    base = homogeneous_norms(series, model)
    # float cancellation leaves ~1e-15 residue on levels that vanish exactly
    floor = ZERO_LEVEL_RTOL * max(base, default=0.0) if series.backend == "float" else 0.0
    base = [z if z > floor else 0.0 for z in base]
    ratios = [base[n + 1] / base[n] for n in range(len(base) - 1) if base[n] > 0]
    q = max(ratios, default=0.0)
    growth, stable, norms = [], [], []
    for t in t_grid:
        t = float(t)
        g = t * q
        growth.append(g)
        stable.append(g < 1)
        norms.append([t ** n * z for n, z in enumerate(base, start=1)])
    return RadiusProfile([float(t) for t in t_grid], growth, stable, norms, 1.0 / q if q > 0 else math.inf)


# ---------------------------------------------------------------------------
# sharpness


@dataclass
class SharpnessLevel:
    n: int
    trees: int
    saturated: int  # trees with ||[x,y]_T|| = t^n exactly
    vanishing: int
    labeled_sum: Fraction  # sum over all labeled trees
    level_sum: Fraction  # labeled_sum / 2^n: per-shape mass averaged over labelings
    catalan_mass: Fraction  # C_{n-1} t^n
    plus_nodes: int
    minus_nodes: int
    zero_nodes: int

    @property
    def all_saturated(self) -> bool:
        return self.saturated == self.trees

    @property
    def sum_matches(self) -> bool:
        return self.level_sum == self.catalan_mass


@dataclass
class SharpnessReport:
    alpha: Fraction
    M: int
    t: Fraction
    levels: list

    @property
    def all_saturated(self) -> bool:
        return all(lv.all_saturated for lv in self.levels)

    @property
    def sums_match(self) -> bool:
        return all(lv.sum_matches for lv in self.levels)

    @property
    def all_signs_positive(self) -> bool:
        return all(lv.minus_nodes == 0 and lv.zero_nodes == 0 for lv in self.levels)

    def rows(self) -> list:
        return [{"n": lv.n, "trees": lv.trees, "saturated": lv.saturated, "vanishing": lv.vanishing,
                 "level_sum": float(lv.level_sum), "catalan_mass": float(lv.catalan_mass),
                 "plus_nodes": lv.plus_nodes, "minus_nodes": lv.minus_nodes, "zero_nodes": lv.zero_nodes}
                for lv in self.levels]


def _sign_stats(n_max: int, M: int, epsilon):
    """Per labeled tree, in enumeration order: (degree, +1 nodes, -1 nodes, 0 nodes)."""
    levels = {1: [(1, 0, 0, 0), (M, 0, 0, 0)]}
    for n in range(2, n_max + 1):
        row = []
        for k in range(1, n):
            for dl, pl, ml, zl in levels[k]:
                for dr, pr, mr, zr in levels[n - k]:
                    e = epsilon(dl, dr)
                    row.append((dl + dr, pl + pr + (e > 0), ml + mr + (e < 0), zl + zr + (e == 0)))
        levels[n] = row
    return levels


def saturating_pair(alpha, M: int, t, backend: str = "exact"):
    """x = a S^1, y = b S^M with a alpha = b alpha^M = t."""
    alpha, t = as_rational(alpha), as_rational(t)
    x = Element.basis(1, 1, t / alpha, "exact").to_backend(backend)
    y = Element.basis(1, M, t / alpha ** M, "exact").to_backend(backend)
    return x, y


def sharpness_harness(alpha, M: int, t, n_max: int, cap: int = TREE_CAP) -> SharpnessReport:
    """Norms of every labeled nested commutator of the saturating pair, exact backend."""
    if not isinstance(M, int) or M < 3:
        raise DomainError(f"the saturating pair needs M >= 3, got {M!r}")
    alpha, t = as_rational(alpha), as_rational(t)
    if alpha <= 1:
        raise ConfigurationError(f"alpha must be > 1, got {alpha}")
    if n_max < 1:
        raise DomainError(f"n_max must be >= 1, got {n_max}")
    model = catalog_lookup("exponential", {"alpha": alpha})
    x, y = saturating_pair(alpha, M, t)
    ev = TreeEvaluator(x, y, model, cap)
    signs = _sign_stats(n_max, M, model.epsilon)
    levels = []
    for n in range(1, n_max + 1):
        target = t ** n
        sat = zero = 0
        total = Fraction(0)
        for v in ev.iter_level(n):
            nv = model.norm(v)
            total += nv
            sat += nv == target
            zero += nv == 0
        st = signs[n]
        # node signs are only meaningful on trees that survive
        live = [s for s in st if s[3] == 0]
        levels.append(SharpnessLevel(
            n=n, trees=len(st), saturated=sat, vanishing=zero, labeled_sum=total,
            level_sum=total / 2 ** n, catalan_mass=catalan(n - 1) * target,
            plus_nodes=sum(s[1] for s in live), minus_nodes=sum(s[2] for s in live),
            zero_nodes=sum(s[3] for s in st)))
    return SharpnessReport(alpha, M, t, levels)
