"""Catalog of concrete Banach-Malcev models.

Every model knows its bracket on basis indices, its norm, its degree
restrictions and a closed-form upper bound for the bracket constant B.
Models with an ambient product (Zorn shifts, matrices) additionally know how
to multiply, which is what exp/log and hence BCH need.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable

import numpy as np

from . import zorn
from .algebra import (
    BACKENDS,
    BasisIndex,
    Element,
    WeightLaw,
    as_rational,
    bilinear,
    linear_combination,
    norm as weighted_norm,
)
from .errors import ConfigurationError, DomainError, UnsupportedModelError


def default_epsilon(m: int, n: int) -> int:
    """+1 for m < n, -1 for m > n, 0 on the diagonal."""
    return (m < n) - (m > n)


class ModelSpec:
    """Base class; concrete models override the basis-level rules."""

    name: str = "abstract"
    norm_kind: str = "weighted_l1"
    unit_dimension: int = 1
    max_degree: int | None = None

    def __init__(self, params: dict, weight: WeightLaw | None, min_degree: int = 0,
                 shift_cap: int | None = None):
        self.params = dict(params)
        self.weight = weight
        self.min_degree = min_degree
        self.shift_cap = shift_cap
        self._rules = {"exact": {}, "float": {}}
        self._products = {"exact": {}, "float": {}}

    # -- description -------------------------------------------------------

    @property
    def speciality(self) -> str:
        return "special" if self.has_ambient_product else "unknown"

    @property
    def is_lie(self) -> bool:
        return True

    @property
    def has_ambient_product(self) -> bool:
        return False

    @property
    def analytic_B(self) -> float:
        raise NotImplementedError

    @property
    def analytic_B_formula(self) -> str:
        raise NotImplementedError

    def units(self) -> range:
        return range(1, self.unit_dimension + 1)

    def __repr__(self):
        return f"{type(self).__name__}({self.name!r}, {self.params})"

    def with_min_degree(self, min_degree: int) -> "ModelSpec":
        return self._copy(min_degree=min_degree)

    def with_shift_cap(self, cap: int | None) -> "ModelSpec":
        return self._copy(shift_cap=cap)

    def with_weight(self, weight: WeightLaw) -> "ModelSpec":
        return self._copy(weight=weight)

    def _copy(self, **changes) -> "ModelSpec":
        kwargs = {"params": self.params, "weight": self.weight, "min_degree": self.min_degree,
                  "shift_cap": self.shift_cap}
        kwargs.update(changes)
        return type(self)(**kwargs)

    # -- validation --------------------------------------------------------

    def check_key(self, key: BasisIndex, ambient: bool = False) -> None:
        lo = 0 if ambient else 1
        if not lo <= key.unit <= self.unit_dimension:
            what = "ambient" if ambient else "Malcev"
            raise DomainError(f"{self.name}: unit index {key.unit} is not a {what} basis unit "
                              f"(expected {lo}..{self.unit_dimension})")
        if key.degree < self.min_degree and not (ambient and key.unit == 0):
            raise DomainError(f"{self.name}: shift degree {key.degree} violates the restriction "
                              f"degree >= {self.min_degree}")
        if self.max_degree is not None and key.degree > self.max_degree:
            raise DomainError(f"{self.name}: shift degree {key.degree} not allowed "
                              f"(model only has degree <= {self.max_degree})")

    def check_element(self, x: Element, ambient: bool = False) -> None:
        for key in x:
            self.check_key(key, ambient)

    # -- bracket -----------------------------------------------------------

    def basis_bracket(self, kx: BasisIndex, ky: BasisIndex) -> tuple:
        """[basis kx, basis ky] as ((BasisIndex, Fraction), ...)."""
        raise NotImplementedError

    def _rule(self, backend: str, products: bool = False) -> Callable:
        cache = (self._products if products else self._rules)[backend]
        base = self.basis_product if products else self.basis_bracket
        conv = float if backend == "float" else (lambda c: c)

        def rule(kx, ky):
            key = (kx, ky)
            hit = cache.get(key)
            if hit is None:
                hit = tuple((k, conv(c)) for k, c in base(kx, ky))
                cache[key] = hit
            return hit

        return rule

    def bracket(self, x: Element, y: Element) -> Element:
        self.check_element(x)
        self.check_element(y)
        return bilinear(x, y, self._rule(x.backend), self.shift_cap, self.weight)

    # -- ambient product -----------------------------------------------------

    def basis_product(self, kx: BasisIndex, ky: BasisIndex) -> tuple:
        raise UnsupportedModelError(
            f"model {self.name!r} has no ambient alternative product; exp/log (and BCH) are only "
            "defined for special models embedded in an alternative algebra")

    def multiply(self, x: Element, y: Element) -> Element:
        if not self.has_ambient_product:
            self.basis_product(BasisIndex(1, 0), BasisIndex(1, 0))
        self.check_element(x, ambient=True)
        self.check_element(y, ambient=True)
        return bilinear(x, y, self._rule(x.backend, products=True), self.shift_cap, self.weight)

    def one(self, backend: str = "exact") -> Element:
        raise UnsupportedModelError(f"model {self.name!r} has no ambient unit")

    def commutator(self, x: Element, y: Element) -> Element:
        return self.multiply(x, y) - self.multiply(y, x)

    # -- norms and ratios --------------------------------------------------

    def norm(self, x: Element):
        return weighted_norm(x, self.weight)

    def norm_dense(self, vectors: np.ndarray, basis: list) -> np.ndarray:
        """Row-wise norms of element coordinate vectors over ``basis`` (float)."""
        w = np.array([self.weight.weight(k.degree) for k in basis])
        return np.abs(vectors) @ w

    def envelope(self, m: int, n: int) -> tuple:
        """((k, bound on |c^k_{m,n}|), ...): the worst admissible stencil at (m, n)."""
        raise NotImplementedError

    def realized(self, m: int, n: int) -> tuple:
        """((k, |c^k_{m,n}|), ...) for the concrete sign choice of this model."""
        raise NotImplementedError

    def local_ratio(self, m: int, n: int, realized: bool = False) -> float:
        """sum_k |c^k_{m,n}| w_k / (w_m w_n)."""
        for d in (m, n):
            if d < self.min_degree:
                raise DomainError(f"{self.name}: degree {d} violates the restriction degree >= {self.min_degree}")
            if self.max_degree is not None and d > self.max_degree:
                raise DomainError(f"{self.name}: degree {d} exceeds the model's degree range")
        stencil = self.realized(m, n) if realized else self.envelope(m, n)
        w = self.weight.weight
        return sum(float(c) * w(k) for k, c in stencil) / (w(m) * w(n))

    def random_element(self, rng: np.random.Generator, terms: int = 3, max_degree: int = 3,
                       backend: str = "float", scale: float = 1.0) -> Element:
        lo = self.min_degree
        hi = lo + max_degree if self.max_degree is None else self.max_degree
        out = {}
        for _ in range(terms):
            key = (int(rng.integers(1, self.unit_dimension + 1)), int(rng.integers(lo, hi + 1)))
            if backend == "exact":
                c = Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 7)))
            else:
                c = float(rng.normal()) * scale
            out[key] = out.get(key, 0) + c
        return Element(out, backend)

    def to_config(self, backend: str = "exact") -> "ModelConfig":
        return ModelConfig(self.name, dict(self.params), self.weight.to_dict() if self.weight else None,
                           backend, self.shift_cap)


# ---------------------------------------------------------------------------


class ScalarShiftModel(ModelSpec):
    """[S^m, S^n] = eps(m,n) gamma^(m+n) sum_{D in offsets} S^(m+n+D)."""

    def __init__(self, params, weight, min_degree=0, shift_cap=None, *, name, offsets=(0,),
                 damping=None, epsilon=default_epsilon, bound=None, formula=""):
        super().__init__(params, weight, min_degree, shift_cap)
        self.name = name
        self.offsets = tuple(offsets)
        self.damping = damping
        self.epsilon = epsilon
        self._bound = bound
        self._formula = formula

    def _copy(self, **changes):
        kwargs = {"params": self.params, "weight": self.weight, "min_degree": self.min_degree,
                  "shift_cap": self.shift_cap, "name": self.name, "offsets": self.offsets,
                  "damping": self.damping, "epsilon": self.epsilon, "bound": self._bound,
                  "formula": self._formula}
        kwargs.update(changes)
        return ScalarShiftModel(**kwargs)

    @property
    def analytic_B(self) -> float:
        return float(self._bound(self)) if callable(self._bound) else float(self._bound)

    @property
    def analytic_B_formula(self) -> str:
        return self._formula

    def _magnitude(self, m, n) -> Fraction:
        if self.damping is None:
            return Fraction(1)
        return as_rational(self.damping) ** (m + n)

    def _outputs(self, m, n):
        return [m + n + d for d in self.offsets if m + n + d >= 0]

    def basis_bracket(self, kx, ky):
        m, n = kx.degree, ky.degree
        eps = self.epsilon(m, n)
        if eps == 0:
            return ()
        c = eps * self._magnitude(m, n)
        return tuple((BasisIndex(1, k), Fraction(c)) for k in self._outputs(m, n))

    def envelope(self, m, n):
        c = self._magnitude(m, n)
        return tuple((k, c) for k in self._outputs(m, n))

    def realized(self, m, n):
        c = abs(self.epsilon(m, n)) * self._magnitude(m, n)
        return tuple((k, c) for k in self._outputs(m, n)) if c else ()


class ZornShiftModel(ModelSpec):
    """Split-octonion units lifted to shifts: [e_i S^m, e_j S^n] = (e_i e_j - e_j e_i) S^(m+n)."""

    name = "zorn"
    unit_dimension = 7

    @property
    def is_lie(self):
        return False

    @property
    def has_ambient_product(self):
        return True

    @property
    def analytic_B(self):
        return 2.0

    @property
    def analytic_B_formula(self):
        return "max |c_ij| = 2 (exponential weights cancel)"

    def basis_bracket(self, kx, ky):
        d = kx.degree + ky.degree
        return tuple((BasisIndex(k, d), c) for k, c in zorn.unit_commutator(kx.unit, ky.unit))

    def basis_product(self, kx, ky):
        d = kx.degree + ky.degree
        return tuple((BasisIndex(k, d), c) for k, c in zorn.unit_product(kx.unit, ky.unit))

    def one(self, backend="exact"):
        return Element.basis(0, 0, 1, backend)

    def envelope(self, m, n):
        return ((m + n, Fraction(2)),)

    realized = envelope

    def unit_witness(self):
        """Unit pair with the largest commutator constant (first in lexicographic order)."""
        best = max(((abs(c), -i, -j) for (i, j), (k, c) in zorn.commutator_table().items()))
        return (-best[1], -best[2])


class MatrixModel(ModelSpec):
    """n x n real matrices with the operator (spectral) norm and commutator bracket."""

    name = "operator_norm"
    norm_kind = "operator"
    max_degree = 0

    def __init__(self, params, weight=None, min_degree=0, shift_cap=None):
        super().__init__(params, weight, min_degree, shift_cap)
        self.dim = int(params.get("dim", 2))
        self.unit_dimension = self.dim * self.dim

    @property
    def has_ambient_product(self):
        return True

    @property
    def analytic_B(self):
        return 2.0

    @property
    def analytic_B_formula(self):
        return "||uv - vu|| <= 2||u|| ||v||"

    def entry(self, r: int, c: int) -> int:
        return r * self.dim + c + 1

    def position(self, unit: int) -> tuple:
        return divmod(unit - 1, self.dim)

    def basis_product(self, kx, ky):
        r, c = self.position(kx.unit)
        c2, d = self.position(ky.unit)
        if c != c2:
            return ()
        return ((BasisIndex(self.entry(r, d), 0), Fraction(1)),)

    def basis_bracket(self, kx, ky):
        out = {}
        for k, c in self.basis_product(kx, ky):
            out[k] = out.get(k, 0) + c
        for k, c in self.basis_product(ky, kx):
            out[k] = out.get(k, 0) - c
        return tuple((k, c) for k, c in out.items() if c != 0)

    def check_key(self, key, ambient=False):
        if not 1 <= key.unit <= self.unit_dimension or key.degree != 0:
            raise DomainError(f"{self.name}: {tuple(key)} is not a matrix unit of a {self.dim}x{self.dim} matrix")

    def one(self, backend="exact"):
        return Element({(self.entry(i, i), 0): 1 for i in range(self.dim)}, backend)

    def to_matrix(self, x: Element) -> np.ndarray:
        a = np.zeros((self.dim, self.dim))
        for k, c in x.items():
            r, col = self.position(k.unit)
            a[r, col] = float(c)
        return a

    def from_matrix(self, a, backend="float") -> Element:
        a = np.asarray(a) if backend == "float" else a
        return Element({(self.entry(r, c), 0): a[r][c] for r in range(self.dim) for c in range(self.dim)}, backend)

    def norm(self, x):
        return float(np.linalg.norm(self.to_matrix(x), 2))

    def norm_dense(self, vectors, basis):
        full = np.zeros((vectors.shape[0], self.unit_dimension))
        for col, k in enumerate(basis):
            full[:, k.unit - 1] = vectors[:, col]
        mats = full.reshape(-1, self.dim, self.dim)
        return np.linalg.norm(mats, ord=2, axis=(1, 2))

    def envelope(self, m, n):
        raise UnsupportedModelError("matrix model has no shift stencil")

    realized = envelope

    def local_ratio(self, m, n, realized=False):
        raise UnsupportedModelError("matrix model has no shift stencil; use bracket_constant")

    def reflection_pair(self, backend="exact"):
        """diag(1,-1) and the swap on the first two coordinates: ||[x,y]|| = 2 ||x|| ||y||."""
        x = Element({(self.entry(0, 0), 0): 1, (self.entry(1, 1), 0): -1}, backend)
        y = Element({(self.entry(0, 1), 0): 1, (self.entry(1, 0), 0): 1}, backend)
        return x, y


class MalcevLambdaModel(ModelSpec):
    """m_lambda: [e1,e2] = e3, [e2,e3] = lambda e1, [e3,e1] = lambda e2, Euclidean norm."""

    name = "m_lambda"
    unit_dimension = 3
    norm_kind = "euclidean"
    max_degree = 0

    def __init__(self, params, weight=None, min_degree=0, shift_cap=None):
        super().__init__(params, weight, min_degree, shift_cap)
        self.lam = as_rational(params.get("lambda", params.get("lam", 0)))
        self._table = {
            (1, 2): (3, Fraction(1)), (2, 3): (1, self.lam), (3, 1): (2, self.lam),
        }

    @property
    def speciality(self):
        return "special" if self.lam in (0, -1) else "non_special"

    @property
    def analytic_B(self):
        return max(1.0, abs(float(self.lam)))

    @property
    def analytic_B_formula(self):
        return "max(1, |lambda|)"

    @property
    def associator_bound(self) -> float:
        """Claimed jacobiator constant 3|lambda + 1|."""
        return 3 * abs(float(self.lam) + 1)

    def basis_bracket(self, kx, ky):
        i, j = kx.unit, ky.unit
        if (i, j) in self._table:
            k, c = self._table[(i, j)]
        elif (j, i) in self._table:
            k, c = self._table[(j, i)]
            c = -c
        else:
            return ()
        return ((BasisIndex(k, 0), c),) if c != 0 else ()

    def norm(self, x):
        return math.sqrt(math.fsum(float(c) ** 2 for c in x._terms.values()))

    def norm_dense(self, vectors, basis):
        return np.sqrt((vectors ** 2).sum(axis=1))

    def envelope(self, m, n):
        raise UnsupportedModelError("m_lambda has no shift stencil")

    realized = envelope

    def local_ratio(self, m=0, n=0, realized=False):
        if (m, n) != (0, 0):
            raise DomainError("m_lambda only has degree 0")
        return max(self.norm(self.bracket(Element.basis(i), Element.basis(j)))
                   for i in self.units() for j in self.units())


# ---------------------------------------------------------------------------
# catalog


CATALOG_NAMES = ("operator_norm", "exponential", "polynomial", "tree_branching", "mixed",
                 "mixed_offset", "damped", "zorn", "m_lambda", "normalized_shift")

# the seven model families of the bracket-constant classification table
CLASSIFIED_MODELS = (
    ("operator_norm", {}),
    ("exponential", {"alpha": 2}),
    ("polynomial", {"p": 1}),
    ("tree_branching", {"b": 3}),
    ("mixed", {"alpha": 2, "p": 2}),
    ("damped", {"gamma": 0.7}),
    ("zorn", {}),
)

_DEFAULTS = {
    "operator_norm": {"dim": 2},
    "exponential": {"alpha": 2},
    "normalized_shift": {"alpha": 2},
    "polynomial": {"p": 1},
    "tree_branching": {"b": 3},
    "mixed": {"alpha": 2, "p": 2},
    "mixed_offset": {"alpha": 1.3, "offsets": [-1, 0, 1], "p": 1},
    "damped": {"gamma": 0.7, "alpha": 2},
    "zorn": {"alpha": 2},
    "m_lambda": {"lambda": -0.9},
}


def _need(cond, msg):
    if not cond:
        raise ConfigurationError(msg)


def _num(params, key):
    v = params[key]
    if isinstance(v, str):
        try:
            v = as_rational(v)
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigurationError(f"parameter {key}={v!r} is not a number") from exc
    if not isinstance(v, (int, float, Fraction)) or isinstance(v, bool):
        raise ConfigurationError(f"parameter {key}={v!r} is not a number")
    return v


def catalog_lookup(name: str, params: dict | None = None, *, weight: WeightLaw | None = None,
                   min_degree: int | None = None, shift_cap: int | None = None, **kw) -> ModelSpec:
    """Build a fully populated model from its catalog name and parameters."""
    if name not in CATALOG_NAMES:
        raise ConfigurationError(f"unknown model {name!r}; known models: {', '.join(CATALOG_NAMES)}")
    given = dict(params or {})
    given.update(kw)
    unknown = set(given) - set(_DEFAULTS[name]) - ({"lam"} if name == "m_lambda" else set())
    if unknown:
        raise ConfigurationError(f"model {name!r} does not take parameters {sorted(unknown)}")
    p = dict(_DEFAULTS[name])
    p.update(given)
    if shift_cap is not None:
        _need(isinstance(shift_cap, int) and shift_cap >= 0, f"shift_cap must be a non-negative integer, got {shift_cap!r}")

    if name == "operator_norm":
        _need(isinstance(p["dim"], int) and p["dim"] >= 2, f"operator_norm needs integer dim >= 2, got {p['dim']!r}")
        return MatrixModel(p, None, 0, shift_cap)
    if name == "m_lambda":
        if "lam" in p:
            p["lambda"] = p.pop("lam")
        _num(p, "lambda")
        return MalcevLambdaModel(p, None, 0, shift_cap)

    if "alpha" in p:
        alpha = _num(p, "alpha")
        _need(alpha > 1, f"{name} needs alpha > 1, got {alpha!r}")
    if name == "zorn":
        model = ZornShiftModel(p, weight or WeightLaw.exponential(p["alpha"]), 0, shift_cap)
        return model.with_min_degree(min_degree) if min_degree is not None else model

    if name in ("exponential", "normalized_shift"):
        w = weight or WeightLaw.exponential(p["alpha"])
        model = ScalarShiftModel(p, w, 0, shift_cap, name=name, bound=1, formula="w_{m+n}/(w_m w_n) = 1")
    elif name == "polynomial":
        pp = _num(p, "p")
        _need(pp >= 0, f"polynomial needs p >= 0, got {pp!r}")
        model = ScalarShiftModel(p, weight or WeightLaw.polynomial(pp), 0, shift_cap, name=name,
                                 bound=2.0 ** float(pp), formula="2^p")
    elif name == "mixed":
        pp = _num(p, "p")
        _need(pp >= 0, f"mixed needs p >= 0, got {pp!r}")
        model = ScalarShiftModel(p, weight or WeightLaw.mixed(p["alpha"], pp), 0, shift_cap, name=name,
                                 bound=2.0 ** float(pp), formula="2^p")
    elif name == "mixed_offset":
        pp = _num(p, "p")
        _need(pp >= 0, f"mixed_offset needs p >= 0, got {pp!r}")
        offsets = p["offsets"]
        _need(isinstance(offsets, (list, tuple)) and offsets and all(isinstance(d, int) for d in offsets)
              and len(set(offsets)) == len(offsets), f"offsets must be distinct integers, got {offsets!r}")
        p["offsets"] = list(offsets)
        alpha = float(p["alpha"])
        bound = sum(alpha ** d for d in offsets) * 2.0 ** float(pp)
        model = ScalarShiftModel(p, weight or WeightLaw.mixed(p["alpha"], pp), 0, shift_cap, name=name,
                                 offsets=tuple(offsets), bound=bound, formula="(sum_D alpha^D) 2^p")
    elif name == "tree_branching":
        b = p["b"]
        _need(isinstance(b, int) and b >= 1, f"tree_branching needs integer b >= 1, got {b!r}")
        model = ScalarShiftModel(p, weight or WeightLaw.constant(), 0, shift_cap, name=name,
                                 offsets=tuple(range(b)), bound=b, formula="b")
    elif name == "damped":
        g = _num(p, "gamma")
        _need(0 < g < 1, f"damped needs 0 < gamma < 1, got {g!r}")
        model = ScalarShiftModel(p, weight or WeightLaw.exponential(p["alpha"]), 1, shift_cap, name=name,
                                 damping=g, bound=lambda mdl: float(as_rational(mdl.damping) ** (2 * mdl.min_degree)),
                                 formula="gamma^(2 min_degree)")
    if min_degree is not None:
        _need(isinstance(min_degree, int) and min_degree >= 0, f"min_degree must be >= 0, got {min_degree!r}")
        model = model.with_min_degree(min_degree)
    return model


# ---------------------------------------------------------------------------
# algebraic identities


def jacobiator(model: ModelSpec, x: Element, y: Element, z: Element) -> Element:
    """[[x,y],z] + [[y,z],x] + [[z,x],y]."""
    br = model.bracket
    return linear_combination(
        [(1, br(br(x, y), z)), (1, br(br(y, z), x)), (1, br(br(z, x), y))], x.backend)


def malcev_defect(model: ModelSpec, x: Element, y: Element, z: Element, printed: bool = False) -> Element:
    """[[x,y],[x,z]] - ([[[x,y],z],x] + [[[y,z],x],x] + [[[z,x],x],y]).

    ``printed=True`` evaluates the variant whose last term is [[[z,x],y],x];
    that variant reduces to [[x,y],[x,z]] in every Lie algebra, so it is kept
    only as a diagnostic.
    """
    br = model.bracket
    lhs = br(br(x, y), br(x, z))
    last = br(br(br(z, x), y), x) if printed else br(br(br(z, x), x), y)
    rhs = linear_combination(
        [(1, br(br(br(x, y), z), x)), (1, br(br(br(y, z), x), x)), (1, last)], x.backend)
    return lhs - rhs


def malcev_residual(model: ModelSpec, x: Element, y: Element, z: Element, printed: bool = False):
    return model.norm(malcev_defect(model, x, y, z, printed))


def ambient_associator(model: ModelSpec, x: Element, y: Element, z: Element) -> Element:
    """(xy)z - x(yz) in the ambient product."""
    mul = model.multiply
    return mul(mul(x, y), z) - mul(x, mul(y, z))


# ---------------------------------------------------------------------------
# JSON model config


@dataclass
class ModelConfig:
    """{"model": name, "params": {...}, "weight": {...}, "backend": ..., "shift_cap": N}"""

    model: str
    params: dict = field(default_factory=dict)
    weight: dict | None = None
    backend: str = "exact"
    shift_cap: int | None = None

    def __post_init__(self):
        if self.backend not in BACKENDS:
            raise ConfigurationError(f"backend must be one of {BACKENDS}, got {self.backend!r}")

    def build(self) -> ModelSpec:
        weight = WeightLaw.from_dict(self.weight) if self.weight else None
        return catalog_lookup(self.model, self.params, weight=weight, shift_cap=self.shift_cap)

    def to_dict(self) -> dict:
        return {"model": self.model, "params": _jsonable(self.params), "weight": self.weight,
                "backend": self.backend, "shift_cap": self.shift_cap}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "ModelConfig":
        if not isinstance(data, dict) or "model" not in data:
            raise ConfigurationError("model config must be an object with a 'model' field")
        extra = set(data) - {"model", "params", "weight", "backend", "shift_cap"}
        if extra:
            raise ConfigurationError(f"unknown model config fields {sorted(extra)}")
        return cls(data["model"], dict(data.get("params") or {}), data.get("weight"),
                   data.get("backend", "exact"), data.get("shift_cap"))

    @classmethod
    def from_json(cls, text: str) -> "ModelConfig":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f"model config is not valid JSON: {exc}") from exc
        return cls.from_dict(data)


def _jsonable(params: dict) -> dict:
    return {k: (str(v) if isinstance(v, Fraction) else v) for k, v in params.items()}
