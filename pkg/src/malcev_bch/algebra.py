"""Sparse elements of weighted shift algebras.

An element is a finite map from basis indices ``(unit, degree)`` to
coefficients.  ``unit`` is the imaginary-unit index (1 for scalar shift
models, 1..3 for m_lambda, 1..7 for Zorn, the flattened entry index for
matrix models); ``unit == 0`` is the ambient scalar unit and only shows up
in ambient (exp/log) computations.  ``degree`` is the exponent of the
shift ``S``.

Two coefficient backends exist: ``"exact"`` (``fractions.Fraction``) and
``"float"`` (binary64).  They never mix silently.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping, NamedTuple

from .errors import ConfigurationError, DomainError

BACKENDS = ("exact", "float")

# float backend: coefficients below this fraction of the largest one are dropped
FLOAT_DROP_RATIO = 1e-14


class BasisIndex(NamedTuple):
    unit: int
    degree: int

    @property
    def is_unit_part(self) -> bool:
        return self.unit == 0


def as_rational(value) -> Fraction:
    """Convert a parameter to a Fraction, reading floats by their decimal repr (0.7 -> 7/10)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ConfigurationError(f"non-finite parameter {value!r}")
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value)
    raise ConfigurationError(f"cannot read {value!r} as a rational number")


def coerce(value, backend: str):
    if backend == "exact":
        return as_rational(value)
    return float(value)


def _check_backend(backend: str) -> str:
    if backend not in BACKENDS:
        raise ConfigurationError(f"unknown backend {backend!r}; expected one of {BACKENDS}")
    return backend


# ---------------------------------------------------------------------------
# weights


@dataclass(frozen=True)
class WeightLaw:
    """Positive weight sequence ``w_n`` for the weighted l1 norm.

    kinds: ``exponential`` (alpha^n), ``polynomial`` ((1+n)^p),
    ``mixed`` (alpha^n (1+n)^p), ``damped`` (gamma^n), ``constant`` (1)
    and ``custom`` (explicit finite table).
    """

    kind: str
    alpha: float | Fraction | None = None
    p: float | int | None = None
    gamma: float | Fraction | None = None
    table: tuple = field(default=())

    def __post_init__(self):
        kinds = ("exponential", "polynomial", "mixed", "damped", "constant", "custom")
        if self.kind not in kinds:
            raise ConfigurationError(f"unknown weight kind {self.kind!r}")
        if self.kind in ("exponential", "mixed"):
            if self.alpha is None or not self.alpha > 0:
                raise ConfigurationError(f"{self.kind} weights need alpha > 0, got {self.alpha!r}")
        if self.kind in ("polynomial", "mixed"):
            if self.p is None or self.p < 0:
                raise ConfigurationError(f"{self.kind} weights need p >= 0, got {self.p!r}")
        if self.kind == "damped":
            if self.gamma is None or not 0 < self.gamma:
                raise ConfigurationError(f"damped weights need gamma > 0, got {self.gamma!r}")
        if self.kind == "custom":
            if not self.table or any(not w > 0 for w in self.table):
                raise ConfigurationError("custom weight table must be non-empty and positive")

    @classmethod
    def exponential(cls, alpha=2) -> "WeightLaw":
        return cls("exponential", alpha=alpha)

    @classmethod
    def polynomial(cls, p) -> "WeightLaw":
        return cls("polynomial", p=p)

    @classmethod
    def mixed(cls, alpha, p) -> "WeightLaw":
        return cls("mixed", alpha=alpha, p=p)

    @classmethod
    def damped(cls, gamma) -> "WeightLaw":
        return cls("damped", gamma=gamma)

    @classmethod
    def constant(cls) -> "WeightLaw":
        return cls("constant")

    @property
    def exact_capable(self) -> bool:
        """True when every weight is a rational number."""
        if self.kind == "custom":
            return all(isinstance(w, (int, Fraction)) for w in self.table)
        if self.kind in ("polynomial", "mixed"):
            return float(self.p).is_integer()
        return True

    def __call__(self, n: int, exact: bool = False):
        return self.weight(n, exact)

    def weight(self, n: int, exact: bool = False):
        if n < 0:
            raise DomainError(f"weights are indexed by n >= 0, got {n}")
        exact = exact and self.exact_capable
        k = self.kind
        if k == "constant":
            return Fraction(1) if exact else 1.0
        if k == "custom":
            if n >= len(self.table):
                raise DomainError(f"custom weight table has no entry for n={n}")
            w = self.table[n]
            return as_rational(w) if exact else float(w)
        if exact:
            if k == "exponential":
                return as_rational(self.alpha) ** n
            if k == "damped":
                return as_rational(self.gamma) ** n
            poly = Fraction(1 + n) ** int(self.p)
            if k == "polynomial":
                return poly
            return as_rational(self.alpha) ** n * poly
        if k == "exponential":
            return float(self.alpha) ** n
        if k == "damped":
            return float(self.gamma) ** n
        poly = float(1 + n) ** float(self.p)
        if k == "polynomial":
            return poly
        return float(self.alpha) ** n * poly

    def growth_rate(self, n_max: int = 200) -> float:
        """sup of w_{n+1}/w_n over the scanned range (finite => at most exponential growth)."""
        top = n_max if self.kind != "custom" else len(self.table) - 1
        return max((self.weight(n + 1) / self.weight(n) for n in range(top)), default=1.0)

    def to_dict(self) -> dict:
        out = {"kind": self.kind}
        for name in ("alpha", "p", "gamma"):
            v = getattr(self, name)
            if v is not None:
                out[name] = str(v) if isinstance(v, Fraction) else v
        if self.table:
            out["table"] = [str(w) if isinstance(w, Fraction) else w for w in self.table]
        return out

    @classmethod
    def from_dict(cls, data: Mapping) -> "WeightLaw":
        data = dict(data)
        kind = data.pop("kind", None)
        if kind is None:
            raise ConfigurationError("weight config needs a 'kind'")
        allowed = {"alpha", "p", "gamma", "table"}
        extra = set(data) - allowed
        if extra:
            raise ConfigurationError(f"unknown weight fields {sorted(extra)}")

        def num(v):
            return as_rational(v) if isinstance(v, str) else v

        kwargs = {k: num(v) for k, v in data.items() if k != "table"}
        if "table" in data:
            kwargs["table"] = tuple(num(w) for w in data["table"])
        return cls(kind, **kwargs)


# ---------------------------------------------------------------------------
# elements


class Element:
    """Immutable finitely supported element in canonical sparse form."""

    __slots__ = ("_terms", "_backend", "_discarded")

    def __init__(self, terms: Mapping | Iterable = (), backend: str = "exact", discarded: float = 0.0):
        _check_backend(backend)
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean = {}
        for key, c in items:
            key = BasisIndex(*key)
            if key.unit < 0 or key.degree < 0:
                raise DomainError(f"invalid basis index {tuple(key)}")
            c = coerce(c, backend)
            if c != 0:
                clean[key] = clean.get(key, 0) + c
        self._backend = backend
        self._terms = _canonical(clean, backend)
        self._discarded = float(discarded)

    @classmethod
    def _raw(cls, terms: dict, backend: str, discarded: float = 0.0) -> "Element":
        obj = cls.__new__(cls)
        obj._terms = _canonical(terms, backend)
        obj._backend = backend
        obj._discarded = discarded
        return obj

    @classmethod
    def zero(cls, backend: str = "exact") -> "Element":
        return cls((), backend)

    @classmethod
    def basis(cls, unit: int, degree: int = 0, coeff=1, backend: str = "exact") -> "Element":
        return cls({(unit, degree): coeff}, backend)

    @property
    def backend(self) -> str:
        return self._backend

    @property
    def discarded(self) -> float:
        """Weighted mass of terms dropped above a shift cap while producing this element."""
        return self._discarded

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def keys(self):
        return self._terms.keys()

    def coeff(self, unit: int, degree: int = 0):
        zero = Fraction(0) if self._backend == "exact" else 0.0
        return self._terms.get(BasisIndex(unit, degree), zero)

    def __getitem__(self, key):
        return self.coeff(*key)

    def __iter__(self) -> Iterator[BasisIndex]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def degrees(self) -> set:
        return {k.degree for k in self._terms}

    def has_unit_part(self) -> bool:
        return any(k.unit == 0 for k in self._terms)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self._backend == other._backend and self._terms == other._terms

    __hash__ = None

    def __repr__(self):
        if not self._terms:
            return f"Element(0, {self._backend})"
        parts = [f"{c}*e{k.unit}S^{k.degree}" for k, c in sorted(self._terms.items())]
        return f"Element({' + '.join(parts)}, {self._backend})"

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return add(self, other)

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return add(self, scale(other, -1))

    def __neg__(self):
        return scale(self, -1)

    def __mul__(self, scalar):
        if isinstance(scalar, Element):
            return NotImplemented
        return scale(self, scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if self._backend == "exact":
            return scale(self, 1 / as_rational(scalar))
        return scale(self, 1.0 / float(scalar))

    def to_backend(self, backend: str) -> "Element":
        """Convert coefficients; float -> exact uses the exact binary value."""
        _check_backend(backend)
        if backend == self._backend:
            return self
        if backend == "float":
            return Element._raw({k: float(c) for k, c in self._terms.items()}, "float", self._discarded)
        return Element._raw({k: Fraction(c) for k, c in self._terms.items()}, "exact", self._discarded)


def _canonical(terms: dict, backend: str) -> dict:
    if backend == "exact":
        return {k: c for k, c in terms.items() if c != 0}
    if not terms:
        return {}
    top = max(abs(c) for c in terms.values())
    cut = FLOAT_DROP_RATIO * top
    return {k: c for k, c in terms.items() if abs(c) >= cut and c != 0}


def same_backend(*elems: Element) -> str:
    backends = {e.backend for e in elems}
    if len(backends) != 1:
        raise ConfigurationError(f"backend mismatch: {sorted(backends)}")
    return backends.pop()


def add(a: Element, b: Element) -> Element:
    backend = same_backend(a, b)
    out = dict(a._terms)
    for k, c in b._terms.items():
        out[k] = out.get(k, 0) + c
    return Element._raw(out, backend, a._discarded + b._discarded)


def linear_combination(pairs: Iterable[tuple], backend: str) -> Element:
    """sum(c_i * x_i) for (c_i, x_i) pairs, built in one pass."""
    out = {}
    disc = 0.0
    for c, x in pairs:
        if x.backend != backend:
            raise ConfigurationError(f"backend mismatch: {x.backend} vs {backend}")
        c = coerce(c, backend)
        disc += abs(float(c)) * x._discarded
        for k, v in x._terms.items():
            out[k] = out.get(k, 0) + c * v
    return Element._raw(out, backend, disc)


def scale(x: Element, scalar) -> Element:
    c = coerce(scalar, x.backend)
    if c == 0:
        return Element.zero(x.backend)
    return Element._raw({k: c * v for k, v in x._terms.items()}, x.backend, abs(float(c)) * x._discarded)


def norm(x: Element, w: WeightLaw):
    """Weighted l1 norm  sum |c| w_degree  over every (unit, degree) term.

    Exact backend with rational weights returns a Fraction, otherwise a float.
    """
    if x.backend == "exact" and w.exact_capable:
        return sum((abs(c) * w.weight(k.degree, True) for k, c in x._terms.items()), Fraction(0))
    return math.fsum(abs(float(c)) * w.weight(k.degree) for k, c in x._terms.items())


def bilinear(x: Element, y: Element, rule, cap: int | None = None, weight: WeightLaw | None = None) -> Element:
    """Extend a basis-level rule ``rule(kx, ky) -> ((k, c), ...)`` bilinearly.

    Terms landing above ``cap`` are dropped and their weighted mass recorded.
    """
    backend = same_backend(x, y)
    out = {}
    dropped = 0.0
    for kx, cx in x._terms.items():
        for ky, cy in y._terms.items():
            for k, c in rule(kx, ky):
                v = cx * cy * c
                if cap is not None and k.degree > cap:
                    dropped += abs(float(v)) * (weight.weight(k.degree) if weight else 1.0)
                    continue
                out[k] = out.get(k, 0) + v
    return Element._raw(out, backend, dropped + x._discarded + y._discarded)


def bracket(x: Element, y: Element, model) -> Element:
    """[x, y] in ``model`` (bilinear extension of the generator brackets)."""
    return model.bracket(x, y)


def product(x: Element, y: Element, model) -> Element:
    """Ambient (alternative or associative) product xy in ``model``."""
    return model.multiply(x, y)
