"""Randomized property suite behind ``malcev-bch verify``."""
from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import zorn
from .algebra import Element
from .bch import bch_truncated, truncation_bound
from .constants import bracket_constant, monotone_scan, poly_weight_inequality_check
from .models import CLASSIFIED_MODELS, ambient_associator, catalog_lookup, malcev_residual
from .trees import (MajorantSeries, catalan, count_trees, enumerate_trees, good_tree_count,
                    tree_commutator_norms)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float


def _random_pair(model, rng, backend="float"):
    if model.name == "operator_norm":
        a, b = rng.normal(size=(2, model.dim, model.dim))
        return model.from_matrix(a), model.from_matrix(b)
    return (model.random_element(rng, terms=3, max_degree=3, backend=backend),
            model.random_element(rng, terms=3, max_degree=3, backend=backend))


def _random_zorn(rng, terms=4, degree=2, ambient=False):
    lo = 0 if ambient else 1
    out = {}
    for _ in range(terms):
        key = (int(rng.integers(lo, 8)), int(rng.integers(0, degree + 1)))
        out[key] = out.get(key, 0) + Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 5)))
    return Element(out, "exact")


def check_bilinear_antisymmetric(rng):
    for name in ("exponential", "polynomial", "tree_branching", "damped", "zorn"):
        m = catalog_lookup(name)
        for _ in range(20):
            x = m.random_element(rng, backend="exact")
            y = m.random_element(rng, backend="exact")
            z = m.random_element(rng, backend="exact")
            a, b = Fraction(int(rng.integers(-4, 5)), 3), Fraction(int(rng.integers(-4, 5)), 7)
            if m.bracket(a * x + b * z, y) != a * m.bracket(x, y) + b * m.bracket(z, y):
                return False, f"bilinearity fails in {name}"
            if not (m.bracket(x, y) + m.bracket(y, x)).is_zero:
                return False, f"antisymmetry fails in {name}"
    return True, "5 models x 20 exact triples"


def check_norm_continuity(rng):
    worst = 0.0
    for name, params in CLASSIFIED_MODELS:
        m = catalog_lookup(name, params)
        B = m.analytic_B
        for _ in range(1000):
            x, y = _random_pair(m, rng)
            lhs, rhs = m.norm(m.bracket(x, y)), B * m.norm(x) * m.norm(y)
            worst = max(worst, lhs - rhs)
            if lhs > rhs * (1 + 1e-12) + 1e-12:
                return False, f"{name}: {lhs} > {rhs}"
    return True, f"7 models x 1000 pairs, max excess {worst:.3g}"


def check_zorn_structure(rng):
    consts = {c for (i, j), (k, c) in zorn.commutator_table().items()}
    if not consts <= {2, -2}:
        return False, f"commutator constants {consts}"
    m = catalog_lookup("zorn")
    for _ in range(30):
        x, y = _random_zorn(rng, ambient=True), _random_zorn(rng, ambient=True)
        if not ambient_associator(m, x, x, y).is_zero or not ambient_associator(m, y, x, x).is_zero:
            return False, "alternative law fails"
        xi, yi = _random_zorn(rng), _random_zorn(rng)
        if m.bracket(xi, yi) != m.multiply(xi, yi) - m.multiply(yi, xi):
            return False, "bracket differs from the ambient commutator"
    return True, "structure constants in {+-2}; alternativity and commutator realization on 30 samples"


def check_malcev(rng):
    for lam in (-2, -1, Fraction(-9, 10), 0, 1, 3):
        m = catalog_lookup("m_lambda", {"lambda": lam})
        for i, j, k in itertools.product(m.units(), repeat=3):
            if malcev_residual(m, Element.basis(i), Element.basis(j), Element.basis(k)) != 0:
                return False, f"m_lambda lambda={lam} basis triple {(i, j, k)}"
    m = catalog_lookup("zorn")
    for _ in range(5):
        x, y, z = (_random_zorn(rng, terms=3, degree=1) for _ in range(3))
        if malcev_residual(m, x, y, z) != 0:
            return False, "Zorn Malcev identity fails"
    return True, "m_lambda basis triples for 6 lambdas; 5 random Zorn triples"


def check_constants(rng):
    for name, params in CLASSIFIED_MODELS:
        m = catalog_lookup(name, params)
        if name == "operator_norm":
            continue
        scan = monotone_scan(m)
        if any(b > a + 0 for a, b in zip(scan[1:], scan)) or scan[-1] > m.analytic_B + 1e-12:
            return False, f"{name}: scan {scan} vs {m.analytic_B}"
    damped = catalog_lookup("damped", {"gamma": 0.7})
    if bracket_constant(damped).B_empirical != 0.49 or bracket_constant(damped.with_min_degree(0)).B_empirical != 1.0:
        return False, "damped zero-mode sensitivity"
    for p in (0, 1, 2, 3):
        if poly_weight_inequality_check(p, 200)[0] > 2 ** p:
            return False, f"polynomial weight inequality p={p}"
    return True, "monotone scans, damped zero mode, polynomial weight inequality"


def check_tree_bound(rng):
    for name, params in CLASSIFIED_MODELS:
        m = catalog_lookup(name, params)
        B = m.analytic_B
        for _ in range(5):
            x, y = _random_pair(m, rng)
            s = m.norm(x) + m.norm(y)
            for n, v in tree_commutator_norms(x, y, m, 5).items():
                if v.max() > B ** (n - 1) * s ** n * (1 + 1e-12) + 1e-12:
                    return False, f"{name}: level {n}"
    return True, "7 models x 5 pairs, n <= 5"


def check_saturation(rng):
    from .bch import sharpness_harness

    rep = sharpness_harness(2, 3, Fraction(1, 5), 6)
    for lv in rep.levels:
        if lv.saturated + lv.vanishing != lv.trees:
            return False, f"level {lv.n}: a norm outside {{0, t^n}}"
    return True, "saturating pair: every nested commutator has norm 0 or t^n (n <= 6)"


def check_trees(rng):
    for n in range(1, 11):
        if sum(1 for _ in enumerate_trees(n)) != catalan(n - 1):
            return False, f"shape count at n={n}"
    if sum(1 for _ in enumerate_trees(4, labeled=True)) != count_trees(4, labeled=True):
        return False, "labeled count at n=4"
    if any(good_tree_count(n)[0] <= 0 for n in range(1, 13)):
        return False, "good-tree positivity"
    return True, "enumeration counts n <= 10, good trees positive n <= 12"


def check_majorant(rng):
    for r in (0.1, 0.2):
        c = MajorantSeries(1.0, 1.0, r).cauchy_check(200)
        if not (c["cauchy"] and c["remainder_bound"] < 1e-10):
            return False, f"r={r}: {c}"
    if MajorantSeries(1.0, 1.0, 0.26).converges or not MajorantSeries(1.0, 1.0, 0.24).converges:
        return False, "convergence flag"
    if not MajorantSeries(1.0, 1.0, 0.26).cauchy_check(200)["increasing_terms"]:
        return False, "divergent side does not grow"
    return True, "Cauchy remainder < 1e-10 at r in {0.1, 0.2}; flags at 0.24 / 0.26"


def check_bch(rng):
    m = catalog_lookup("zorn")
    for _ in range(3):
        x, y = _random_zorn(rng, terms=2, degree=1), _random_zorn(rng, terms=2, degree=1)
        N = 5
        lhs = bch_truncated(y, x, m, N)
        rhs = bch_truncated(-x, -y, m, N).scale(-1)
        # slot (j, k) of BCH(y, x) has degree j in y: compare against the transposed slot
        if any(lhs.slot(j, k) != rhs.slot(k, j) for j in range(N + 1) for k in range(N + 1 - j)):
            return False, "BCH(y,x) != -BCH(-x,-y)"
        s = bch_truncated(x, y, m, N)
        if s.slot(1, 0) != x or s.slot(0, 1) != y:
            return False, "degree-one slots"
    h = catalog_lookup("operator_norm", {"dim": 3})
    x = Element.basis(h.entry(0, 1))
    y = Element.basis(h.entry(1, 2))
    levels = bch_truncated(x, y, h, 6).levels()
    if levels[1] != Element.basis(h.entry(0, 2), 0, Fraction(1, 2)) or any(z for z in levels[2:]):
        return False, "Heisenberg BCH"
    # tail honesty inside the radius: ||BCH_{N+5} - BCH_N|| <= truncation_bound(N)
    x, y = Element.basis(1, 0, 0.05, "float"), Element.basis(2, 0, 0.05, "float")
    N = 4
    deep, shallow = bch_truncated(x, y, m, N + 5), bch_truncated(x, y, m, N)
    diff = m.norm(sum((deep.level(n) for n in range(1, N + 6)), Element.zero("float"))
                  - sum((shallow.level(n) for n in range(1, N + 1)), Element.zero("float")))
    if diff > truncation_bound(N, 1.0, m.analytic_B, 0.1):
        return False, "truncation bound undershoots"
    return True, "involution identity, degree-one slots, Heisenberg, truncation bound"


CHECKS: tuple[tuple[str, Callable], ...] = (
    ("bilinearity_antisymmetry", check_bilinear_antisymmetric),
    ("norm_continuity", check_norm_continuity),
    ("zorn_structure", check_zorn_structure),
    ("malcev_identity", check_malcev),
    ("bracket_constants", check_constants),
    ("tree_bound", check_tree_bound),
    ("saturation_dichotomy", check_saturation),
    ("tree_counts", check_trees),
    ("majorant_criterion", check_majorant),
    ("bch_identities", check_bch),
)


def run_suite(seed: int = 0) -> list:
    out = []
    for i, (name, fn) in enumerate(CHECKS):
        rng = np.random.default_rng([seed, i])
        t0 = time.perf_counter()
        try:
            ok, detail = fn(rng)
        except Exception as exc:  # a crash is a failed property, reported with its cause
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(CheckResult(name, bool(ok), detail, time.perf_counter() - t0))
    return out
