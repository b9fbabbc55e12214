"""Bracket continuity constant B and the Catalan radius rho = 1/(4KB)."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

import numpy as np

from .algebra import Element
from .errors import ConfigurationError
from .models import MalcevLambdaModel, MatrixModel, ModelSpec, ZornShiftModel, catalog_lookup

ATTAINED_RTOL = 1e-9
DEFAULT_SCAN = 50

# rows of the numerical-examples table, in its printed order
TABLE2_ROWS = (
    ("operator_norm", {}),
    ("exponential", {"alpha": 2}),
    ("polynomial", {"p": 1}),
    ("polynomial", {"p": 3}),
    ("tree_branching", {"b": 3}),
    ("tree_branching", {"b": 10}),
    ("mixed", {"alpha": 2, "p": 2}),
    ("mixed_offset", {"alpha": 1.3, "offsets": [-1, 0, 1], "p": 1}),
    ("damped", {"gamma": 0.7}),
    ("zorn", {}),
)
TABLE2_RHO = (0.125, 0.25, 0.125, 0.03125, 0.0833, 0.025, 0.0625, 0.04073, 0.5102, 0.125)

CSV_COLUMNS = ("model", "params", "B_analytic", "B_empirical", "attained", "K", "rho", "witness")


@dataclass(frozen=True)
class ConstantReport:
    model: ModelSpec
    B_empirical: float
    B_analytic: float
    attained: bool
    witness: tuple
    K: float
    rho: float
    scan_range: int

    def row(self) -> dict:
        return {
            "model": self.model.name,
            "params": json.dumps(_plain(self.model.params), sort_keys=True),
            "B_analytic": self.B_analytic,
            "B_empirical": self.B_empirical,
            "attained": self.attained,
            "K": self.K,
            "rho": self.rho,
            "witness": json.dumps(self.witness),
        }


def _plain(params):
    return {k: (str(v) if not isinstance(v, (int, float, list, str)) else v) for k, v in params.items()}


def rho_from(K: float, B: float) -> float:
    if K < 1:
        raise ConfigurationError(f"K bounds |alpha_T| >= 1 coefficients and must be >= 1, got {K}")
    return 1.0 / (4.0 * K * B)


def local_ratio(model: ModelSpec, m: int, n: int, realized: bool = False) -> float:
    """B_{m,n} = sum_k |c^k_{m,n}| w_k / (w_m w_n).

    By default the stencil envelope is used (the largest |c| the model's
    hypotheses admit, e.g. |eps| <= 1); ``realized=True`` uses the concrete
    sign choice instead, which vanishes on the diagonal.  Zorn maximizes over
    unit pairs at fixed (m, n).
    """
    return model.local_ratio(m, n, realized)


def _scan_shift(model: ModelSpec, M: int, realized: bool):
    lo = model.min_degree
    best, witness = -1.0, None
    for m in range(lo, M + 1):
        for n in range(lo, M + 1):
            r = model.local_ratio(m, n, realized)
            if r > best * (1 + 1e-15):
                best, witness = r, (m, n)
    return best, witness


def _scan_matrix(model: MatrixModel, samples: int = 400, seed: int = 0):
    x, y = model.reflection_pair("float")
    best = model.norm(model.bracket(x, y)) / (model.norm(x) * model.norm(y))
    witness = ["reflection_pair", [[1, 0], [0, -1]], [[0, 1], [1, 0]]]
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        a = rng.normal(size=(model.dim, model.dim))
        b = rng.normal(size=(model.dim, model.dim))
        r = np.linalg.norm(a @ b - b @ a, 2) / (np.linalg.norm(a, 2) * np.linalg.norm(b, 2))
        if r > best * (1 + 1e-12):
            best, witness = float(r), ["random", a.tolist(), b.tolist()]
    return best, witness


def bracket_constant(model: ModelSpec, scan_range: int = DEFAULT_SCAN, K: float = 1.0,
                     realized: bool = False) -> ConstantReport:
    """Empirical sup of local ratios over 0 <= m, n <= M next to the closed-form bound.

    rho is computed from the analytic bound (a guaranteed radius).
    """
    if scan_range < 2:
        raise ConfigurationError(f"scan range must be >= 2, got {scan_range}")
    if isinstance(model, MatrixModel):
        b_emp, witness = _scan_matrix(model)
    elif isinstance(model, MalcevLambdaModel):
        b_emp = model.local_ratio()
        pairs = [(i, j) for i in model.units() for j in model.units()]
        i, j = max(pairs, key=lambda ij: model.norm(model.bracket(Element.basis(ij[0]), Element.basis(ij[1]))))
        witness = [[i, 0], [j, 0]]
    else:
        b_emp, witness = _scan_shift(model, scan_range, realized)
        if isinstance(model, ZornShiftModel):
            i, j = model.unit_witness()
            witness = [[i, witness[0]], [j, witness[1]]]
        else:
            witness = list(witness)
    b_an = model.analytic_B
    attained = math.isclose(b_emp, b_an, rel_tol=ATTAINED_RTOL, abs_tol=0.0)
    return ConstantReport(model, float(b_emp), float(b_an), attained, tuple(_tuplify(witness)), float(K),
                          rho_from(K, b_an), scan_range)


def _tuplify(w):
    return [tuple(_tuplify(v)) if isinstance(v, list) else v for v in w]


def table_generator(rows=TABLE2_ROWS, K: float = 1.0, scan_range: int = DEFAULT_SCAN) -> list:
    """One ConstantReport per (name, params) row."""
    return [bracket_constant(catalog_lookup(name, params), scan_range, K) for name, params in rows]


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for r in reports:
        row = r.row()
        row = {k: (repr(v) if isinstance(v, float) else v) for k, v in row.items()}
        writer.writerow(row)
    return buf.getvalue()


def reports_to_json(reports) -> list:
    return [r.row() for r in reports]


def poly_weight_inequality_check(p: float, M: int) -> tuple:
    """max over 0 <= m, n <= M of (1+m+n)^p / ((1+m)^p (1+n)^p), with its first argmax."""
    if p < 0:
        raise ConfigurationError(f"p must be >= 0, got {p}")
    idx = np.arange(M + 1, dtype=float)
    ratio = ((1 + idx[:, None] + idx[None, :]) / ((1 + idx[:, None]) * (1 + idx[None, :]))) ** p
    flat = int(np.argmax(ratio))
    m, n = divmod(flat, M + 1)
    return float(ratio[m, n]), (m, n)


def monotone_scan(model: ModelSpec, ranges=(5, 10, 20, 50)) -> list:
    """B_empirical(M) for increasing M (must be nondecreasing and below the analytic bound)."""
    return [bracket_constant(model, M).B_empirical for M in ranges]
