"""Command-line front end.

    malcev-bch constants --all --K 1
    malcev-bch bch --model zorn --t 0.12 --N 12
    malcev-bch verify --seed 42

Exit codes: 0 success, 1 property failure, 2 configuration error,
3 resource cap exceeded.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import __version__
from .algebra import as_rational
from .bch import (PRINTED_ZORN_NORMS, default_directions, radius_diagnostic, sharpness_harness,
                  truncation_report)
from .constants import TABLE2_ROWS, bracket_constant, reports_to_csv, reports_to_json, table_generator
from .errors import ConfigurationError, DomainError, ResourceError, UnsupportedModelError
from .integrator import SplittingExperiment, default_generators, sweep
from .models import ModelConfig
from .trees import TREE_CAP, MajorantSeries, catalan, good_tree_count
from .verify import run_suite

EXIT_OK, EXIT_PROPERTY, EXIT_CONFIG, EXIT_RESOURCE = 0, 1, 2, 3
COMMANDS = ("constants", "radius", "bch", "majorant", "sweep", "sharpness", "goodtrees", "verify")


def _json_params(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise argparse.ArgumentTypeError(f"--params is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise argparse.ArgumentTypeError("--params must be a JSON object")
    return data


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", default=None, help="catalog model name")
    common.add_argument("--params", type=_json_params, default=None, help="model parameters as JSON")
    common.add_argument("--config", default=None, help="JSON model-config file")
    common.add_argument("--K", type=float, default=1.0, help="BCH coefficient bound (default 1)")
    common.add_argument("--N", type=int, default=None, help="truncation order / tree size")
    common.add_argument("--t", type=float, nargs="+", default=None, help="scale(s) t")
    common.add_argument("--backend", choices=("exact", "float"), default="exact")
    common.add_argument("--shift-cap", type=int, default=None)
    common.add_argument("--tree-cap", type=int, default=TREE_CAP)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", default=None, help="output file (default stdout)")

    parser = argparse.ArgumentParser(prog="malcev-bch", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constants", parents=[common], help="bracket constants and Catalan radii")
    p.add_argument("--all", action="store_true", help="every row of the numerical-examples table")
    p.add_argument("--scan-range", type=int, default=50)

    sub.add_parser("radius", parents=[common], help="level-ratio divergence profile over t")
    sub.add_parser("bch", parents=[common], help="per-level norms of the truncated BCH series")

    p = sub.add_parser("majorant", parents=[common], help="Catalan majorant levels and convergence")
    p.add_argument("--s", type=float, default=None, help="||x|| + ||y|| (default 2t)")
    p.add_argument("--B", type=float, default=None, help="bracket constant (default: the model's)")

    p = sub.add_parser("sweep", parents=[common], help="splitting-error sweep over step sizes")
    p.add_argument("--dt-min", type=float, default=None)
    p.add_argument("--dt-max", type=float, default=None)
    p.add_argument("--dt-steps", type=int, default=20)

    p = sub.add_parser("sharpness", parents=[common], help="saturating-pair tree norms")
    p.add_argument("--M", type=int, default=3)

    sub.add_parser("goodtrees", parents=[common], help="good-tree counts")
    sub.add_parser("verify", parents=[common], help="randomized property suite")
    return parser


def _model_config(args, default="zorn") -> ModelConfig:
    if args.config:
        try:
            with open(args.config) as fh:
                cfg = ModelConfig.from_json(fh.read())
        except OSError as exc:
            raise ConfigurationError(f"cannot read config {args.config!r}: {exc}") from exc
        return cfg
    return ModelConfig(args.model or default, args.params or {}, None, args.backend, args.shift_cap)


def _metadata(args, cfg: ModelConfig | None, **extra) -> dict:
    meta = {"tool": "malcev-bch", "version": __version__, "command": args.command, "K": args.K,
            "N": args.N, "backend": args.backend, "shift_cap": args.shift_cap, "tree_cap": args.tree_cap,
            "seed": args.seed, "t": args.t}
    if cfg is not None:
        meta["model_config"] = cfg.to_dict()
    meta.update(extra)
    return meta


def _fmt(v):
    if isinstance(v, float):
        return repr(v)
    if v is None:
        return ""
    return v


def _rows_csv(rows: list) -> str:
    buf = io.StringIO()
    if rows:
        fields = list(dict.fromkeys(k for row in rows for k in row))  # rows may differ in optional columns
        writer = csv.DictWriter(buf, fieldnames=fields, restval="", lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _fmt(v) for k, v in row.items()})
    return buf.getvalue()


def _strict(v):
    """Non-finite floats as strings, so every output parses as strict JSON."""
    if isinstance(v, float) and not math.isfinite(v):
        return repr(v)
    if isinstance(v, dict):
        return {k: _strict(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_strict(x) for x in v]
    return v


def _emit(args, meta: dict, rows: list, csv_text: str | None = None, extra: dict | None = None) -> None:
    meta, rows = _strict(meta), _strict(rows)
    if args.format == "json":
        payload = {"metadata": meta, "rows": rows}
        if extra:
            payload.update(extra)
        text = json.dumps(payload, sort_keys=True, default=_json_default, allow_nan=False) + "\n"
    else:
        text = "# " + json.dumps(meta, sort_keys=True, default=_json_default, allow_nan=False) + "\n"
        text += csv_text if csv_text is not None else _rows_csv(rows)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_default(v):
    if hasattr(v, "numerator"):
        return str(v)
    if isinstance(v, np.generic):
        return v.item()
    raise TypeError(f"not JSON serializable: {v!r}")


def _scales(args, default):
    return args.t if args.t else default


# -- subcommands -------------------------------------------------------------


def cmd_constants(args) -> int:
    if args.all:
        reports = table_generator(TABLE2_ROWS, args.K, args.scan_range)
        cfg = None
    else:
        cfg = _model_config(args, default="exponential")
        reports = [bracket_constant(cfg.build(), args.scan_range, args.K)]
    meta = _metadata(args, cfg, rows="table" if args.all else "single", scan_range=args.scan_range)
    _emit(args, meta, reports_to_json(reports), reports_to_csv(reports))
    return EXIT_OK


def cmd_bch(args) -> int:
    cfg = _model_config(args)
    model = cfg.build()
    N = args.N or 12
    rows, reports = [], []
    for t in _scales(args, [0.12]):
        x, y = default_directions(model, cfg.backend)
        tq = as_rational(t) if cfg.backend == "exact" else t
        printed = PRINTED_ZORN_NORMS.get(t) if model.name == "zorn" else None
        rep = truncation_report(x * tq, y * tq, model, N, args.K, printed)
        reports.append(rep)
        rows.extend({"t": t, **row} for row in rep.rows())
    meta = _metadata(args, cfg, N=N, tail=[{"t": t, "tail_bound": r.tail_bound, "tail_sum": r.tail_sum}
                                           for t, r in zip(_scales(args, [0.12]), reports)])
    _emit(args, meta, rows)
    return EXIT_OK


def cmd_radius(args) -> int:
    cfg = _model_config(args)
    model = cfg.build()
    N = args.N or 12
    x, y = default_directions(model, cfg.backend)
    grid = _scales(args, [round(float(t), 6) for t in np.linspace(0.0, 0.2, 21)])
    prof = radius_diagnostic(model, x, y, grid, N)
    _emit(args, _metadata(args, cfg, N=N, radius_estimate=prof.radius_estimate), prof.rows())
    return EXIT_OK


def cmd_majorant(args) -> int:
    cfg = _model_config(args)
    B = args.B if args.B is not None else cfg.build().analytic_B
    N = args.N or 12
    rows = []
    for t in _scales(args, [0.12]):
        s = args.s if args.s is not None else 2 * t
        ser = MajorantSeries(args.K, B, s)
        sums = ser.partial_sums(N)
        for n, (lv, ps) in enumerate(zip(ser.levels(N), sums), start=1):
            rows.append({"t": t, "s": s, "n": n, "catalan": catalan(n - 1), "majorant": lv,
                         "partial_sum": float(ps), "converges": ser.converges})
    _emit(args, _metadata(args, cfg, B=B, N=N), rows)
    return EXIT_OK


def cmd_sweep(args) -> int:
    cfg = _model_config(args)
    model = cfg.build()
    A, B = default_generators(model, cfg.backend)
    N = args.N or 3
    probe = SplittingExperiment(model, A, B, None, N, K=args.K)
    grid = None
    if args.dt_min is not None or args.dt_max is not None:
        lo = args.dt_min if args.dt_min is not None else probe.threshold / 10
        hi = args.dt_max if args.dt_max is not None else 1.6 * probe.threshold
        if not 0 < lo < hi:
            raise ConfigurationError(f"need 0 < dt-min < dt-max, got {lo}, {hi}")
        grid = [float(d) for d in np.geomspace(lo, hi, args.dt_steps)]
    elif args.dt_steps != 20:
        grid = [float(d) for d in np.geomspace(probe.threshold / 10, 1.6 * probe.threshold, args.dt_steps)]
    result = sweep(SplittingExperiment(model, A, B, grid, N, K=args.K))
    _emit(args, _metadata(args, cfg, N=N, threshold=result.threshold), result.rows(), result.to_csv())
    return EXIT_OK


def cmd_sharpness(args) -> int:
    params = args.params or {}
    alpha = params.get("alpha", 2)
    t = args.t[0] if args.t else 0.2
    n_max = args.N or 8
    rep = sharpness_harness(alpha, args.M, as_rational(t), n_max, args.tree_cap)
    meta = _metadata(args, None, alpha=str(rep.alpha), M=args.M, all_saturated=rep.all_saturated,
                     sums_match=rep.sums_match, all_signs_positive=rep.all_signs_positive)
    _emit(args, meta, rep.rows())
    return EXIT_OK


def cmd_goodtrees(args) -> int:
    n_max = args.N or 12
    if n_max > args.tree_cap:
        raise ResourceError(f"{n_max} leaves exceeds the tree cap {args.tree_cap}")
    rows = []
    for n in range(1, n_max + 1):
        g, ratio = good_tree_count(n, args.tree_cap)
        rows.append({"n": n, "good": g, "catalan": catalan(n - 1), "ratio": ratio})
    _emit(args, _metadata(args, None, N=n_max), rows)
    return EXIT_OK


def cmd_verify(args) -> int:
    results = run_suite(args.seed)
    # timings stay out of the output so that fixed seeds give byte-identical files
    rows = [{"check": r.name, "passed": r.passed, "detail": r.detail}
            for r in results]
    passed = sum(r.passed for r in results)
    _emit(args, _metadata(args, None, passed=passed, failed=len(results) - passed), rows)
    return EXIT_OK if passed == len(results) else EXIT_PROPERTY


HANDLERS = {"constants": cmd_constants, "radius": cmd_radius, "bch": cmd_bch, "majorant": cmd_majorant,
            "sweep": cmd_sweep, "sharpness": cmd_sharpness, "goodtrees": cmd_goodtrees, "verify": cmd_verify}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors, 0 for --help
        return int(exc.code or 0)
    try:
        return HANDLERS[args.command](args)
    except ResourceError as exc:
        print(f"malcev-bch: resource cap: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ConfigurationError, DomainError, UnsupportedModelError) as exc:
        print(f"malcev-bch: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
