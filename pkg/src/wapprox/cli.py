"""Command line front end: ``wapprox {check-weight,approx,modulus,verify} CONFIG``.

Exit codes: 0 when everything requested passes, 1 on a suite failure, 2 on a
configuration error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import best_approx, moduli
from . import functions as F
from . import verify as V
from . import weights as W
from .config import ConfigError, ExperimentConfig, load_config
from .report import VerdictReport

log = logging.getLogger("wapprox")

EXIT_PASS, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


def _merge(theorem: str, parts, inputs: dict) -> VerdictReport:
    """One report per suite; rows of sub-reports get a ``[label]`` suffix."""
    out = VerdictReport(theorem, inputs)
    for label, rep in parts:
        for row in rep.rows:
            row.check = f"{row.check}[{label}]" if label else row.check
            out.rows.append(row)
        out.runtime += rep.runtime
    return out


def run_suite(cfg: ExperimentConfig, suite: str, scale: float = 1.0) -> VerdictReport:
    grids = cfg.make_grids(scale)
    if grids.approx_grid < 8 * max(cfg.n_ladder):
        raise ConfigError(f"scaled approx_grid {grids.approx_grid} is below 8 * max(n_ladder)")
    f, w, Z = cfg.make_function(), cfg.make_weight(), cfg.make_zset()
    inputs = {"config": cfg.to_dict(), "grid_scale": scale}
    if suite in ("jackson", "inverse", "realization"):
        ctx = V.Context(f, w, Z, grids, best_approx.ApproximationCache())
        parts = []
        for r in cfg.r:
            if suite == "jackson":
                rep = V.verify_jackson(f, w, Z, r, cfg.B, cfg.n_ladder, grids, ctx)
            elif suite == "inverse":
                rep = V.verify_inverse(f, w, Z, r, cfg.A, cfg.B, cfg.n_ladder, grids, ctx)
            else:
                rep = V.verify_realization(f, w, Z, r, cfg.A, cfg.B, cfg.c1, cfg.c2, cfg.n_ladder, grids, ctx)
            parts.append((f"r={r}", rep))
        return _merge(suite, parts, inputs)
    if suite == "polynomial_inequalities":
        parts = []
        for name in cfg.poly_weights:
            rep = V.verify_polynomial_inequalities(V.POLY_WEIGHTS[name](), cfg.poly_ladder, cfg.trials, cfg.seed,
                                                   Z=Z, label=name, grids=grids)
            # the extremal rows do not depend on the weight; keep one copy
            if parts:
                rep.rows = [row for row in rep.rows if row.check != "bernstein_extremal"]
            parts.append(("", rep))
        return _merge(suite, parts, inputs)
    if suite == "modulus_properties":
        cache = best_approx.ApproximationCache()
        parts = [(f"r={r}", V.verify_modulus_properties(f, w, Z, r, V.PropertyParams(A=cfg.A, B=cfg.B), grids, cache))
                 for r in cfg.r]
        return _merge(suite, parts, inputs)
    if suite == "near_best_extension":
        nb = dict(cfg.near_best)
        fn = cfg.make_function() if not nb.get("function") else _function(nb["function"])
        wn = w if not nb.get("weight") else W.from_dict(nb["weight"])
        z = float(nb.get("z", 0.0))
        pairs = V.nested_pairs(z, int(nb.get("count", 10)))
        parts = [(f"r={r}", V.verify_near_best_extension(fn, wn, (z,), r, pairs)) for r in nb.get("r") or cfg.r]
        return _merge(suite, parts, inputs)
    raise ConfigError(f"unknown suite {suite!r}")


def _function(spec: dict):
    spec = dict(spec)
    name = spec.pop("name")
    return F.function_registry(name, **spec.get("params", spec))


def _run_suite_job(args):
    cfg_dict, suite, scale = args
    return suite, run_suite(ExperimentConfig.from_dict(cfg_dict), suite, scale)


def _write(out: Path, name: str, text: str):
    out.mkdir(parents=True, exist_ok=True)
    (out / name).write_text(text)


def cmd_verify(cfg: ExperimentConfig, args) -> int:
    suites = args.suite or cfg.suites
    unknown = [s for s in suites if s not in V.SUITES]
    if unknown:
        raise ConfigError(f"unknown suites {unknown}; known: {list(V.SUITES)}")
    jobs = [(cfg.to_dict(), s, args.grid_scale) for s in suites]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = dict(pool.map(_run_suite_job, jobs))
    else:
        results = dict(map(_run_suite_job, jobs))
    out = Path(cfg.output_dir)
    ok = True
    print(f"{'suite':<28} verdict")
    for s in suites:
        rep = results[s]
        _write(out, f"{s}.csv", rep.to_csv())
        _write(out, f"{s}.json", rep.to_json())
        print(rep.summary())
        ok &= rep.passed
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_check_weight(cfg: ExperimentConfig, args) -> int:
    w, Z = cfg.make_weight(), cfg.make_zset()
    res = W.classify_weight(w, Z)
    d = {"weight": w.to_dict(), "Z": list(Z.points), **res.to_dict()}
    _write(Path(cfg.output_dir), "weight_class.json", json.dumps(d, indent=2, sort_keys=True))
    print(f"doubling ladder  {res.doubling_ladder}")
    print(f"A* ladder        {res.astar_ladder}")
    print(f"c_* estimate     {res.wstar_constant_estimate}")
    print(f"diverging        {res.diverging}")
    return EXIT_FAIL if res.diverging else EXIT_PASS


def cmd_approx(cfg: ExperimentConfig, args) -> int:
    f, w = cfg.make_function(), cfg.make_weight()
    base = cfg.make_grids(args.grid_scale).approx_grid
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["n", "grid", "error", "alternations", "method"])
    results = {}
    for n in cfg.n_ladder:
        grid = max(8 * n, base // 4)
        res = best_approx.approximation_ladder(f, w, (-1.0, 1.0), n, grid)
        results[n] = res.to_dict()
        for rung in res.ladder:
            wr.writerow([n, rung["grid"], repr(rung["error"]), "", ""])
        wr.writerow([n, res.grid_size - 1, repr(res.error), res.alternations(), res.method])
        print(f"n={n:<4} E_n={res.error:.6g}  alternations={res.alternations()}  method={res.method}")
    out = Path(cfg.output_dir)
    _write(out, "approx.csv", buf.getvalue())
    _write(out, "approx.json", json.dumps(results, indent=2, sort_keys=True))
    return EXIT_PASS


def cmd_modulus(cfg: ExperimentConfig, args) -> int:
    f, w, Z = cfg.make_function(), cfg.make_weight(), cfg.make_zset()
    g = cfg.make_grids(args.grid_scale)
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["r", "modulus", "t", "value", "argmax_h", "argmax_x", "excluded_stencils"])
    records = []
    for r in cfg.r:
        q = moduli.ModulusQuery(f, w, Z, r, cfg.A, cfg.B, cfg.t, g.h_grid, g.x_grid, g.theta)
        found = {
            "main_part": moduli.main_part_modulus(q),
            "complete": moduli.complete_modulus(q),
            "ditzian_totik": moduli.dt_modulus(q),
        }
        try:
            found["mastroianni_totik"] = moduli.mt_modulus(q)
        except ValueError:
            pass
        for name, res in found.items():
            wr.writerow([r, name, repr(cfg.t), repr(res.value), res.argmax_h, res.argmax_x, res.excluded_stencils])
            records.append({"r": r, "modulus": name, "t": cfg.t, **res.to_dict()})
            print(f"r={r} {name:<18} {res.value:.6g}")
    out = Path(cfg.output_dir)
    _write(out, "modulus.csv", buf.getvalue())
    _write(out, "modulus.json", json.dumps(records, indent=2, sort_keys=True))
    return EXIT_PASS


COMMANDS = {"check-weight": cmd_check_weight, "approx": cmd_approx, "modulus": cmd_modulus, "verify": cmd_verify}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wapprox", description="Weighted polynomial approximation experiments.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("config", help="experiment config (JSON)")
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--out", default=None, help="output directory (overrides the config)")
        sp.add_argument("--grid-scale", type=float, default=1.0, help="multiply all grids by k")
        sp.add_argument("-v", "--verbose", action="store_true")
        if name == "verify":
            sp.add_argument("--suite", action="append", choices=V.SUITES, help="repeatable; default: config suites")
            sp.add_argument("--jobs", type=int, default=1, help="run suites in this many processes")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_PASS
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        cfg = load_config(args.config)
        if args.seed is not None:
            cfg.seed = args.seed
        if args.out is not None:
            cfg.output_dir = args.out
        if args.grid_scale <= 0:
            raise ConfigError("--grid-scale must be positive")
        start = time.perf_counter()
        code = COMMANDS[args.command](cfg, args)
        log.info("%s finished in %.1fs", args.command, time.perf_counter() - start)
        return code
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
