"""Command-line entry point: ``retint <command> [flags]``.

Commands: generate, intervals, theory, fit, procsim, sweep, validate.
Any flag may also come from ``--config FILE.json`` (keys are the flag names
with dashes or underscores); flags given on the command line win. Output
goes to ``--out-dir``, defaulting to ``$RETINT_OUTDIR`` or the working
directory.

Exit codes: 0 success, 1 internal or failed validation, 2 bad parameters,
3 insufficient data.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import estimator, extremes, fileio, generator, procsim, theory, validate
from .errors import ParameterError, RetintError

DESK_N = 2**22
FULL_N = 2**25
OUTDIR_ENV = "RETINT_OUTDIR"


def _q_grid(text: str) -> list[float]:
    """``start:stop:step`` (inclusive) or a comma-separated list."""
    if ":" in text:
        parts = [float(t) for t in text.split(":")]
        if len(parts) != 3 or parts[2] <= 0 or parts[1] < parts[0]:
            raise ParameterError(f"bad q range {text!r}; expected start:stop:step")
        start, stop, step = parts
        count = int(round((stop - start) / step)) + 1
        return [round(start + i * step, 12) for i in range(count)]
    return [float(t) for t in text.split(",") if t.strip()]


def _pair(text) -> tuple[float, float]:
    if isinstance(text, (list, tuple)):
        lo, hi = text
    else:
        lo, hi = (float(t) for t in str(text).split(":"))
    return float(lo), float(hi)


def _seeds(text) -> list[int]:
    if isinstance(text, (list, tuple)):
        return [int(s) for s in text]
    return [int(s) for s in str(text).split(",") if s.strip()]


def _out_dir(args) -> Path:
    d = Path(args.out_dir or os.environ.get(OUTDIR_ENV) or ".")
    d.mkdir(parents=True, exist_ok=True)
    return d


def _emit(obj) -> None:
    print(json.dumps(fileio._clean(obj), indent=2, sort_keys=True))


# --- generate --------------------------------------------------------------

def _series_path(args, seed: int, multi: bool) -> Path:
    if args.out and not multi:
        return Path(args.out)
    base = Path(args.out) if args.out else _out_dir(args) / "series.bin"
    return base.with_name(f"{base.stem}_seed{seed}{base.suffix}") if multi else base


def _check_generate(args) -> None:
    n = FULL_N if args.paper_scale else args.n
    generator._check_length(n)
    if args.kind == "fourier_filtered" and not (0.0 < args.gamma < 1.0):
        raise ParameterError(f"gamma must lie in (0, 1), got {args.gamma}")


def _make_series(kind: str, n: int, gamma: float, seed: int) -> generator.TimeSeries:
    if kind == "iid_gaussian":
        return generator.generate_iid_gaussian(n, seed)
    return generator.generate_lrc_gaussian(n, gamma, seed)


def cmd_generate(args) -> int:
    _check_generate(args)
    n = FULL_N if args.paper_scale else args.n
    seeds = _seeds(args.seeds) if args.seeds is not None else [args.seed]
    multi = len(seeds) > 1

    def one(seed):
        ts = _make_series(args.kind, n, args.gamma, seed)
        path = _series_path(args, seed, multi)
        fileio.save_series(ts, path)
        return {"path": str(path), **ts.metadata()}

    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        written = list(pool.map(one, seeds))
    _emit(written if multi else written[0])
    return 0


# --- intervals -------------------------------------------------------------

def _load_intervals(args) -> extremes.IntervalSeries:
    ts = fileio.load_series(args.series)
    return extremes.return_intervals(extremes.binarize(ts, args.q))


def cmd_intervals(args) -> int:
    iv = _load_intervals(args)
    out = Path(args.out) if args.out else _out_dir(args) / "intervals.csv"
    fileio.write_table(out, {"r": iv.intervals, "R": iv.scaled()})
    summary = iv.summary()
    fileio.write_json(fileio.sidecar(out), summary)
    _emit(summary)
    return 0


# --- theory ----------------------------------------------------------------

def cmd_theory(args) -> int:
    params = theory.solve_constants(args.gamma, args.mean_r)
    d = _out_dir(args)
    fileio.write_json(d / "theory_params.json", params.to_dict())
    fileio.write_table(d / "theory_curves.csv",
                       theory.theory_curves(params, R_max=args.r_max, points=args.points))
    _emit(params.to_dict())
    return 0


# --- fit -------------------------------------------------------------------

def _intervals_for_fit(args) -> extremes.IntervalSeries:
    if args.intervals:
        tab = fileio.read_table(args.intervals)
        side = fileio.sidecar(args.intervals)
        meta = fileio.read_json(side) if side.exists() else {}
        r = tab["r"].astype(np.int64)
        gamma = args.gamma if args.gamma is not None else meta.get("gamma_target")
        return extremes.IntervalSeries(r, float(r.mean()), float(meta.get("q") or math.nan),
                                       float("nan") if gamma is None else float(gamma))
    if args.series is None or args.q is None:
        raise ParameterError("fit needs --intervals or both --series and --q")
    return _load_intervals(args)


def cmd_fit(args) -> int:
    iv = _intervals_for_fit(args)
    gamma = args.gamma if args.gamma is not None else iv.gamma_target
    if not (0.0 < gamma <= 1.0):
        raise ParameterError(f"gamma must lie in (0, 1], got {gamma}")
    R = iv.scaled()
    hist = estimator.log_binned_histogram(R, args.bins_per_decade, iv.mean_r)
    fr = _pair(args.fit_range) if args.fit_range else None
    est = estimator.fit_powerlaw_slope(hist, fr, gamma=gamma, q=iv.q)
    params = theory.solve_constants(gamma, iv.mean_r)
    d = _out_dir(args)
    fileio.write_table(d / "fit_density.csv", estimator.density_table(hist, params))
    result = {
        "q": iv.q, "gamma": gamma, "mean_r": iv.mean_r, "n_intervals": iv.n_intervals,
        "s_m": est.s_m, "stderr": est.stderr, "theta": est.theta,
        "fit_range": list(est.fit_range), "n_bins": est.n_bins,
        "ks_distance": estimator.ks_distance(R, params),
        "theory": params.to_dict(),
    }
    fileio.write_json(d / "fit_slope.json", result)
    _emit(result)
    return 0


# --- procsim ---------------------------------------------------------------

def cmd_procsim(args) -> int:
    cfg = procsim.ProcessConfig(
        gamma=args.gamma, k_max=args.k_max, n_events_target=args.n_events, seed=args.seed,
        horizon=args.horizon, exponent=args.exponent, method=args.method,
    )
    ev = procsim.simulate_process(cfg)
    iv = extremes.return_intervals(ev)
    out = Path(args.out) if args.out else _out_dir(args) / "procsim_intervals.csv"
    fileio.write_table(out, {"r": iv.intervals, "R": iv.scaled()})
    params = theory.solve_constants(cfg.gamma, iv.mean_r)
    R = iv.scaled()
    x = iv.intervals - iv.mean_r
    summary = iv.summary()
    summary.update({
        "ks_distance": estimator.ks_distance(R, params),
        "lag1_correlation": float((x[1:] @ x[:-1]) / (x @ x)),
        "theory": params.to_dict(),
    })
    fileio.write_json(fileio.sidecar(out), summary)
    _emit(summary)
    return 0


# --- sweep -----------------------------------------------------------------

def _sweep_series(args) -> generator.TimeSeries:
    if args.series:
        return fileio.load_series(args.series)
    if args.gamma is None:
        raise ParameterError("sweep needs --series or --gamma")
    n = FULL_N if args.paper_scale else args.n
    generator._check_length(n)
    return generator.generate_lrc_gaussian(n, args.gamma, args.seed)


def cmd_sweep(args) -> int:
    q_grid = _q_grid(args.q)
    if any(b <= a for a, b in zip(q_grid, q_grid[1:])) or not q_grid:
        raise ParameterError("q grid must be nonempty and strictly increasing")
    fr = _pair(args.fit_range) if args.fit_range else None
    ts = _sweep_series(args)
    d = _out_dir(args)
    parts = Path(tempfile.mkdtemp(dir=d, prefix=".sweep-parts-"))

    def point(q):
        est = estimator.sweep_threshold(ts, [q], gamma=ts.gamma_target,
                                        bins_per_decade=args.bins_per_decade, fit_range=fr)[0]
        rec = {"q": q, "s_m": est.s_m, "stderr": est.stderr, "theta": est.theta,
               "gamma": est.gamma, "mean_r": est.mean_r, "n_intervals": est.n_intervals,
               "reason": est.reason}
        fileio.write_json(parts / f"q_{q:.6f}.json", rec)
        return rec

    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        list(pool.map(point, q_grid))
    recs = sorted((fileio.read_json(p) for p in parts.glob("q_*.json")), key=lambda r: r["q"])
    for p in parts.glob("q_*.json"):
        p.unlink()
    parts.rmdir()

    def col(k):
        return [math.nan if r[k] is None else r[k] for r in recs]

    fileio.write_table(d / "sweep.csv", {k: col(k) for k in ("q", "s_m", "stderr", "theta", "gamma")})
    fileio.write_json(d / "sweep.json", {"series": ts.metadata(), "points": recs})
    _emit(recs)
    return 0


# --- validate --------------------------------------------------------------

def cmd_validate(args) -> int:
    report = validate.run_all()
    out = Path(args.out) if args.out else _out_dir(args) / "validate.json"
    fileio.write_json(out, report)
    for c in report["checks"]:
        print(f"{'PASS' if c['passed'] else 'FAIL'} {c['name']}", file=sys.stderr)
    print(f"{report['n_checks'] - report['n_failed']}/{report['n_checks']} checks passed",
          file=sys.stderr)
    return 0 if report["passed"] else 1


# --- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file supplying default flag values")
    common.add_argument("--out-dir", help=f"output directory (default ${OUTDIR_ENV} or .)")
    common.add_argument("--jobs", type=int, default=1, help="concurrent workers")

    p = argparse.ArgumentParser(prog="retint", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", parents=[common], help="generate a correlated series")
    g.add_argument("--n", type=int, default=DESK_N)
    g.add_argument("--paper-scale", action="store_true", help=f"use n = {FULL_N}")
    g.add_argument("--gamma", type=float, default=0.5)
    g.add_argument("--kind", choices=["fourier_filtered", "iid_gaussian"], default="fourier_filtered")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--seeds", help="comma-separated seeds; one file per seed")
    g.add_argument("--out", help="series file (.bin or .csv)")
    g.set_defaults(func=cmd_generate)

    i = sub.add_parser("intervals", parents=[common], help="threshold a series into intervals")
    i.add_argument("--series", required=True)
    i.add_argument("--q", type=float, required=True)
    i.add_argument("--out", help="interval CSV path")
    i.set_defaults(func=cmd_intervals)

    t = sub.add_parser("theory", parents=[common], help="solve cutoff constants and tabulate densities")
    t.add_argument("--gamma", type=float, required=True)
    t.add_argument("--mean-r", type=float, required=True)
    t.add_argument("--r-max", type=float, default=10.0)
    t.add_argument("--points", type=int, default=200)
    t.set_defaults(func=cmd_theory)

    f = sub.add_parser("fit", parents=[common], help="histogram, slope fit and KS distance")
    f.add_argument("--intervals", help="interval CSV from `intervals` or `procsim`")
    f.add_argument("--series")
    f.add_argument("--q", type=float)
    f.add_argument("--gamma", type=float)
    f.add_argument("--bins-per-decade", type=int, default=10)
    f.add_argument("--fit-range", help="lo:hi in scaled units (default 3*s0:0.3)")
    f.set_defaults(func=cmd_fit)

    s = sub.add_parser("procsim", parents=[common], help="simulate the hazard process")
    s.add_argument("--gamma", type=float, required=True)
    s.add_argument("--k-max", type=int, default=100_000)
    s.add_argument("--n-events", type=int, default=100_000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--horizon", type=int, default=None, help="force an event at this step")
    s.add_argument("--exponent", choices=["one_minus_gamma", "gamma"], default="one_minus_gamma")
    s.add_argument("--method", choices=["thinning", "stepwise"], default="thinning")
    s.add_argument("--out", help="interval CSV path")
    s.set_defaults(func=cmd_procsim)

    w = sub.add_parser("sweep", parents=[common], help="small-R slope as a function of q")
    w.add_argument("--series")
    w.add_argument("--gamma", type=float)
    w.add_argument("--n", type=int, default=DESK_N)
    w.add_argument("--paper-scale", action="store_true")
    w.add_argument("--seed", type=int, default=0)
    w.add_argument("--q", default="1.0:3.0:0.25")
    w.add_argument("--bins-per-decade", type=int, default=10)
    w.add_argument("--fit-range")
    w.set_defaults(func=cmd_sweep)

    v = sub.add_parser("validate", parents=[common], help="run the analytical self-checks")
    v.add_argument("--out", help="report path (default validate.json)")
    v.set_defaults(func=cmd_validate)
    return p


def _apply_config(parser: argparse.ArgumentParser, cfg: dict) -> None:
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            for sub in action.choices.values():
                for a in sub._actions:
                    if a.dest in cfg:
                        a.required = False
                sub.set_defaults(**cfg)


def parse_args(argv=None) -> argparse.Namespace:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    parser = build_parser()
    if known.config:
        with open(known.config) as fh:
            cfg = {k.replace("-", "_"): v for k, v in json.load(fh).items()}
        _apply_config(parser, cfg)
    return parser.parse_args(argv)


def main(argv=None) -> int:
    try:
        args = parse_args(argv)
        return args.func(args)
    except RetintError as exc:
        print(f"retint: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except (OSError, json.JSONDecodeError) as exc:
        print(f"retint: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"retint: internal error: {exc!r}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
