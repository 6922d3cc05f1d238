"""
Command-line entry point: ``hadamard-rw {run,verify,bench,plot}``.

Exit codes: 0 success, 1 verification failure, 2 configuration error,
3 capacity error.
"""

import argparse
import json
import os
import sys
import tempfile

from . import bench, coin, verify
from .engine import CapacityError, ConfigurationError
from .experiment import (
    ENGINES,
    ExperimentConfig,
    format_complex,
    load_config_file,
    parse_init,
    run_experiment,
    write_csv,
    write_json,
)
from .plot import PlotError, plot_csv

EXIT_OK, EXIT_VERIFY, EXIT_CONFIG, EXIT_CAPACITY = 0, 1, 2, 3

ENGINE_TOLERANCE = 1e-12


def _init_arg(text):
    try:
        return parse_init(text)
    except ConfigurationError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="key = value config file; flags override it")
    common.add_argument("--d", type=int, help="number of sites")
    common.add_argument("--n", type=int, help="number of steps")
    common.add_argument("--start", type=int, help="1-based start site (default floor(d/2))")
    common.add_argument("--init", type=_init_arg,
                        help="quantum-coin:a,b or rw-rows:r1,r2,r3,r4 (complex as a+bi)")
    common.add_argument("--engine", choices=ENGINES)
    common.add_argument("--out-csv", metavar="PATH")
    common.add_argument("--out-json", metavar="PATH")
    common.add_argument("--out-svg", metavar="PATH")
    common.add_argument("--seed", type=int)
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="hadamard-rw",
        description="Hadamard quantum walk and its four-row Markov chain, side by side.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("run", parents=[common], help="simulate both walks and write outputs")
    p_verify = sub.add_parser("verify", parents=[common], help="check every identity residual")
    p_verify.add_argument("--perturb-b", type=float, default=0.0, help=argparse.SUPPRESS)
    sub.add_parser("bench", parents=[common], help="time matrix-free vs dense stepping")
    p_plot = sub.add_parser("plot", help="render a run CSV as SVG")
    p_plot.add_argument("csv", help="CSV written by 'run'")
    p_plot.add_argument("svg", help="SVG output path")
    return parser


def _resolve_config(args) -> ExperimentConfig:
    merged = load_config_file(args.config) if args.config else {}
    flags = dict(d=args.d, n=args.n, start=args.start, init=args.init, engine=args.engine,
                 out_csv=args.out_csv, out_json=args.out_json, out_svg=args.out_svg,
                 seed=args.seed)
    merged.update({k: v for k, v in flags.items() if v is not None})
    return ExperimentConfig(**merged)


def cmd_run(cfg: ExperimentConfig, out=None) -> int:
    out = out or sys.stdout
    result = run_experiment(cfg)
    report = result.report
    print(f"energy={report.energy!r},population={format_complex(report.population)}", file=out)
    print(f"leak={report.leak!r},leak_rw={report.leak_rw!r}", file=out)
    for name, value in result.residuals.items():
        print(f"residual[{name}]={value:.3e}", file=out)
    if cfg.out_csv:
        write_csv(result, cfg.out_csv)
    if cfg.out_json:
        write_json(result, cfg.out_json)
    if cfg.out_svg:
        if cfg.out_csv:
            plot_csv(cfg.out_csv, cfg.out_svg)
        else:
            with tempfile.TemporaryDirectory() as tmp:
                path = os.path.join(tmp, "run.csv")
                write_csv(result, path)
                plot_csv(path, cfg.out_svg)
    if result.residuals.get("engine", 0.0) > ENGINE_TOLERANCE:
        return EXIT_VERIFY
    return EXIT_OK


def cmd_verify(args, cfg: ExperimentConfig, out=None) -> int:
    out = out or sys.stdout
    sites = [args.d] if args.d is not None else verify.DEFAULT_SITES
    steps = [args.n] if args.n is not None else verify.DEFAULT_STEPS
    b = None
    if args.perturb_b:
        b = coin.projection_b()
        b[0, 0] += args.perturb_b
    checks = verify.run_verification(sites, steps, seed=cfg.seed, b=b)
    for c in checks:
        print(c.line(), file=out)
    ok = verify.all_passed(checks)
    failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed", file=out)
    if cfg.out_json:
        with open(cfg.out_json, "w", newline="\n") as fh:
            json.dump({"residuals": {f"{c.name}[{c.params}]": c.residual for c in checks},
                       "passed": ok, "config_echo": cfg.echo()}, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_bench(args, cfg: ExperimentConfig, out=None) -> int:
    out = out or sys.stdout
    engine = args.engine or "both"
    status = EXIT_OK
    if engine in ("matrix-free", "both"):
        sizes = [args.d] if args.d is not None else bench.DEFAULT_SIZES
        timings = bench.time_matrix_free(sizes, seed=cfg.seed)
        for t in timings:
            print(f"{t.engine:<12s} d={t.d:<8d} {t.seconds_per_step:.3e} s/step", file=out)
        if len(timings) > 1:
            lo, hi = bench.EXPONENT_RANGE
            k = bench.fit_exponent(timings)
            ok = lo <= k <= hi
            print(f"{'PASS' if ok else 'FAIL'}  matrix-free fit exponent {k:.3f} "
                  f"(expected in [{lo}, {hi}])", file=out)
            if not ok:
                status = EXIT_VERIFY
    if engine in ("dense", "both"):
        sizes = [args.d] if args.d is not None else bench.DEFAULT_DENSE_SIZES
        for t in bench.time_dense(sizes, seed=cfg.seed):
            print(f"{t.engine:<12s} d={t.d:<8d} {t.seconds_per_step:.3e} s/step", file=out)
    return status


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "plot":
            plot_csv(args.csv, args.svg)
            return EXIT_OK
        cfg = _resolve_config(args)
        if args.command == "run":
            return cmd_run(cfg)
        if args.command == "verify":
            return cmd_verify(args, cfg)
        return cmd_bench(args, cfg)
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (ConfigurationError, PlotError, OSError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
