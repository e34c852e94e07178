"""Command-line interface.

Subcommands:
  run-nsga2   sweep-free NSGA-II cell (one pop size, one pc) with repetitions
  run-ga      (mu+1) GA over one or more population sizes
  verify      brute-force oracle suites; exits nonzero on any mismatch
  tables      presets reproducing the reported tables (1, 2) and figures
              (fig1, fig2)

Every command that runs experiments writes the per-run CSV, a *_summary.csv
companion, and a *_meta.json sidecar; outputs are a pure function of the seed.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .charts import ChartAxes, emit_svg
from .harness import ExperimentConfig, emit_csv, preset_experiment, run_experiment
from .oracle import run_verification

CLI_SELECTION = {
    "fair": "fair",
    "uniform": "uniform",
    "tournament": "n_tournaments",
    "two-permutation": "two_permutation",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="evojump",
        description="NSGA-II / (mu+1) GA experiments on Jump and OneJumpZeroJump",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    nsga = sub.add_parser("run-nsga2", help="run NSGA-II repetitions on OneJumpZeroJump")
    nsga.add_argument("--n", type=int, required=True)
    nsga.add_argument("--k", type=int, required=True)
    size = nsga.add_mutually_exclusive_group(required=True)
    size.add_argument("--pop-size", type=int)
    size.add_argument("--pop-factor", type=int, help="N = factor * (n - 2k + 3)")
    nsga.add_argument("--pc", type=float, required=True)
    nsga.add_argument("--selection", choices=sorted(CLI_SELECTION), default="fair")
    nsga.add_argument("--reps", type=int, required=True)
    nsga.add_argument("--seed", type=int, required=True)
    nsga.add_argument("--max-evals", type=int, default=None)
    nsga.add_argument("--probe-diversity", action="store_true")
    nsga.add_argument("--out", required=True, help="per-run CSV path")
    nsga.add_argument("--svg", default=None, help="optional chart path")
    nsga.add_argument("--workers", type=int, default=1)

    ga = sub.add_parser("run-ga", help="run the (mu+1) GA on Jump")
    ga.add_argument("--n", type=int, required=True)
    ga.add_argument("--k", type=int, required=True)
    ga.add_argument("--mu", required=True, help="population size(s), comma separated")
    ga.add_argument("--pc", type=float, required=True)
    ga.add_argument("--reps", type=int, required=True)
    ga.add_argument("--seed", type=int, required=True)
    ga.add_argument("--max-evals", type=int, default=None)
    ga.add_argument("--out", required=True, help="per-run CSV path")
    ga.add_argument("--svg", default=None, help="optional chart path")
    ga.add_argument("--workers", type=int, default=1)

    verify = sub.add_parser("verify", help="run the brute-force oracle suites")
    verify.add_argument("--cases", type=int, default=1000)
    verify.add_argument("--max-n", type=int, default=14)
    verify.add_argument("--seed", type=int, default=20230211)

    tables = sub.add_parser("tables", help="reproduce a reported table or figure")
    tables.add_argument("--which", choices=("1", "2", "fig1", "fig2"), required=True)
    tables.add_argument("--seed", type=int, required=True)
    tables.add_argument("--out-dir", default=".")
    tables.add_argument("--reps", type=int, default=None, help="override the preset's 10")
    tables.add_argument("--workers", type=int, default=1)
    return parser


def _report(results) -> None:
    for cell, summary, _runs in results:
        size = f"N={cell.pop_size}" if cell.pop_size is not None else f"mu={cell.mu}"
        mean = "n/a" if summary.mean_evaluations is None else f"{summary.mean_evaluations:,.0f}"
        line = (
            f"{cell.algorithm} n={cell.n} k={cell.k} {size} pc={cell.pc:g}: "
            f"{summary.successes}/{summary.reps} succeeded, mean evaluations {mean}"
        )
        if summary.diversity_mean is not None:
            line += f", diversity {summary.diversity_mean:.3f}"
        print(line)


def _cmd_run_nsga2(args) -> int:
    config = ExperimentConfig(
        algorithm="nsga2",
        n=args.n,
        k=args.k,
        pc_values=(args.pc,),
        pop_sizes=(args.pop_size,) if args.pop_size is not None else (),
        pop_factors=(args.pop_factor,) if args.pop_factor is not None else (),
        selection=CLI_SELECTION[args.selection],
        reps=args.reps,
        base_seed=args.seed,
        probe_diversity=args.probe_diversity,
        max_evals=args.max_evals,
        workers=args.workers,
    )
    results = run_experiment(config)
    meta = {"command": "run-nsga2", "base_seed": args.seed, "n": args.n, "k": args.k}
    paths = emit_csv(results, args.out, meta=meta)
    _report(results)
    print("wrote " + ", ".join(str(p) for p in paths))
    if args.svg:
        emit_svg(results, args.svg, ChartAxes(x_label="population size N"), x_field="pop_size")
        print(f"wrote {args.svg}")
    return 0


def _cmd_run_ga(args) -> int:
    mus = tuple(int(part) for part in args.mu.split(",") if part)
    config = ExperimentConfig(
        algorithm="ga",
        n=args.n,
        k=args.k,
        pc_values=(args.pc,),
        mus=mus,
        reps=args.reps,
        base_seed=args.seed,
        max_evals=args.max_evals,
        workers=args.workers,
    )
    results = run_experiment(config)
    meta = {"command": "run-ga", "base_seed": args.seed, "n": args.n, "k": args.k}
    paths = emit_csv(results, args.out, meta=meta)
    _report(results)
    print("wrote " + ", ".join(str(p) for p in paths))
    if args.svg:
        emit_svg(results, args.svg, ChartAxes(x_label="mu", x_log_base=2), x_field="mu")
        print(f"wrote {args.svg}")
    return 0


def _cmd_verify(args) -> int:
    report = run_verification(cases=args.cases, max_n=args.max_n, seed=args.seed)
    print(f"oracle suites: {report.cases_run} cases, {len(report.mismatches)} mismatches")
    for case, expected, actual in report.mismatches[:20]:
        print(f"  MISMATCH {case}: expected {expected}, got {actual}")
    if len(report.mismatches) > 20:
        print(f"  ... and {len(report.mismatches) - 20} more")
    return 0 if report.passed else 1


def _cmd_tables(args) -> int:
    config, hints = preset_experiment(
        args.which, base_seed=args.seed, reps=args.reps, workers=args.workers
    )
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    results = run_experiment(config)
    meta = {
        "command": "tables",
        "preset": args.which,
        "base_seed": args.seed,
        "reps": config.reps,
    }
    basename = hints["basename"]
    paths = emit_csv(results, out_dir / f"{basename}_runs.csv", meta=meta)
    _report(results)
    print("wrote " + ", ".join(str(p) for p in paths))
    if args.which in ("fig1", "fig2"):
        svg_path = out_dir / f"{basename}.svg"
        emit_svg(
            results,
            svg_path,
            ChartAxes(x_label="mu", x_log_base=hints["x_log_base"]),
            x_field=hints["sweep_field"],
        )
        print(f"wrote {svg_path}")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "run-nsga2": _cmd_run_nsga2,
        "run-ga": _cmd_run_ga,
        "verify": _cmd_verify,
        "tables": _cmd_tables,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
