"""Experiment orchestration: sweeps, repetitions, aggregation, CSV emission.

An experiment is a grid of cells (population size or mu, crossover
probability) times a number of repetitions. Every (cell, repetition) gets its
own seed derived from the base seed and the two indices, so the entire output
is a pure function of the configuration: re-running a cell in isolation, or
running repetitions in parallel workers, produces bit-identical files.

Runs that exhaust their evaluation budget are reported with success=false and
excluded from the mean-evaluation aggregates (budgets in the presets are two
orders of magnitude above the observed means, so this stays exceptional).
"""

from __future__ import annotations

import csv
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path
from statistics import fmean, stdev

from .core import RngStream, derive_seed
from .benchmarks import ProblemSpec
from .ga import GaConfig, ga_run
from .nsga2 import SELECTION_METHODS, Nsga2Config, nsga2_run
from .results import RunResult

__all__ = [
    "CellKey",
    "CellSummary",
    "ExperimentConfig",
    "run_experiment",
    "emit_csv",
    "preset_experiment",
    "PRESETS",
]

RUN_COLUMNS = [
    "run_id",
    "algorithm",
    "problem",
    "n",
    "k",
    "pop_size",
    "mu",
    "pc",
    "selection",
    "seed",
    "evaluations",
    "iterations",
    "success",
    "inner_cover_iter",
    "first_extremal_iter",
    "second_extremal_iter",
    "diversity_mean",
    "crossover_made_extremal",
]

SUMMARY_COLUMNS = [
    "cell_id",
    "algorithm",
    "problem",
    "n",
    "k",
    "pop_size",
    "mu",
    "pc",
    "selection",
    "reps",
    "successes",
    "success_rate",
    "mean_evaluations",
    "std_evaluations",
    "mean_iterations",
    "diversity_mean",
    "diversity_std",
]


@dataclass(frozen=True)
class CellKey:
    """One point of the sweep grid."""

    algorithm: str
    problem: str
    n: int
    k: int
    pop_size: int | None
    mu: int | None
    pc: float
    selection: str | None


@dataclass(frozen=True)
class CellSummary:
    """Aggregates over one cell's repetitions.

    Means and standard deviations of evaluations/iterations cover successful
    runs only; standard deviations use the sample (n-1) estimator and are None
    below two contributing runs. Diversity statistics aggregate the per-run
    windowed means of runs that produced in-window probe records.
    """

    reps: int
    successes: int
    success_rate: float
    mean_evaluations: float | None
    std_evaluations: float | None
    mean_iterations: float | None
    diversity_mean: float | None
    diversity_std: float | None


@dataclass(frozen=True)
class ExperimentConfig:
    """A full sweep: one algorithm, one problem size, lists of cell parameters."""

    algorithm: str  # "nsga2" | "ga"
    n: int
    k: int
    pc_values: tuple[float, ...]
    pop_sizes: tuple[int, ...] = ()
    pop_factors: tuple[int, ...] = ()
    mus: tuple[int, ...] = ()
    selection: str = "fair"
    reps: int = 10
    base_seed: int = 0
    probe_diversity: bool = False
    max_evals: int | None = None
    workers: int = 1

    def __post_init__(self):
        if self.algorithm not in ("nsga2", "ga"):
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if self.reps < 1:
            raise ValueError("reps must be at least 1")
        if not self.pc_values:
            raise ValueError("pc_values must be non-empty")
        if self.algorithm == "nsga2":
            if bool(self.pop_sizes) == bool(self.pop_factors):
                raise ValueError("give exactly one of pop_sizes / pop_factors")
            if self.selection not in SELECTION_METHODS:
                raise ValueError(f"unknown selection method {self.selection!r}")
        else:
            if not self.mus:
                raise ValueError("the GA sweep needs at least one mu value")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")
        # Validate the problem spec once up front so a bad cell aborts early.
        ProblemSpec("ojzj" if self.algorithm == "nsga2" else "jump", self.n, self.k)

    def cells(self) -> list[CellKey]:
        if self.algorithm == "nsga2":
            sizes = self.pop_sizes or tuple(
                c * (self.n - 2 * self.k + 3) for c in self.pop_factors
            )
            return [
                CellKey("nsga2", "ojzj", self.n, self.k, size, None, pc, self.selection)
                for size in sizes
                for pc in self.pc_values
            ]
        return [
            CellKey("ga", "jump", self.n, self.k, None, mu, pc, None)
            for mu in self.mus
            for pc in self.pc_values
        ]


def _run_task(config: ExperimentConfig, cell: CellKey, cell_index: int, rep: int) -> RunResult:
    seed = derive_seed(config.base_seed, cell_index, rep)
    if cell.algorithm == "nsga2":
        run_config = Nsga2Config(
            spec=ProblemSpec("ojzj", cell.n, cell.k),
            pop_size=cell.pop_size,
            pc=cell.pc,
            selection=cell.selection,
            max_evals=config.max_evals,
            seed=seed,
        )
        return nsga2_run(run_config, probe_diversity=config.probe_diversity)
    run_config = GaConfig(
        spec=ProblemSpec("jump", cell.n, cell.k),
        mu=cell.mu,
        pc=cell.pc,
        max_evals=config.max_evals,
        seed=seed,
    )
    return ga_run(run_config)


def _run_task_args(args) -> tuple[int, int, RunResult]:
    config, cell, cell_index, rep = args
    return cell_index, rep, _run_task(config, cell, cell_index, rep)


def run_experiment(
    config: ExperimentConfig,
) -> list[tuple[CellKey, CellSummary, list[RunResult]]]:
    """Execute every (cell, repetition) and aggregate per cell.

    With ``workers > 1`` repetitions run in a process pool; results are
    reassembled in (cell, repetition) order, so the output does not depend on
    completion order or worker count.
    """
    cells = config.cells()
    try:
        tasks = [
            (config, cell, ci, rep)
            for ci, cell in enumerate(cells)
            for rep in range(config.reps)
        ]
    except ValueError as exc:  # pragma: no cover - cells() validates eagerly
        raise ValueError(f"invalid sweep: {exc}") from exc

    by_key: dict[tuple[int, int], RunResult] = {}
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            for ci, rep, run in pool.map(_run_task_args, tasks, chunksize=1):
                by_key[(ci, rep)] = run
    else:
        for config_, cell, ci, rep in tasks:
            try:
                by_key[(ci, rep)] = _run_task(config_, cell, ci, rep)
            except ValueError as exc:
                raise ValueError(f"cell {ci} ({cell}) rejected its configuration: {exc}") from exc

    out = []
    for ci, cell in enumerate(cells):
        runs = [by_key[(ci, rep)] for rep in range(config.reps)]
        out.append((cell, _summarize(runs), runs))
    return out


def _summarize(runs: list[RunResult]) -> CellSummary:
    successes = [r for r in runs if r.success]
    evals = [float(r.evaluations) for r in successes]
    iters = [float(r.iterations) for r in successes]
    div_means = [m for m in (r.diversity_mean() for r in runs) if m is not None]
    return CellSummary(
        reps=len(runs),
        successes=len(successes),
        success_rate=len(successes) / len(runs),
        mean_evaluations=fmean(evals) if evals else None,
        std_evaluations=stdev(evals) if len(evals) >= 2 else None,
        mean_iterations=fmean(iters) if iters else None,
        diversity_mean=fmean(div_means) if div_means else None,
        diversity_std=stdev(div_means) if len(div_means) >= 2 else None,
    )


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _run_row(cell_index: int, rep: int, cell: CellKey, run: RunResult) -> list[str]:
    return [
        _fmt(f"{cell_index}-{rep}"),
        _fmt(cell.algorithm),
        _fmt(cell.problem),
        _fmt(cell.n),
        _fmt(cell.k),
        _fmt(cell.pop_size),
        _fmt(cell.mu),
        _fmt(cell.pc),
        _fmt(cell.selection),
        _fmt(run.seed),
        _fmt(run.evaluations),
        _fmt(run.iterations),
        _fmt(run.success),
        _fmt(run.inner_cover_iter),
        _fmt(run.first_extremal_iter),
        _fmt(run.second_extremal_iter),
        _fmt(run.diversity_mean()),
        _fmt(run.crossover_made_extremal),
    ]


def summary_path_for(path: str | Path) -> Path:
    p = Path(path)
    return p.with_name(p.stem + "_summary" + (p.suffix or ".csv"))


def meta_path_for(path: str | Path) -> Path:
    p = Path(path)
    return p.with_name(p.stem + "_meta.json")


def emit_csv(
    results: list[tuple[CellKey, CellSummary, list[RunResult]]],
    path: str | Path,
    meta: dict | None = None,
) -> tuple[Path, Path, Path]:
    """Write the per-run CSV, its companion per-cell summary, and a metadata
    sidecar (JSON) recording at least the RNG algorithm.

    Files are UTF-8 with LF line endings; numeric fields are written so they
    parse back to the original values exactly.
    """
    runs_path = Path(path)
    summary_path = summary_path_for(runs_path)
    meta_path = meta_path_for(runs_path)

    with open(runs_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(RUN_COLUMNS)
        for ci, (cell, _summary, runs) in enumerate(results):
            for rep, run in enumerate(runs):
                writer.writerow(_run_row(ci, rep, cell, run))

    with open(summary_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SUMMARY_COLUMNS)
        for ci, (cell, summary, _runs) in enumerate(results):
            writer.writerow(
                [
                    _fmt(ci),
                    _fmt(cell.algorithm),
                    _fmt(cell.problem),
                    _fmt(cell.n),
                    _fmt(cell.k),
                    _fmt(cell.pop_size),
                    _fmt(cell.mu),
                    _fmt(cell.pc),
                    _fmt(cell.selection),
                    _fmt(summary.reps),
                    _fmt(summary.successes),
                    _fmt(summary.success_rate),
                    _fmt(summary.mean_evaluations),
                    _fmt(summary.std_evaluations),
                    _fmt(summary.mean_iterations),
                    _fmt(summary.diversity_mean),
                    _fmt(summary.diversity_std),
                ]
            )

    payload = {"rng": RngStream.GENERATOR}
    if meta:
        payload.update(meta)
    with open(meta_path, "w", encoding="utf-8", newline="") as fh:
        json.dump(payload, fh, sort_keys=True, indent=2)
        fh.write("\n")
    return runs_path, summary_path, meta_path


# Experiment presets matching the reported tables and figures. Budgets sit two
# orders of magnitude above the reported means so timeouts stay exceptional.
PRESETS = {
    "1": dict(
        config=ExperimentConfig(
            algorithm="nsga2",
            n=50,
            k=2,
            pc_values=(0.0, 0.9),
            pop_factors=(2, 4),
            selection="fair",
            reps=10,
            probe_diversity=True,
            max_evals=45_000_000,
        ),
        basename="table1",
        sweep_field="pop_size",
        x_log_base=None,
    ),
    "2": dict(
        config=ExperimentConfig(
            algorithm="nsga2",
            n=100,
            k=2,
            pc_values=(0.0, 0.9),
            pop_factors=(2, 4),
            selection="fair",
            reps=10,
            max_evals=400_000_000,
        ),
        basename="table2",
        sweep_field="pop_size",
        x_log_base=None,
    ),
    "fig1": dict(
        config=ExperimentConfig(
            algorithm="ga",
            n=100,
            k=4,
            pc_values=(0.9,),
            mus=tuple(2**i for i in range(10)),
            reps=10,
            max_evals=2_000_000_000,
        ),
        basename="fig1",
        sweep_field="mu",
        x_log_base=2,
    ),
    "fig2": dict(
        config=ExperimentConfig(
            algorithm="ga",
            n=1000,
            k=4,
            pc_values=(0.9,),
            mus=tuple(2**i for i in range(5, 12)),
            reps=10,
            max_evals=200_000_000_000,
        ),
        basename="fig2",
        sweep_field="mu",
        x_log_base=2,
    ),
}


def preset_experiment(
    which: str, base_seed: int, reps: int | None = None, workers: int = 1
) -> tuple[ExperimentConfig, dict]:
    """Resolve a preset name to a runnable configuration plus chart hints."""
    if which not in PRESETS:
        raise ValueError(f"unknown preset {which!r}, expected one of {sorted(PRESETS)}")
    entry = PRESETS[which]
    config: ExperimentConfig = entry["config"]
    config = replace(
        config,
        base_seed=base_seed,
        workers=workers,
        reps=config.reps if reps is None else reps,
    )
    return config, {k: v for k, v in entry.items() if k != "config"}
