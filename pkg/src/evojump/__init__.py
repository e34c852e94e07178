"""NSGA-II and (mu+1) GA on the Jump / OneJumpZeroJump benchmarks.

Library layout:

* :mod:`evojump.core` - bit-string genomes, individuals, seeded RNG streams
* :mod:`evojump.benchmarks` - Jump / OneJumpZeroJump and Pareto-front utilities
* :mod:`evojump.nsga2` - the NSGA-II with four parent-selection schemes
* :mod:`evojump.ga` - the steady-state (mu+1) GA
* :mod:`evojump.oracle` - brute-force reference implementations
* :mod:`evojump.harness` - experiment sweeps, aggregation, CSV emission
* :mod:`evojump.charts` - self-contained SVG charts
* :mod:`evojump.cli` - the ``evojump`` command
"""

from .benchmarks import (
    FrontCoverage,
    ProblemSpec,
    classify_coverage,
    extremal_vectors,
    inner_pareto_front,
    jump_value,
    ojzj_value,
    pareto_front,
)
from .core import (
    BitString,
    Individual,
    RngStream,
    count_ones,
    count_zeros,
    derive_seed,
    hamming,
    sample_uniform,
)
from .ga import GaConfig, ga_run, ga_step, uniform_crossover_one
from .harness import (
    CellKey,
    CellSummary,
    ExperimentConfig,
    emit_csv,
    preset_experiment,
    run_experiment,
)
from .charts import ChartAxes, emit_svg
from .nsga2 import (
    Nsga2Config,
    RankedPopulation,
    binary_tournament,
    bitwise_mutation,
    crowding_assign,
    dominates,
    non_dominated_sort,
    nsga2_run,
    nsga2_step,
    rank_population,
    select_parent_pairs,
    survival_select,
    uniform_crossover_two,
)
from .oracle import OracleReport, brute_crowding, brute_front, brute_rank, run_verification
from .results import DiversityRecord, RunResult, diversity_probe

__version__ = "0.1.0"

__all__ = [
    "BitString",
    "CellKey",
    "CellSummary",
    "ChartAxes",
    "DiversityRecord",
    "ExperimentConfig",
    "FrontCoverage",
    "GaConfig",
    "Individual",
    "Nsga2Config",
    "OracleReport",
    "ProblemSpec",
    "RankedPopulation",
    "RngStream",
    "RunResult",
    "binary_tournament",
    "bitwise_mutation",
    "brute_crowding",
    "brute_front",
    "brute_rank",
    "classify_coverage",
    "count_ones",
    "count_zeros",
    "crowding_assign",
    "derive_seed",
    "diversity_probe",
    "dominates",
    "emit_csv",
    "emit_svg",
    "extremal_vectors",
    "ga_run",
    "ga_step",
    "hamming",
    "inner_pareto_front",
    "jump_value",
    "non_dominated_sort",
    "nsga2_run",
    "nsga2_step",
    "ojzj_value",
    "pareto_front",
    "preset_experiment",
    "rank_population",
    "run_experiment",
    "run_verification",
    "sample_uniform",
    "select_parent_pairs",
    "survival_select",
    "uniform_crossover_one",
    "uniform_crossover_two",
]
