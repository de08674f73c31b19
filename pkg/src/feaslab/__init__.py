"""Projection-type feasibility algorithms over finite planar point sets.

The package bundles four fixed-point schemes (cyclic relaxed projections,
extrapolated parallel projections, product-space Douglas-Rachford, and a
cyclic pairwise Douglas-Rachford), generators for the point-set families the
experiments run on, deterministic quasi-Monte Carlo sampling, and the three
experiment protocols: parameter sweeps, success rates, and iteration-count
cartography.  A CLI (``feaslab``) and a local HTTP service expose the same
engine; all drivers produce bit-identical results for any worker count.
"""

from .algorithms import (
    DEFAULT_EPSILON,
    DEFAULT_MAX_ITERATIONS,
    LAMBDA_BEST,
    LAMBDA_DEFAULT,
    AlgorithmConfig,
    AlgorithmKind,
    DegenerateCycle,
    OrbitTrace,
    ProductState,
    SinglePointState,
    governing_point,
    init_state,
    monitored_point,
    run_batch,
    run_orbit,
    step_state,
)
from .constellations import (
    REFERENCE_SEEDS,
    CircleSpec,
    ConstellationPreset,
    RandomSpec,
    Ring,
    SplitMix64,
    circles_constellation,
    preset_spec,
    random_constellation,
    reference_constellation,
)
from .experiments import (
    IterationMap,
    SuccessSummary,
    SweepResult,
    cartographer,
    lambda_grid,
    lambda_sweep,
    pick_best_lambda,
    progressive_cartographer,
    resolve_workers,
    success_rate,
)
from .geometry import (
    GLOBAL_REGION,
    LOCAL_REGION,
    Constellation,
    FeasibilityGauge,
    FinitePointSet,
    Point,
    Region,
    StartInSolutionSet,
    bounding_region,
    gauge_eval,
    make_gauge,
    project,
    reflect,
)
from .io_formats import (
    FORMAT_VERSION,
    FormatError,
    dump_constellation,
    encode_map_pgm,
    load_constellation,
    write_sweep_csv,
    write_trace_csv,
)
from .sampling import QmcStream, radical_inverse, sample_region, sample_region_xy

__version__ = "0.1.0"

__all__ = [
    "AlgorithmConfig",
    "AlgorithmKind",
    "CircleSpec",
    "Constellation",
    "ConstellationPreset",
    "DEFAULT_EPSILON",
    "DEFAULT_MAX_ITERATIONS",
    "DegenerateCycle",
    "FORMAT_VERSION",
    "FeasibilityGauge",
    "FinitePointSet",
    "FormatError",
    "GLOBAL_REGION",
    "IterationMap",
    "LAMBDA_BEST",
    "LAMBDA_DEFAULT",
    "LOCAL_REGION",
    "OrbitTrace",
    "Point",
    "ProductState",
    "QmcStream",
    "RandomSpec",
    "REFERENCE_SEEDS",
    "Region",
    "Ring",
    "SinglePointState",
    "SplitMix64",
    "StartInSolutionSet",
    "SuccessSummary",
    "SweepResult",
    "bounding_region",
    "cartographer",
    "circles_constellation",
    "dump_constellation",
    "encode_map_pgm",
    "gauge_eval",
    "governing_point",
    "init_state",
    "lambda_grid",
    "lambda_sweep",
    "load_constellation",
    "make_gauge",
    "monitored_point",
    "pick_best_lambda",
    "preset_spec",
    "progressive_cartographer",
    "project",
    "radical_inverse",
    "random_constellation",
    "reference_constellation",
    "reflect",
    "resolve_workers",
    "run_batch",
    "run_orbit",
    "sample_region",
    "sample_region_xy",
    "step_state",
    "success_rate",
    "write_sweep_csv",
    "write_trace_csv",
]
