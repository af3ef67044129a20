"""kinex: a seedable Monte Carlo laboratory for kinetic wealth exchange.

Three conservative exchange models (basic random-split, equivalent
exchange with periodic redistribution, nonequivalent mutual aid), a
metrics layer (Gini index, Lorenz curve, total exchange, histograms), a
deterministic parallel sweep engine and curve-fitting tools for the
saturation law relating economic flow per unit inequality to the
composite redistribution / mutual-aid parameter.
"""

__version__ = "0.1.0"

from .errors import (
    ConservationError,
    DegenerateInput,
    EmptyInput,
    GridConfigError,
    InvalidConfig,
    KinexError,
    NonpositiveX,
    ZeroTotalWealth,
)
from .exchange import (
    ExchangeParams,
    PairOutcome,
    WealthState,
    basic_step,
    ex_step,
    nx_step,
    redistribute,
)
from .metrics import (
    FlowAccumulator,
    Histogram,
    accumulate_flow,
    gini,
    histogram,
    lorenz,
)
from .engine import (
    RNG_ALGORITHM,
    ModelSpec,
    SimConfig,
    SimRecord,
    checkpoint_schedule,
    run_simulation,
    sample_pair,
)
from .sweep import (
    AggregatePoint,
    SweepGrid,
    SweepRow,
    aggregate,
    derive_seed,
    run_sweep,
)
from .fitting import (
    FitResult,
    XiEquivalence,
    fit_logarithmic,
    fit_saturation,
    xi_gamma_equivalence,
)

__all__ = [
    "__version__",
    "KinexError", "InvalidConfig", "ZeroTotalWealth", "ConservationError",
    "DegenerateInput", "NonpositiveX", "EmptyInput", "GridConfigError",
    "WealthState", "ExchangeParams", "PairOutcome",
    "basic_step", "ex_step", "nx_step", "redistribute",
    "gini", "lorenz", "FlowAccumulator", "accumulate_flow",
    "Histogram", "histogram",
    "ModelSpec", "SimConfig", "SimRecord", "run_simulation",
    "sample_pair", "checkpoint_schedule", "RNG_ALGORITHM",
    "SweepGrid", "SweepRow", "AggregatePoint", "run_sweep", "aggregate",
    "derive_seed",
    "FitResult", "fit_saturation", "fit_logarithmic",
    "XiEquivalence", "xi_gamma_equivalence",
]
