"""Parameter-grid sweeps with replicates and per-point aggregation.

A grid is the cartesian product of the parameter lists appropriate to the
model kind (lambda x xi x tp for ex, lambda x gamma for nx, lambda for
basic). Every (grid point, replicate) pair maps to its own run seed,
derived from (master_seed, point index, replicate index) through
SeedSequence, so the row table is a pure function of the grid and fills
identically whatever the worker count or completion order.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .engine import ModelSpec, SimConfig, run_simulation
from .errors import EmptyInput, InvalidConfig

__all__ = [
    "SweepGrid",
    "SweepRow",
    "AggregatePoint",
    "run_sweep",
    "aggregate",
    "derive_seed",
]


@dataclass(frozen=True)
class SweepGrid:
    """Parameter lists to sweep, replicate count and the shared run setup."""

    kind: str
    lambdas: tuple
    xis: tuple = ()
    tps: tuple = ()
    gammas: tuple = ()
    replicates: int = 1
    n_agents: int = 1000
    t_max: int = 10**6
    master_seed: int = 0

    def __post_init__(self):
        for name in ("lambdas", "xis", "gammas"):
            vals = tuple(float(v) for v in getattr(self, name))
            if any(not 0.0 <= v <= 1.0 for v in vals):
                raise InvalidConfig(f"{name} entries must be in [0, 1]")
            object.__setattr__(self, name, vals)
        object.__setattr__(self, "tps", tuple(int(v) for v in self.tps))
        if any(tp < 1 for tp in self.tps):
            raise InvalidConfig("tps entries must be >= 1")
        if self.kind == "ex":
            if not (self.lambdas and self.xis and self.tps) or self.gammas:
                raise InvalidConfig("ex grid needs lambdas, xis and tps (no gammas)")
        elif self.kind == "nx":
            if not (self.lambdas and self.gammas) or self.xis or self.tps:
                raise InvalidConfig("nx grid needs lambdas and gammas (no xis/tps)")
        elif self.kind == "basic":
            if not self.lambdas or self.xis or self.tps or self.gammas:
                raise InvalidConfig("basic grid needs lambdas only")
        else:
            raise InvalidConfig(f"unknown model kind {self.kind!r}")
        if self.replicates < 1:
            raise InvalidConfig("replicates must be >= 1")
        if self.master_seed < 0:
            raise InvalidConfig("master_seed must be nonnegative")

    def points(self):
        """Grid points as (lam, xi, tp, gamma) tuples in canonical order."""
        if self.kind == "ex":
            return [(l, x, tp, 0.0) for l, x, tp in
                    itertools.product(self.lambdas, self.xis, self.tps)]
        if self.kind == "nx":
            return [(l, 0.0, 0, g) for l, g in
                    itertools.product(self.lambdas, self.gammas)]
        return [(l, 0.0, 0, 0.0) for l in self.lambdas]


@dataclass(frozen=True)
class SweepRow:
    """One simulation outcome at one grid point.

    x_ex = 1000*xi/tp for ex rows, x_nx = (1-lambda)*gamma for nx rows;
    the composite parameter of the other family is NaN. f_over_g is NaN
    when g = 0 (flagged undefined, excluded from aggregation).
    """

    model: str
    lam: float
    xi: float
    tp: int
    gamma: float
    x_ex: float
    x_nx: float
    replicate: int
    seed: int
    g: float
    f: float
    f_over_g: float


def derive_seed(master_seed, point_index, replicate) -> int:
    """64-bit run seed, a pure function of (master seed, point, replicate)."""
    ss = np.random.SeedSequence([int(master_seed), int(point_index), int(replicate)])
    return int(ss.generate_state(1, np.uint64)[0])


def _model_for(kind, lam, xi, tp, gamma):
    if kind == "ex":
        return ModelSpec.ex(lam, xi, tp)
    if kind == "nx":
        return ModelSpec.nx(lam, gamma)
    return ModelSpec.basic(lam)


def _run_task(task):
    kind, lam, xi, tp, gamma, n_agents, t_max, point_index, rep, seed = task
    config = SimConfig(
        model=_model_for(kind, lam, xi, tp, gamma),
        n_agents=n_agents,
        t_max=t_max,
        seed=seed,
        checkpoint_times=(),
    )
    rec = run_simulation(config)
    g, f = rec.final_gini, rec.final_flow
    return SweepRow(
        model=kind,
        lam=lam,
        xi=xi,
        tp=tp,
        gamma=gamma,
        x_ex=1000.0 * xi / tp if kind == "ex" else float("nan"),
        x_nx=(1.0 - lam) * gamma if kind == "nx" else float("nan"),
        replicate=rep,
        seed=seed,
        g=g,
        f=f,
        f_over_g=f / g if g > 0 else float("nan"),
    )


def run_sweep(grid: SweepGrid, jobs=1) -> list:
    """One SweepRow per (grid point x replicate), in canonical order
    (point index, then replicate) regardless of ``jobs``."""
    tasks = [
        (grid.kind, lam, xi, tp, gamma, grid.n_agents, grid.t_max,
         pi, rep, derive_seed(grid.master_seed, pi, rep))
        for pi, (lam, xi, tp, gamma) in enumerate(grid.points())
        for rep in range(grid.replicates)
    ]
    if jobs <= 1:
        return [_run_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        chunk = max(1, len(tasks) // (4 * jobs))
        return list(pool.map(_run_task, tasks, chunksize=chunk))


@dataclass(frozen=True)
class AggregatePoint:
    """Per-grid-point replicate statistics (population std, ddof=0).

    f_over_g statistics average the per-replicate ratios; rows with
    undefined f/g (g = 0) are excluded and counted in n_undefined.
    mean_f_over_mean_g is the ratio of the means, kept for comparison.
    """

    model: str
    lam: float
    xi: float
    tp: int
    gamma: float
    x_ex: float
    x_nx: float
    n_replicates: int
    mean_g: float
    std_g: float
    mean_f: float
    std_f: float
    mean_f_over_g: float
    std_f_over_g: float
    mean_f_over_mean_g: float
    n_undefined: int


def aggregate(rows) -> list:
    """Group rows by grid point (first-appearance order) and aggregate."""
    rows = list(rows)
    if not rows:
        raise EmptyInput("no sweep rows to aggregate")
    groups = {}
    for row in rows:
        key = (row.model, row.lam, row.xi, row.tp, row.gamma)
        groups.setdefault(key, []).append(row)
    out = []
    for (model, lam, xi, tp, gamma), grp in groups.items():
        g = np.array([r.g for r in grp])
        f = np.array([r.f for r in grp])
        ratios = np.array([r.f_over_g for r in grp if not np.isnan(r.f_over_g)])
        n_undef = len(grp) - ratios.size
        mean_g = float(g.mean())
        out.append(AggregatePoint(
            model=model, lam=lam, xi=xi, tp=tp, gamma=gamma,
            x_ex=grp[0].x_ex, x_nx=grp[0].x_nx,
            n_replicates=len(grp),
            mean_g=mean_g, std_g=float(g.std()),
            mean_f=float(f.mean()), std_f=float(f.std()),
            mean_f_over_g=float(ratios.mean()) if ratios.size else float("nan"),
            std_f_over_g=float(ratios.std()) if ratios.size else float("nan"),
            mean_f_over_mean_g=float(f.mean() / mean_g) if mean_g > 0 else float("nan"),
            n_undefined=n_undef,
        ))
    return out
