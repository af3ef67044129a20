import numpy as np
import pytest

from kinex import (
    EmptyInput,
    InvalidConfig,
    SweepGrid,
    SweepRow,
    aggregate,
    derive_seed,
    run_sweep,
)


def small_grid(**kwargs):
    defaults = dict(kind="nx", lambdas=(0.25,), gammas=(0.2, 0.8),
                    replicates=2, n_agents=60, t_max=1500, master_seed=11)
    defaults.update(kwargs)
    return SweepGrid(**defaults)


def as_cells(rows):
    # NaN-safe equality: compare the emitted string form
    from kinex.io import format_cell

    return [
        tuple(format_cell(getattr(r, name)) for name in
              ("model", "lam", "xi", "tp", "gamma", "x_ex", "x_nx",
               "replicate", "seed", "g", "f", "f_over_g"))
        for r in rows
    ]


def row(g=0.5, f=0.6, **kwargs):
    defaults = dict(model="nx", lam=0.25, xi=0.0, tp=0, gamma=0.5,
                    x_ex=float("nan"), x_nx=0.375, replicate=0, seed=1,
                    g=g, f=f, f_over_g=f / g if g > 0 else float("nan"))
    defaults.update(kwargs)
    return SweepRow(**defaults)


# --- run_sweep ---------------------------------------------------------------

def test_single_point_replicates_share_params_distinct_seeds():
    rows = run_sweep(small_grid(gammas=(0.5,), replicates=3))
    assert len(rows) == 3
    assert {(r.lam, r.gamma) for r in rows} == {(0.25, 0.5)}
    assert len({r.seed for r in rows}) == 3
    assert [r.replicate for r in rows] == [0, 1, 2]


def test_sweep_deterministic():
    grid = small_grid()
    assert as_cells(run_sweep(grid)) == as_cells(run_sweep(grid))


def test_sweep_parallel_matches_serial():
    grid = small_grid(replicates=3)
    assert as_cells(run_sweep(grid, jobs=1)) == as_cells(run_sweep(grid, jobs=3))


def test_sweep_row_order_is_canonical():
    rows = run_sweep(small_grid(gammas=(0.1, 0.9), replicates=2))
    assert [(r.gamma, r.replicate) for r in rows] == [
        (0.1, 0), (0.1, 1), (0.9, 0), (0.9, 1)]


def test_ex_rows_carry_exact_composite_parameter():
    grid = SweepGrid(kind="ex", lambdas=(0.25,), xis=(0.5,), tps=(40,),
                     replicates=1, n_agents=60, t_max=400, master_seed=3)
    rows = run_sweep(grid)
    assert rows[0].x_ex == 1000.0 * 0.5 / 40
    assert np.isnan(rows[0].x_nx)
    assert rows[0].tp == 40


def test_nx_rows_composite_parameter():
    rows = run_sweep(small_grid(gammas=(0.4,), replicates=1))
    assert rows[0].x_nx == (1.0 - 0.25) * 0.4
    assert np.isnan(rows[0].x_ex)


def test_derive_seed_is_stable_and_spreads():
    assert derive_seed(7, 0, 0) == derive_seed(7, 0, 0)
    seeds = {derive_seed(7, pi, rep) for pi in range(5) for rep in range(5)}
    assert len(seeds) == 25


# --- grid validation -----------------------------------------------------------

@pytest.mark.parametrize("kwargs", [
    dict(kind="nx", lambdas=(), gammas=(0.5,)),
    dict(kind="nx", lambdas=(0.2,), gammas=()),
    dict(kind="nx", lambdas=(0.2,), gammas=(0.5,), xis=(0.1,)),
    dict(kind="ex", lambdas=(0.2,), xis=(0.5,), tps=()),
    dict(kind="ex", lambdas=(0.2,), xis=(1.5,), tps=(10,)),
    dict(kind="ex", lambdas=(0.2,), xis=(0.5,), tps=(0,)),
    dict(kind="basic", lambdas=(0.2,), gammas=(0.1,)),
    dict(kind="yardsale", lambdas=(0.2,)),
    dict(kind="basic", lambdas=(0.2,), replicates=0),
])
def test_grid_rejects_invalid_shapes(kwargs):
    with pytest.raises(InvalidConfig):
        SweepGrid(**kwargs)


def test_grid_points_cartesian_order():
    grid = SweepGrid(kind="ex", lambdas=(0.0, 0.5), xis=(0.2, 0.8), tps=(10,),
                     n_agents=10, t_max=10)
    assert grid.points() == [
        (0.0, 0.2, 10, 0.0), (0.0, 0.8, 10, 0.0),
        (0.5, 0.2, 10, 0.0), (0.5, 0.8, 10, 0.0)]


# --- aggregate ------------------------------------------------------------------

def test_aggregate_means():
    points = aggregate([row(g=0.4, replicate=0), row(g=0.5, replicate=1)])
    assert len(points) == 1
    assert points[0].mean_g == pytest.approx(0.45)
    assert points[0].n_replicates == 2


def test_aggregate_single_row_std_zero():
    points = aggregate([row()])
    assert points[0].std_g == 0.0
    assert points[0].std_f_over_g == 0.0


def test_aggregate_excludes_undefined_ratio():
    points = aggregate([row(g=0.5, f=0.6), row(g=0.0, f=0.6)])
    assert points[0].n_undefined == 1
    assert points[0].mean_f_over_g == pytest.approx(1.2)


def test_aggregate_ratio_of_means_column():
    points = aggregate([row(g=0.4, f=0.4), row(g=0.6, f=0.8)])
    # per-replicate mean: (1.0 + 4/3)/2; ratio of means: 0.6/0.5
    assert points[0].mean_f_over_g == pytest.approx((1.0 + 0.8 / 0.6) / 2)
    assert points[0].mean_f_over_mean_g == pytest.approx(0.6 / 0.5)


def test_aggregate_groups_by_grid_point():
    points = aggregate([row(gamma=0.2, x_nx=0.15), row(gamma=0.8, x_nx=0.6)])
    assert len(points) == 2
    assert [p.gamma for p in points] == [0.2, 0.8]


def test_aggregate_empty_raises():
    with pytest.raises(EmptyInput):
        aggregate([])
