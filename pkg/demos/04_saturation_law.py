"""The central result: flow per unit inequality follows one saturation law.

Sweeps both models over the composite parameter x (redistribution:
xi/(tp*1e-3) with tp fixed at 1000 events; mutual aid: (1-lam)*gamma) and
fits f/g with a*(1-exp(-b*x)). Both models land near a=2, b=5, i.e. the
same curve governs tax-like redistribution and voluntary mutual aid.

Replicates are kept small here for speed; raise REPLICATES for smoother
points.
"""

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from kinex import SweepGrid, aggregate, fit_logarithmic, fit_saturation, run_sweep

OUT = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(OUT, exist_ok=True)

REPLICATES = 3
X = np.geomspace(0.02, 1.0, 10)

ex_grid = SweepGrid(kind="ex", lambdas=(0.25,), xis=tuple(X), tps=(1000,),
                    replicates=REPLICATES, master_seed=7)
nx_grid = SweepGrid(kind="nx", lambdas=(0.25,),
                    gammas=tuple(x / 0.75 for x in X[:-1]),
                    replicates=REPLICATES, master_seed=8)
nx_cap = SweepGrid(kind="nx", lambdas=(0.0,), gammas=(1.0,),
                   replicates=REPLICATES, master_seed=9)

print(f"running {2 * 10 * REPLICATES} simulations of 10^6 events each ...")
ex_points = aggregate(run_sweep(ex_grid, jobs=2))
nx_points = aggregate(run_sweep(nx_grid, jobs=2) + run_sweep(nx_cap, jobs=2))

fig, (axg, axf) = plt.subplots(1, 2, figsize=(11, 4.2))
for name, points, xattr in (("ex", ex_points, "x_ex"), ("nx", nx_points, "x_nx")):
    x = np.array([getattr(p, xattr) for p in points])
    g = np.array([p.mean_g for p in points])
    fg = np.array([p.mean_f_over_g for p in points])
    order = np.argsort(x)
    x, g, fg = x[order], g[order], fg[order]

    sat = fit_saturation(np.column_stack((x, fg)))
    logfit = fit_logarithmic(np.column_stack((x, fg)))
    a, b = sat.coefficients["a"], sat.coefficients["b"]
    print(f"{name}: f/g ~ {a:.2f} * (1 - exp(-{b:.2f} x))   R^2 = {sat.r_squared:.3f}")
    print(f"    log form: {logfit.coefficients['slope']:.3f} ln x + "
          f"{logfit.coefficients['intercept']:.2f}   R^2 = {logfit.r_squared:.3f}")

    axg.plot(x, g, "o-", label=name)
    axf.plot(x, fg, "o", label=f"{name} data")
    xs = np.geomspace(x.min(), 1.0, 200)
    axf.plot(xs, a * (1 - np.exp(-b * xs)), "--",
             label=f"{name} fit: {a:.2f}(1-e^(-{b:.1f}x))")

axg.axhline(0.4, color="gray", lw=0.8, ls=":", label="warning level g=0.4")
axg.set_xscale("log")
axg.set_xlabel("x")
axg.set_ylabel("mean Gini g")
axg.set_title("inequality vs composite parameter")
axg.legend(fontsize=8)
axf.set_xscale("log")
axf.set_xlabel("x")
axf.set_ylabel("mean f/g")
axf.set_title("flow per unit inequality saturates")
axf.legend(fontsize=8)
fig.tight_layout()
fig.savefig(os.path.join(OUT, "saturation_law.png"), dpi=120)
print(f"\nwrote {OUT}/saturation_law.png")
