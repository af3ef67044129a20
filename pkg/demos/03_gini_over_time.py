"""Gini index versus time for both models.

Without redistribution (xi=0) or mutual aid (gamma=0) the equivalent
exchange drives g toward 1: all wealth ends in one agent's hands. Shorter
redistribution periods and larger surplus contribution rates hold g down;
gamma=0.5 and gamma=1 end up nearly indistinguishable.
"""

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from kinex import ModelSpec, SimConfig, run_simulation

OUT = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(OUT, exist_ok=True)

N, T = 1000, 10**6

ex_cases = [("xi=0", ModelSpec.ex(0.25, 0.0, T))] + [
    (f"xi=0.5, tp=1e{k}", ModelSpec.ex(0.25, 0.5, 10**k)) for k in (5, 4, 3)
]
nx_cases = [(f"gamma={g}", ModelSpec.nx(0.25, g)) for g in (0.0, 0.1, 0.5, 1.0)]

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 4.2), sharey=True)
for ax, cases, title in ((ax1, ex_cases, "equivalent exchange + redistribution"),
                         (ax2, nx_cases, "mutual-aid exchange")):
    for label, model in cases:
        record = run_simulation(SimConfig(model=model, n_agents=N, t_max=T, seed=3))
        ax.plot(record.checkpoint_t, record.checkpoint_gini, label=label)
        print(f"{title[:12]:14} {label:16} final g = {record.final_gini:.3f}")
    ax.set_xscale("log")
    ax.set_xlabel("t (exchange events)")
    ax.set_title(title)
    ax.legend(fontsize=8)
ax1.set_ylabel("Gini index g")
fig.tight_layout()
fig.savefig(os.path.join(OUT, "gini_over_time.png"), dpi=120)
print(f"\nwrote {OUT}/gini_over_time.png")
