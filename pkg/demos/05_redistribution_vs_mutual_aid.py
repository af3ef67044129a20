"""Trading redistribution for mutual aid at equal flow-per-inequality.

Equating the two composite parameters gives the transfer rate xi that a
tax system needs, at period tp, to match a mutual-aid economy running at
saving rate lam and contribution rate gamma. Past xi=1 no transfer rate
suffices: the period is too long.
"""

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from kinex import xi_gamma_equivalence

OUT = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(OUT, exist_ok=True)

LAM = 0.25
gammas = np.linspace(0.0, 1.0, 101)

fig, ax = plt.subplots(figsize=(6.5, 4.5))
for tp in (625, 1250, 2500, 5000):
    xi = [xi_gamma_equivalence(LAM, tp, g).xi for g in gammas]
    raw = [xi_gamma_equivalence(LAM, tp, g).xi_raw for g in gammas]
    ax.plot(gammas, xi, label=f"tp={tp}")
    ceiling = next((g for g, r in zip(gammas, raw) if r > 1.0), None)
    note = f" (xi hits 1 at gamma={ceiling:.2f})" if ceiling else ""
    print(f"tp={tp:>5}: xi(gamma=0.28) = "
          f"{xi_gamma_equivalence(LAM, tp, 0.28).xi:.3f}{note}")

target = xi_gamma_equivalence(LAM, 2500, 0.267)
print(f"\nworked target: lam={LAM}, tp=2500, gamma=0.267 -> xi={target.xi:.3f}")
ax.plot([0.267], [target.xi], "ko", ms=8, mfc="none", label="target x=0.2")
ax.set_xlabel("surplus contribution rate gamma")
ax.set_ylabel("equivalent transfer rate xi")
ax.set_title(f"redistribution matching mutual aid (lam={LAM})")
ax.legend(fontsize=8)
fig.tight_layout()
fig.savefig(os.path.join(OUT, "xi_gamma_equivalence.png"), dpi=120)
print(f"wrote {OUT}/xi_gamma_equivalence.png")
