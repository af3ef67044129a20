"""Walk through the three pairwise exchange rules on worked numbers.

Two agents with wealths 1 and 3, saving rate 0.25. Shows what each rule
moves, that every rule conserves the pair total, and that the mutual-aid
rule interpolates between the equivalent-exchange and basic rules.
"""

import numpy as np

from kinex import WealthState, basic_step, ex_step, gini, nx_step, redistribute

m_i, m_j, lam = 1.0, 3.0, 0.25

print(f"agents: m_i={m_i}, m_j={m_j}, saving rate lam={lam}\n")

print("basic rule: both pool all non-saved wealth, split at ratio eps")
for eps in (0.0, 0.5, 1.0):
    out = basic_step(m_i, m_j, lam, eps)
    print(f"  eps={eps:3}: -> ({out.new_i:.4f}, {out.new_j:.4f})"
          f"   volume={out.volume:.4f}")

print("\nequivalent rule: stake limited to the poorer agent's non-saved wealth")
for eps in (0.0, 0.5, 1.0 - 2**-53):
    out = ex_step(m_i, m_j, lam, eps)
    print(f"  eps={eps:.3f}: -> ({out.new_i:.4f}, {out.new_j:.4f})"
          f"   volume={out.volume:.4f}")

print("\nmutual-aid rule: the wealthier adds gamma of its non-saved surplus")
for gamma in (0.0, 0.5, 1.0):
    out = nx_step(m_i, m_j, lam, gamma, 0.5)
    print(f"  gamma={gamma:3}: eps=0.5 -> ({out.new_i:.4f}, {out.new_j:.4f})"
          f"   volume={out.volume:.4f}")
print("  gamma=0 matches the equivalent rule, gamma=1 the basic rule.")

rng = np.random.default_rng(1)
worst = 0.0
for _ in range(10**4):
    a, b = rng.exponential(1.0, 2)
    out = nx_step(a, b, rng.random(), rng.random(), rng.random())
    worst = max(worst, abs(out.new_i + out.new_j - (a + b)) / (a + b))
print(f"\nconservation over 10^4 random mutual-aid events: "
      f"worst relative error {worst:.2e}")

state = WealthState([0.0, 1.0, 2.0])
taxed = redistribute(state, 0.5)
print(f"\nredistribution at xi=0.5: {state.wealth} -> {taxed.wealth}")
print(f"gini {gini(state):.4f} -> {gini(taxed):.4f} (total conserved: "
      f"{taxed.total():.12f})")
