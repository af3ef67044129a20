"""Pairwise exchange rules and global redistribution.

Three conservative two-agent rules operate on wealths (m_i, m_j) with a
common saving rate lam and one uniform draw eps in [0, 1):

* ``basic_step``  -- both agents pool all non-saved wealth and split it
  randomly.
* ``ex_step``     -- equivalent exchange: the stake is set by the poorer
  agent's non-saved wealth, so both sides risk the same amount.
* ``nx_step``     -- nonequivalent mutual-aid exchange: the wealthier agent
  additionally stakes a fraction gamma of its non-saved surplus over the
  poorer one.

``redistribute`` is the global tax-like transfer applied between exchange
events: every agent gives up a fraction xi of its wealth, which is shared
equally among the other N-1 agents.

All functions are pure; every step conserves m_i + m_j exactly up to
floating-point rounding, and nonnegative inputs yield nonnegative outputs
(a final clamp absorbs sub-ulp rounding at the lam=0 extremes).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidConfig

__all__ = [
    "WealthState",
    "ExchangeParams",
    "PairOutcome",
    "basic_step",
    "ex_step",
    "nx_step",
    "redistribute",
]


@dataclass(frozen=True)
class PairOutcome:
    """Result of one pairwise exchange.

    ``volume`` is the per-event numerand of the total-exchange accumulator:
    the combined amount both agents put on the table.
    """

    new_i: float
    new_j: float
    volume: float


@dataclass(frozen=True)
class ExchangeParams:
    """Model parameters: saving rate lam, surplus contribution rate gamma,
    transfer rate xi and redistribution period tp (in exchange events).

    Parameters a given model does not use stay at their neutral defaults.
    """

    lam: float
    gamma: float = 0.0
    xi: float = 0.0
    tp: int = 1

    def __post_init__(self):
        for name in ("lam", "gamma", "xi"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise InvalidConfig(f"{name} must be in [0, 1], got {v!r}")
        if self.tp < 1:
            raise InvalidConfig(f"tp must be >= 1, got {self.tp!r}")


class WealthState:
    """Vector of N nonnegative agent wealths with conserved-total bookkeeping.

    The recorded initial total allows later conservation checks at relative
    1e-9.
    """

    def __init__(self, wealth, initial_total=None):
        w = np.asarray(wealth, dtype=float)
        if w.ndim != 1 or w.size < 2:
            raise InvalidConfig("wealth must be a 1-d vector with N >= 2")
        if np.any(w < 0):
            raise InvalidConfig("wealth values must be nonnegative")
        self.wealth = w
        self.initial_total = float(w.sum()) if initial_total is None else float(initial_total)

    @property
    def n_agents(self) -> int:
        return self.wealth.size

    def total(self) -> float:
        return float(self.wealth.sum())

    def conserved(self, rel_tol=1e-9) -> bool:
        ref = abs(self.initial_total)
        return abs(self.total() - self.initial_total) <= rel_tol * max(ref, 1.0)

    def __repr__(self):
        return f"WealthState(n={self.n_agents}, total={self.total():.6g})"


def basic_step(m_i, m_j, lam, eps) -> PairOutcome:
    """Pool all non-saved wealth of both agents and split it at ratio eps.

    new_i = lam*m_i + eps*(1-lam)*(m_i+m_j), symmetrically for j.
    """
    pool = (1.0 - lam) * (m_i + m_j)
    new_i = lam * m_i + eps * pool
    new_j = lam * m_j + (1.0 - eps) * pool
    return PairOutcome(
        new_i if new_i > 0.0 else 0.0,
        new_j if new_j > 0.0 else 0.0,
        pool,
    )


def ex_step(m_i, m_j, lam, eps) -> PairOutcome:
    """Equivalent exchange: both agents stake the poorer one's non-saved
    wealth, then split the pot at ratio eps."""
    mn = m_i if m_i < m_j else m_j
    stake = (1.0 - lam) * mn
    new_i = m_i - stake + 2.0 * eps * stake
    new_j = m_j - stake + 2.0 * (1.0 - eps) * stake
    return PairOutcome(
        new_i if new_i > 0.0 else 0.0,
        new_j if new_j > 0.0 else 0.0,
        2.0 * stake,
    )


def nx_step(m_i, m_j, lam, gamma, eps) -> PairOutcome:
    """Mutual-aid exchange: the poorer agent stakes its non-saved wealth,
    the wealthier adds a fraction gamma of its non-saved surplus.

    Reduces to ``ex_step`` at gamma=0 and to ``basic_step`` at gamma=1.
    Roles (poor/wealthy) are decided from the entry wealths; a tie makes
    both branches identical.
    """
    if m_i < m_j:
        mn, mx = m_i, m_j
    else:
        mn, mx = m_j, m_i
    pool = (1.0 - lam) * (2.0 * mn + gamma * (mx - mn))
    if m_i <= m_j:
        new_i = m_i - (1.0 - lam) * mn + eps * pool
        new_j = m_j - (1.0 - lam) * (mn + gamma * (mx - mn)) + (1.0 - eps) * pool
    else:
        new_i = m_i - (1.0 - lam) * (mn + gamma * (mx - mn)) + eps * pool
        new_j = m_j - (1.0 - lam) * mn + (1.0 - eps) * pool
    return PairOutcome(
        new_i if new_i > 0.0 else 0.0,
        new_j if new_j > 0.0 else 0.0,
        pool,
    )


def redistribute(state: WealthState, xi) -> WealthState:
    """Simultaneous global transfer: each agent keeps (1-xi) of its wealth
    and receives xi/(N-1) of everyone else's. Conserves the total."""
    if not 0.0 <= xi <= 1.0:
        raise InvalidConfig(f"xi must be in [0, 1], got {xi!r}")
    w = state.wealth
    new = (1.0 - xi) * w + xi * (w.sum() - w) / (w.size - 1)
    return WealthState(new, initial_total=state.initial_total)
