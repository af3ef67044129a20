"""Inequality and economic-flow measurement.

Gini index from the rank-weighted sum of the ascending-sorted wealth
vector, the matching Lorenz curve, a running accumulator for the total
exchange (economic flow), and wealth histograms with linear or logarithmic
binning.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ZeroTotalWealth
from .exchange import PairOutcome, WealthState

__all__ = [
    "gini",
    "lorenz",
    "FlowAccumulator",
    "accumulate_flow",
    "Histogram",
    "histogram",
]


def _wealth_vector(state):
    w = state.wealth if isinstance(state, WealthState) else np.asarray(state, dtype=float)
    if w.ndim != 1 or w.size < 2:
        raise ValueError("need a 1-d wealth vector with N >= 2")
    if np.any(w < 0):
        raise ValueError("wealth values must be nonnegative")
    return w


def gini(state) -> float:
    """Gini index g of a wealth vector (or WealthState).

    g = 2*sum(i*r_i) / (N*sum(r_i)) - (N+1)/N with r_i the ascending sort
    and i the 1-based rank. 0 on uniform vectors, (N-1)/N when a single
    agent holds everything.
    """
    r = np.sort(_wealth_vector(state))
    total = float(r.sum())  # summed in sorted order: permutation-invariant
    if total == 0.0:
        raise ZeroTotalWealth("Gini index undefined for zero total wealth")
    n = r.size
    ranks = np.arange(1, n + 1, dtype=float)
    return float(2.0 * np.dot(ranks, r) / (n * total) - (n + 1) / n)


def lorenz(state) -> np.ndarray:
    """Lorenz curve as an (N+1, 2) array of (population share, wealth share)
    points from (0, 0) to (1, 1)."""
    r = np.sort(_wealth_vector(state))
    cum = np.cumsum(r)
    if cum[-1] == 0.0:
        raise ZeroTotalWealth("Lorenz curve undefined for zero total wealth")
    n = r.size
    pop = np.arange(n + 1) / n
    share = np.concatenate(([0.0], cum)) / cum[-1]
    return np.column_stack((pop, share))


@dataclass(frozen=True)
class FlowAccumulator:
    """Running sum of per-event exchange volume over n_events events.

    The finalized total exchange is f = volume_sum / (2 * n_events): the
    denominator normalizes by the amount two agents would move if each
    staked one unit per event.
    """

    volume_sum: float = 0.0
    n_events: int = 0

    def finalize(self) -> float:
        if self.n_events == 0:
            raise ValueError("cannot finalize flow over zero exchange events")
        return self.volume_sum / (2.0 * self.n_events)


def accumulate_flow(acc: FlowAccumulator, outcome: PairOutcome) -> FlowAccumulator:
    """Fold one exchange outcome into the accumulator."""
    return FlowAccumulator(acc.volume_sum + outcome.volume, acc.n_events + 1)


@dataclass(frozen=True)
class Histogram:
    """Binned wealth counts. Edges ascend; bin k is half-open
    [edges[k], edges[k+1]). For the logarithmic scheme the first bin is an
    underflow bin starting at 0 that collects zero-wealth agents."""

    bin_edges: np.ndarray
    counts: np.ndarray
    scheme: str


def histogram(state, scheme="linear", n_bins=50, lo=None, hi=None) -> Histogram:
    """Histogram of a wealth vector.

    scheme='linear' bins [lo, hi) uniformly (defaults: 0 to just above the
    max, so every agent is counted). scheme='logarithmic' uses
    geometrically spaced bins from the smallest positive wealth (or lo),
    preceded by a dedicated [0, first_edge) underflow bin.
    """
    w = _wealth_vector(state)
    if scheme not in ("linear", "logarithmic"):
        raise ValueError(f"unknown scheme {scheme!r}")
    if n_bins < 1:
        raise ValueError("n_bins must be >= 1")
    wmax = float(w.max())

    if scheme == "linear":
        lo = 0.0 if lo is None else float(lo)
        if hi is None:
            hi = np.nextafter(wmax, np.inf) if wmax > lo else lo + 1.0
        edges = np.linspace(lo, float(hi), n_bins + 1)
    else:
        positive = w[w > 0]
        if lo is None:
            lo = float(positive.min()) if positive.size else 1.0
        if hi is None:
            hi = np.nextafter(wmax, np.inf) if wmax > lo else float(lo) * 2.0
        edges = np.concatenate(([0.0], np.geomspace(float(lo), float(hi), n_bins + 1)))

    if np.any(w < edges[0]) or np.any(w >= edges[-1]):
        raise ValueError("histogram range does not cover all wealth values")
    idx = np.searchsorted(edges, w, side="right") - 1
    counts = np.bincount(idx, minlength=edges.size - 1)
    return Histogram(edges, counts, scheme)
