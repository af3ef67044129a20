"""Least-squares fits for the two curve families used in the analysis.

* saturation:   y = a * (1 - exp(-b*x)), a recovered in closed form for
  fixed b (the model is linear in a), b located on a log grid and refined
  by golden section.
* logarithmic:  y = slope * ln(x) + intercept, ordinary least squares.

Plus the redistribution/mutual-aid equivalence: the transfer rate xi that
matches a given (lam, gamma) mutual-aid setting at redistribution period
tp, from equating the two composite parameters xi/(tp*1e-3) = (1-lam)*gamma.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInput, NonpositiveX

__all__ = [
    "FitResult",
    "fit_saturation",
    "fit_logarithmic",
    "XiEquivalence",
    "xi_gamma_equivalence",
]

_B_GRID = np.geomspace(1e-3, 1e3, 200)
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class FitResult:
    """Fitted family with coefficients, R^2 and residual sum of squares.

    ``degenerate`` marks fits whose R^2 is undefined (constant y); their
    r_squared is NaN.
    """

    family: str
    coefficients: dict
    r_squared: float
    rss: float
    n_points: int
    degenerate: bool = False


def _as_points(points):
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise DegenerateInput("points must be a sequence of (x, y) pairs")
    return pts[:, 0], pts[:, 1]


def _sat_profile(b, x, y):
    # optimal amplitude for fixed b: a = sum(y*u) / sum(u*u), u = 1-e^(-bx)
    u = 1.0 - np.exp(-b * x)
    a = float(np.dot(y, u) / np.dot(u, u))
    r = y - a * u
    return float(np.dot(r, r)), a


def fit_saturation(points) -> FitResult:
    """Fit y = a*(1 - exp(-b*x)) by profiling out a and scanning b.

    Requires >= 3 points with x >= 0 and at least two distinct x. b is
    scanned on a 200-point log grid over [1e-3, 1e3], then refined by
    golden section well past relative width 1e-6.
    """
    x, y = _as_points(points)
    if x.size < 3:
        raise DegenerateInput("saturation fit needs at least 3 points")
    if np.any(x < 0):
        raise DegenerateInput("saturation fit needs x >= 0")
    if np.unique(x).size < 2:
        raise DegenerateInput("saturation fit needs at least two distinct x")

    ss_tot = float(np.sum((y - y.mean()) ** 2))
    if np.all(y == 0.0):
        return FitResult("saturation", {"a": 0.0, "b": float("nan")},
                         float("nan"), 0.0, x.size, degenerate=True)

    sses = [_sat_profile(b, x, y)[0] for b in _B_GRID]
    k = int(np.argmin(sses))
    lo = _B_GRID[max(k - 1, 0)]
    hi = _B_GRID[min(k + 1, len(_B_GRID) - 1)]
    while (hi - lo) > 1e-9 * 0.5 * (hi + lo):
        c = hi - _GOLDEN * (hi - lo)
        d = lo + _GOLDEN * (hi - lo)
        if _sat_profile(c, x, y)[0] <= _sat_profile(d, x, y)[0]:
            hi = d
        else:
            lo = c
    b = 0.5 * (lo + hi)
    rss, a = _sat_profile(b, x, y)
    if ss_tot == 0.0:
        return FitResult("saturation", {"a": a, "b": b}, float("nan"), rss,
                         x.size, degenerate=True)
    return FitResult("saturation", {"a": a, "b": b}, 1.0 - rss / ss_tot, rss, x.size)


def fit_logarithmic(points) -> FitResult:
    """Ordinary least squares of y on ln(x). All x must be positive."""
    x, y = _as_points(points)
    if np.any(x <= 0):
        raise NonpositiveX("logarithmic fit needs x > 0")
    if x.size < 2 or np.unique(x).size < 2:
        raise DegenerateInput("logarithmic fit needs two distinct x")
    slope, intercept = np.polyfit(np.log(x), y, 1)
    r = y - (slope * np.log(x) + intercept)
    rss = float(np.dot(r, r))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    coeffs = {"slope": float(slope), "intercept": float(intercept)}
    if ss_tot == 0.0:
        return FitResult("logarithmic", coeffs, float("nan"), rss, x.size,
                         degenerate=True)
    return FitResult("logarithmic", coeffs, 1.0 - rss / ss_tot, rss, x.size)


@dataclass(frozen=True)
class XiEquivalence:
    """Transfer rate equivalent to a mutual-aid setting; ``clamped`` flags
    that the raw value fell outside [0, 1]."""

    xi: float
    xi_raw: float
    clamped: bool


def xi_gamma_equivalence(lam, tp, gamma) -> XiEquivalence:
    """xi such that xi/(tp*1e-3) equals (1-lam)*gamma, clamped to [0, 1]."""
    raw = (1.0 - lam) * gamma * tp * 1e-3
    xi = min(max(raw, 0.0), 1.0)
    return XiEquivalence(xi=xi, xi_raw=raw, clamped=xi != raw)
