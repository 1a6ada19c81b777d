"""Continuous relaxation with part sizes proportional to their weights.

With real part sizes the size of part ``i`` equals its weight, and the
objective becomes ``F(a) = sum a_i ln a_i`` under ``sum a = 1``,
``sum a^2 = 1/s`` and a floor ``a_i >= delta``.  Optima take at most two
values above the floor.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .kkt import min_parts

NEG_INF = -math.inf
FD_STEP = 1e-5


def xlogy(a: float, b: float) -> float:
    """``a ln b`` with ``0 ln 0 = 0`` and ``a ln 0 = -inf`` for ``a != 0``."""
    if b == 0.0:
        return 0.0 if a == 0.0 else NEG_INF
    return a * math.log(b)


def entropy_like(alphas) -> float:
    """``F = sum a_i ln a_i``; ``-inf`` if any coordinate is negative."""
    total = 0.0
    for a in alphas:
        if a < 0:
            return NEG_INF
        total += xlogy(a, a)
    return total


def reduced_density(s: float, delta: float, ell: int) -> float:
    """Density of the unpinned block once ``ell`` coordinates sit at ``delta``."""
    denom = 1.0 - ell * s * delta * delta
    if denom <= 0:
        raise ValueError(f"1 - ell*s*delta^2 = {denom} must be positive")
    return s * (1.0 - ell * delta) ** 2 / denom


@dataclass(frozen=True)
class RelaxedSolution:
    k: int
    delta: float
    ell: int
    s_star: float
    alphas: tuple[float, ...]
    F: float


def relaxed_solve(s: float, k: int, delta: float = 0.0) -> RelaxedSolution:
    """Best two-value configuration over all pinned counts ``ell``.

    Returns the pinned count, ``s*`` and the weights sorted nonincreasing.
    """
    if not s > 1:
        raise ValueError("s must exceed 1")
    if k < min_parts(s):
        raise ValueError(f"k={k} is below ceil(s)")
    if not (0 <= delta < 1.0 / k):
        raise ValueError("delta must lie in [0, 1/k)")
    best = None
    # pinning lowers s*, so ell may run past k - ceil(s); m < s* fails the discriminant
    for ell in range(0, k):
        try:
            s_star = reduced_density(s, delta, ell)
        except ValueError:
            continue
        m = k - ell
        free = 1.0 - ell * delta
        floor = delta / free
        if m == 1:
            if abs(s_star - 1.0) > 1e-12:
                continue
            x = y = 1.0
        else:
            disc = (m - 1) * (m / s_star - 1.0)
            if disc < -1e-12:
                continue
            d = math.sqrt(max(disc, 0.0)) / ((m - 1) * m)
            x = 1.0 / m + d
            y = 1.0 - (m - 1) * x
        # the last unpinned coordinate must stay strictly above the floor
        if y <= floor + 1e-12:
            continue
        alphas = tuple([free * x] * (m - 1) + [free * y] + [delta] * ell)
        F = entropy_like(alphas)
        if best is None or F > best.F:
            best = RelaxedSolution(k, delta, ell, s_star, alphas, F)
    if best is None:
        raise ValueError(f"no two-value solution for s={s}, k={k}, delta={delta}")
    return best


def relaxed_bound(s: float, delta: float, ell: int) -> float:
    """Upper bound on F when ``ell`` coordinates are pinned at ``delta``."""
    s_star = reduced_density(s, delta, ell)
    free = 1.0 - ell * delta
    return free * (math.log(free) - math.log(s_star)) + ell * xlogy(delta, delta)


# k = 3 parametrization


def _rho(s: float) -> float:
    if not (1 < s <= 3):
        raise ValueError("the k=3 parametrization needs 1 < s <= 3")
    return math.sqrt((3.0 - s) / (3.0 * s))


def theta_param(s: float, theta: float) -> tuple[float, float, float]:
    """Point on the circle ``sum = 1``, ``sum of squares = 1/s``."""
    rho = _rho(s)
    c = rho / math.sqrt(6) * math.cos(theta)
    d = rho / math.sqrt(2) * math.sin(theta)
    return (1 / 3 + c + d, 1 / 3 + c - d, 1 / 3 - 2 * c)


def f_theta(s: float, theta: float) -> float:
    return entropy_like(theta_param(s, theta))


def f_theta_derivatives(s: float, theta: float) -> tuple[float, float]:
    """Exact ``(F'(theta), F''(theta))`` from the parametrization.

    Used where finite differences drown in rounding (``s`` near 3, where
    ``F''`` is of order ``rho^3``).
    """
    rho = _rho(s)
    a = theta_param(s, theta)
    u, v = rho / math.sqrt(6), rho / math.sqrt(2)
    ct, st = math.cos(theta), math.sin(theta)
    da = (-u * st + v * ct, -u * st - v * ct, 2 * u * st)
    d2a = (-u * ct - v * st, -u * ct + v * st, 2 * u * ct)
    d1 = sum(p * math.log(x) for p, x in zip(da, a))
    d2 = sum(p * p / x + pp * math.log(x) for p, pp, x in zip(da, d2a, a))
    return d1, d2


def theta0(s: float, delta: float = 0.0) -> float:
    """Left end of the admissible arc: ``a_3(theta0) = delta`` or 0."""
    rho = _rho(s)
    if 1 / 3 - 2 * rho / math.sqrt(6) > delta:
        return 0.0
    g = lambda t: theta_param(s, t)[2] - delta
    return brentq(g, 0.0, math.pi / 3, xtol=1e-15)


@dataclass(frozen=True)
class ThetaProfile:
    s: float
    points: list[tuple[float, float]]
    d1: float  # central-difference F'(pi/3)
    d2: float  # central-difference F''(pi/3)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["theta", "F"])
        for t, f in self.points:
            w.writerow([f"{t:.12g}", f"{f:.12g}"])
        return buf.getvalue()


def f_theta_profile(s: float, grid: int = 64, start: float = 0.0, h: float = FD_STEP) -> ThetaProfile:
    """F sampled on ``[start, pi/3]``; points with a nonpositive weight are skipped."""
    if grid < 3:
        raise ValueError("grid must be at least 3")
    _rho(s)
    pts = []
    for t in np.linspace(start, math.pi / 3, grid):
        a = theta_param(s, float(t))
        if min(a) <= 0:
            continue
        pts.append((float(t), entropy_like(a)))
    c = math.pi / 3
    fp, f0, fm = f_theta(s, c + h), f_theta(s, c), f_theta(s, c - h)
    d1 = (fp - fm) / (2 * h)
    d2 = (fp - 2 * f0 + fm) / (h * h)
    return ThetaProfile(s, pts, d1, d2)
