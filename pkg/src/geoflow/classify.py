"""Finite versus infinite lifetime of radial flows.

Near the core (r -> 0) every speed built from elementary symmetric
polynomials behaves like a power of coth r. If h ~ (coth r)^e then the
lifetime T0 = int_0^r0 dr / h(r) is finite exactly when e >= 0 (for integer
e). Two independent routes decide this: the exponent table for S_m/S_l and
a direct quadrature of 1/h with dyadic panels toward the singular endpoint.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import quadrature
from .constants import (
    EXPONENT_GRID,
    INFINITE_EXPONENT_CUTOFF,
    PANEL_MAX,
    PANEL_SLACK,
    PANEL_STREAK,
    PANEL_TOL,
    QUAD_ABS_TOL,
    QUAD_DELTA_MAX,
    QUAD_REL_TOL,
)
from .errors import ClassificationError, DegenerateSpeedError
from .radial_flow import FlowProblem, radial_speed_array
from .symfun import SpeedExpr, parse_speed
from .tube import TubeConfig

DIRECTION_NOTE = (
    "Infinite lifetime is decided by the sign of the coth-exponent of S_m/S_l "
    "(infinite iff |m-(n-k)| > |l-(n-k)|), confirmed by quadrature of 1/h. "
    "The same criterion is sometimes quoted with '<'; that direction contradicts "
    "the asymptotic case table and the cases k=n,m=1,l=0 and k=n-1,m=0,l=1, "
    "which both run forever."
)


@dataclass(frozen=True)
class LifetimeClassification:
    exponent: float
    exponent_source: str  # exact-table | numeric-estimate
    verdict: str  # infinite | finite | degenerate
    T0: float | None  # math.inf when infinite, None when degenerate
    method: str  # exact-table | quadrature
    agreement: dict | None = None
    reason: str = ""
    details: dict | None = None

    def to_dict(self) -> dict:
        return {
            "exponent": self.exponent,
            "exponent_source": self.exponent_source,
            "verdict": self.verdict,
            "T0": None if self.T0 is None or math.isinf(self.T0) else self.T0,
            "method": self.method,
            "agreement": self.agreement,
            "reason": self.reason,
            "details": self.details,
        }


def _coth_power(j: int, normal_dim: int) -> int:
    # S_j ~ (coth r)^(j) up to the normal dimension, then the tanh factors win back
    return j if j <= normal_dim else 2 * normal_dim - j


def exact_exponent(n: int, k: int, m: int, l: int) -> int:
    """Exponent e with S_m/S_l ~ (coth r)^e as r -> 0 on the (n, k) tube."""
    if not 0 <= k <= n:
        raise ClassificationError(f"core dimension k={k} outside [0, {n}]")
    if not (0 <= m <= n and 0 <= l <= n):
        raise ClassificationError(f"indices m={m}, l={l} must lie in [0, {n}]")
    return _coth_power(m, n - k) - _coth_power(l, n - k)


def _inverse_speed(cfg: TubeConfig, speed: SpeedExpr):
    def f(r):
        h = radial_speed_array(cfg, speed, r)
        if not np.all(np.isfinite(h)) or np.any(h <= 0):
            bad = r[~(np.isfinite(h) & (h > 0))][0]
            raise DegenerateSpeedError(f"h(r) is not positive and finite at r={bad!r}")
        return 1.0 / h

    return f


def numeric_exponent(cfg: TubeConfig, speed: SpeedExpr) -> float:
    """Least-squares slope of ln h against ln coth r for r in [1e-6, 1e-3]."""
    lo, hi, count = EXPONENT_GRID
    r = np.geomspace(lo, hi, count)
    h = radial_speed_array(cfg, speed, r)
    if not np.all(np.isfinite(h)) or np.any(h <= 0):
        raise DegenerateSpeedError("h(r) is not positive and finite near r = 0")
    slope, _ = np.polyfit(np.log(1.0 / np.tanh(r)), np.log(h), 1)
    return float(slope)


def lifetime_quadrature(problem: FlowProblem) -> LifetimeClassification:
    """T0 = int_0^r0 dr/h(r), or a verdict that it diverges.

    [delta, r0] with delta = min(r0/2, 1e-2) is integrated adaptively. Below
    delta, dyadic panels [delta/2^(j+1), delta/2^j] are added until one
    contributes less than 1e-12 (finite), or until 8 successive panels fail
    to shrink while the fitted exponent is at most -0.9 (infinite).
    """
    cfg, speed, r0 = problem.cfg, problem.speed, problem.r0
    inv = _inverse_speed(cfg, speed)
    exponent = numeric_exponent(cfg, speed)
    delta = min(r0 / 2, QUAD_DELTA_MAX)
    try:
        regular, _ = quadrature.integrate(inv, delta, r0, abs_tol=QUAD_ABS_TOL, rel_tol=QUAD_REL_TOL)
    except quadrature.QuadratureError as exc:
        raise DegenerateSpeedError(str(exc)) from exc

    panels = []
    streak = 0
    for j in range(PANEL_MAX):
        a, b = delta / 2.0 ** (j + 1), delta / 2.0**j
        value, _ = quadrature.integrate(inv, a, b, abs_tol=PANEL_TOL * 1e-2, rel_tol=1e-12)
        panels.append(value)
        if value < PANEL_TOL:
            T0 = regular + math.fsum(panels)
            info = {"panels": len(panels), "delta": delta}
            return LifetimeClassification(exponent, "numeric-estimate", "finite", T0, "quadrature", details=info)
        if j > 0 and value >= (1.0 - PANEL_SLACK) * panels[-2]:
            streak += 1
        else:
            streak = 0
        if streak >= PANEL_STREAK and exponent <= INFINITE_EXPONENT_CUTOFF:
            info = {"panels": len(panels), "delta": delta}
            return LifetimeClassification(exponent, "numeric-estimate", "infinite", math.inf, "quadrature", details=info)
    return LifetimeClassification(
        exponent, "numeric-estimate", "degenerate", None, "quadrature",
        reason=f"undecided after {PANEL_MAX} dyadic panels",
    )


def ratio_speed(m: int, l: int) -> SpeedExpr:
    return parse_speed(f"S{m}/S{l}")


def classify_lifetime(n: int, k: int, m: int, l: int, r0: float) -> LifetimeClassification:
    """Lifetime of the S_m/S_l flow from the (n, k) tube of radius r0.

    The verdict comes from the exponent table; the quadrature route must
    agree or ClassificationError is raised.
    """
    e = exact_exponent(n, k, m, l)
    verdict = "infinite" if e <= -1 else "finite"
    quad = lifetime_quadrature(FlowProblem(TubeConfig(n, k), r0, ratio_speed(m, l)))
    agreement = {
        "quadrature_verdict": quad.verdict,
        "quadrature_T0": None if quad.T0 is None or math.isinf(quad.T0) else quad.T0,
        "numeric_exponent": quad.exponent,
        "agree": quad.verdict == verdict,
    }
    if not agreement["agree"]:
        raise ClassificationError(
            f"exponent table says {verdict} (e={e}) but quadrature says {quad.verdict} "
            f"for n={n}, k={k}, m={m}, l={l}, r0={r0}"
        )
    T0 = quad.T0 if verdict == "finite" else math.inf
    return LifetimeClassification(e, "exact-table", verdict, T0, "exact-table", agreement)


def sweep_records(n_max: int, r0: float) -> list[dict]:
    """Classify every (n, k, m, l) with n <= n_max, in lexicographic order."""
    if not 1 <= n_max <= 6:
        raise ClassificationError(f"n_max must lie in [1, 6], got {n_max}")
    records = []
    for n in range(1, n_max + 1):
        for k in range(n + 1):
            for m in range(n + 1):
                for l in range(n + 1):
                    c = classify_lifetime(n, k, m, l, r0)
                    records.append({
                        "n": n,
                        "k": k,
                        "m": m,
                        "l": l,
                        "exponent": c.exponent,
                        "verdict": c.verdict,
                        "T0": None if math.isinf(c.T0) else c.T0,
                        "agreement": c.agreement["agree"],
                    })
    return records
