"""Equidistant hypersurfaces around a totally geodesic core.

The hypersurface at distance ``r`` from a totally geodesic ``P^k`` inside a
hyperbolic (n+1)-manifold has principal curvatures ``tanh r`` (k times) and
``coth r`` (n-k times). ``k = 0`` gives geodesic spheres of radius ``r``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import R_MAX
from .errors import TubeDomainError
from .symfun import SpeedExpr, eval_elementary, eval_speed
from .symfun.elementary import LambdaVector


@dataclass(frozen=True)
class TubeConfig:
    n: int
    k: int

    def __post_init__(self):
        if self.n < 1:
            raise TubeDomainError(f"hypersurface dimension n must be >= 1, got {self.n}")
        if not 0 <= self.k <= self.n:
            raise TubeDomainError(f"core dimension k must lie in [0, {self.n}], got {self.k}")


@dataclass(frozen=True)
class TubeState:
    r: float
    lambdas: LambdaVector
    F: float
    H: float
    K: float
    area_factor: float


def _check_radius(cfg: TubeConfig, r: float) -> None:
    if not math.isfinite(r) or r < 0:
        raise TubeDomainError(f"distance r must be finite and >= 0, got {r!r}")
    if r > R_MAX:
        raise TubeDomainError(f"distance r = {r!r} exceeds r_max = {R_MAX}")
    if r == 0 and cfg.k < cfg.n:
        raise TubeDomainError("r = 0 is singular when k < n (coth r blows up)")


def principal_curvatures(cfg: TubeConfig, r: float) -> LambdaVector:
    _check_radius(cfg, r)
    t = math.tanh(r)
    c = 1.0 / t if cfg.k < cfg.n else 0.0
    return (t,) * cfg.k + (c,) * (cfg.n - cfg.k)


def tube_lambdas(cfg: TubeConfig, r: np.ndarray) -> list[np.ndarray]:
    """Vectorised principal curvatures: one array per curvature slot.

    No domain checks; callers guarantee 0 < r <= R_MAX.
    """
    t = np.tanh(r)
    c = 1.0 / t
    return [t] * cfg.k + [c] * (cfg.n - cfg.k)


def area_factor(cfg: TubeConfig, r: float) -> float:
    """cosh(r)^k sinh(r)^(n-k): area of the tube relative to its core."""
    if not math.isfinite(r) or r < 0:
        raise TubeDomainError(f"distance r must be finite and >= 0, got {r!r}")
    if r > R_MAX:
        raise TubeDomainError(f"distance r = {r!r} exceeds r_max = {R_MAX}")
    return math.cosh(r) ** cfg.k * math.sinh(r) ** (cfg.n - cfg.k)


def tube_state(cfg: TubeConfig, r: float, speed: SpeedExpr) -> TubeState:
    lambdas = principal_curvatures(cfg, r)
    S = eval_elementary(lambdas)
    return TubeState(
        r=r,
        lambdas=lambdas,
        F=eval_speed(speed, lambdas),
        H=S[1],
        K=S[cfg.n],
        area_factor=area_factor(cfg, r),
    )


def riccati_residual(cfg: TubeConfig, r: float, dr: float) -> tuple[float, float]:
    """Residuals of lambda' + lambda^2 = 1 for the tanh and coth branches.

    The derivative is a central difference with step ``dr``, so each
    residual is dominated by |lambda'''| dr^2 / 6.
    """
    if not 0 < dr <= 1e-4:
        raise TubeDomainError(f"step dr must lie in (0, 1e-4], got {dr!r}")
    if r - dr <= 0:
        raise TubeDomainError(f"r - dr must be positive, got r={r!r}, dr={dr!r}")
    _check_radius(cfg, r + dr)

    def coth(x):
        return 1.0 / math.tanh(x)

    out = []
    for branch in (math.tanh, coth):
        deriv = (branch(r + dr) - branch(r - dr)) / (2 * dr)
        out.append(abs(deriv + branch(r) ** 2 - 1.0))
    return out[0], out[1]
