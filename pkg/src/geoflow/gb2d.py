"""Surfaces (n = 2) under harmonic mean curvature flow in hyperbolic 3-manifolds.

Gauss-Bonnet turns the area evolution dV/dt = -int K into the linear ODE
dV/dt = -C0 - V with C0 = 2 pi chi, so area is fixed by genus and V(0).
The maximum-principle envelopes for F and H are checked here along radial
trajectories, which are the only flows computed exactly in this package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .constants import BLOWUP_H_THRESHOLD, DEFAULT_CORE_LENGTH, ENVELOPE_EPS
from .errors import SurfaceError
from .radial_flow import Trajectory
from .tube import TubeConfig

TORUS_AREA_SCALE = 2 * math.pi * DEFAULT_CORE_LENGTH
GENUS2_AREA_SCALE = 4 * math.pi  # area of the totally geodesic genus-2 surface


@dataclass(frozen=True)
class SurfaceCase:
    genus: int
    V0: float
    C0: float
    case: str  # I | II | III
    extinction_time: float | None
    nonexistence_flag: bool
    limit_area: float | None


def euler_constant(genus: int) -> float:
    """C0 = 2 pi chi = 4 pi (1 - genus)."""
    return 4 * math.pi * (1 - genus)


def classify_surface(genus: int, V0: float) -> SurfaceCase:
    if genus < 0:
        raise SurfaceError(f"genus must be >= 0, got {genus}")
    if not V0 > 0:
        raise SurfaceError(f"initial area must be positive, got {V0!r}")
    C0 = euler_constant(genus)
    if C0 < 0:
        return SurfaceCase(genus, V0, C0, "I", None, False, -C0)
    if C0 == 0:
        return SurfaceCase(genus, V0, C0, "II", None, False, 0.0)
    # area hits zero in finite time, contradicting F < 1/2 long-time existence
    return SurfaceCase(genus, V0, C0, "III", math.log((V0 + C0) / C0), True, None)


def area_law(surface: SurfaceCase, t: float) -> float:
    """V(t) = (V0 + C0) e^-t - C0."""
    if t < 0:
        raise SurfaceError(f"t must be >= 0, got {t!r}")
    if surface.extinction_time is not None and t > surface.extinction_time:
        raise SurfaceError(f"t = {t!r} is past the extinction time {surface.extinction_time!r}")
    return (surface.V0 + surface.C0) * math.exp(-t) - surface.C0


@dataclass(frozen=True)
class EnvelopeParams:
    n: int
    F0_max: float
    F0_min: float
    H0_max: float

    def __post_init__(self):
        if not 0 < self.F0_min <= self.F0_max < 1 / self.n:
            raise SurfaceError(
                f"need 0 < F0_min <= F0_max < 1/n; got F0_min={self.F0_min!r}, F0_max={self.F0_max!r}, n={self.n}"
            )
        if not self.H0_max > 0:
            raise SurfaceError(f"H0_max must be positive, got {self.H0_max!r}")


def envelope_upper_F(n: int, F0: float, t: float) -> float:
    """Solution of F' = F^3 (n - F^-2 / n) from F0, which stays below 1/n."""
    if not 0 < F0 < 1 / n:
        raise SurfaceError(f"upper envelope needs 0 < F0 < 1/n, got F0={F0!r}, n={n}")
    if t < 0:
        raise SurfaceError(f"t must be >= 0, got {t!r}")
    x = 2 * t / n
    # 1/sqrt(n^2 + A e^x) rewritten to avoid overflow for large t
    return math.exp(-x / 2) / math.sqrt(n * n * math.exp(-x) + (F0**-2 - n * n))


def envelope_lower_F(F0_min: float, t: float) -> float:
    if not F0_min > 0:
        raise SurfaceError(f"F0_min must be positive, got {F0_min!r}")
    if t < 0:
        raise SurfaceError(f"t must be >= 0, got {t!r}")
    return F0_min * math.exp(-t)


def envelope_upper_H(n: int, H0_max: float, t: float) -> float:
    if not H0_max > 0 or t < 0:
        raise SurfaceError(f"need H0_max > 0 and t >= 0, got H0_max={H0_max!r}, t={t!r}")
    try:
        return H0_max * math.exp((2 * n + 1 / n) * t)
    except OverflowError:
        return math.inf


def sphere_barrier_F(n: int, r: float) -> float:
    """Harmonic speed coth(r)/n of a geodesic sphere; always above 1/n."""
    if not r > 0:
        raise SurfaceError(f"sphere radius must be positive, got {r!r}")
    return 1.0 / (n * math.tanh(r))


def _require_harmonic(traj: Trajectory) -> TubeConfig:
    cfg = traj.problem.cfg
    if not traj.problem.speed.is_harmonic(cfg.n):
        raise SurfaceError(f"needs harmonic speed, got {traj.problem.speed}")
    if not traj.samples:
        raise SurfaceError("trajectory has no samples")
    return cfg


@dataclass
class EnvelopeReport:
    samples: int
    violations: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_envelopes(traj: Trajectory, eps: float = ENVELOPE_EPS) -> EnvelopeReport:
    """Check every sample against the lower/upper F envelopes and the H envelope."""
    cfg = _require_harmonic(traj)
    first = traj.samples[0]
    if not first.F < 1 / cfg.n:
        raise SurfaceError(f"F(0) = {first.F!r} is not below 1/n = {1 / cfg.n!r}")
    report = EnvelopeReport(samples=len(traj.samples))
    for s in traj.samples:
        lower = envelope_lower_F(first.F, s.t)
        upper = envelope_upper_F(cfg.n, first.F, s.t)
        h_upper = envelope_upper_H(cfg.n, first.H, s.t)
        if s.F < lower - eps:
            report.violations.append({"t": s.t, "kind": "F below lower envelope", "value": s.F, "bound": lower})
        if s.F > upper + eps:
            report.violations.append({"t": s.t, "kind": "F above upper envelope", "value": s.F, "bound": upper})
        if s.H > h_upper * (1 + eps):
            report.violations.append({"t": s.t, "kind": "H above envelope", "value": s.H, "bound": h_upper})
    return report


def decay_functional(traj: Trajectory, area_scale: float) -> list[tuple[float, float]]:
    """(t, F^2 * Area) along the trajectory, with Area = area_scale * area factor."""
    cfg = _require_harmonic(traj)
    if cfg.k < 1:
        raise SurfaceError("decay functional needs a core of dimension k >= 1")
    return [(s.t, s.F**2 * area_scale * s.area_factor) for s in traj.samples]


def blowup_check(traj: Trajectory, threshold: float = BLOWUP_H_THRESHOLD) -> tuple[float, float] | None:
    """First sample time where H exceeds ``threshold`` on the torus tube.

    Raises SurfaceError for any other configuration or if H ever fails to
    increase strictly between samples.
    """
    cfg = _require_harmonic(traj)
    if (cfg.n, cfg.k) != (2, 1):
        raise SurfaceError(f"blow-up check applies to the (n, k) = (2, 1) torus tube, got ({cfg.n}, {cfg.k})")
    for prev, cur in zip(traj.samples, traj.samples[1:]):
        if not cur.H > prev.H:
            raise SurfaceError(f"H not strictly increasing at t={cur.t!r}")
    for s in traj.samples:
        if s.H > threshold:
            return s.t, s.H
    return None
