"""Radial reduction of curvature flows on tube families.

A tube of radius r stays a tube under any symmetric speed, so the flow
reduces to the scalar ODE dr/dt = -h(r) with h(r) = f(tanh r, ..., coth r).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import quadrature
from .constants import R_FLOOR, R_MAX, RK_ATOL, RK_RTOL, SPEED_BLOWUP, T_EXT_TOL
from .errors import GeoflowError, IntegrationError, TubeDomainError
from .rk import StageRejected, dopri5
from .symfun import SpeedExpr, as_speed, eval_on_elementary, eval_speed
from .symfun.elementary import elementary_recurrence
from .tube import TubeConfig, principal_curvatures, tube_lambdas, tube_state

MAX_EXP_ARG = 700.0


@dataclass(frozen=True)
class FlowProblem:
    cfg: TubeConfig
    r0: float
    speed: SpeedExpr = field(default_factory=lambda: as_speed("harmonic"))

    def __post_init__(self):
        object.__setattr__(self, "speed", as_speed(self.speed))
        if not (0 < self.r0 <= R_MAX):
            raise TubeDomainError(f"initial distance r0 must lie in (0, {R_MAX}], got {self.r0!r}")
        # fail early if the speed cannot be evaluated on this family
        radial_speed(self, self.r0)


def radial_speed(problem: FlowProblem, r: float) -> float:
    if not r > 0:
        raise TubeDomainError(f"radial speed needs r > 0, got {r!r}")
    return eval_speed(problem.speed, principal_curvatures(problem.cfg, r))


def radial_speed_array(cfg: TubeConfig, speed: SpeedExpr, r: np.ndarray) -> np.ndarray:
    """h(r) on an array of radii in (0, R_MAX]; no per-point domain checks."""
    r = np.asarray(r, dtype=float)
    S = elementary_recurrence(tube_lambdas(cfg, r))
    S[0] = np.ones_like(r)
    with np.errstate(over="ignore", invalid="ignore"):
        out = eval_on_elementary(speed, S, cfg.n)
    return np.broadcast_to(np.asarray(out, dtype=float), r.shape)


def conserved_quantity(cfg: TubeConfig, r: float, t: float) -> float:
    """e^t sinh(r)^k cosh(r)^(n-k), constant along harmonic mean curvature flow."""
    if not 0 < r <= R_MAX:
        raise TubeDomainError(f"conserved quantity needs r in (0, {R_MAX}], got {r!r}")
    if t > MAX_EXP_ARG:
        raise OverflowError(f"t = {t!r} exceeds {MAX_EXP_ARG}")
    return math.exp(t) * math.sinh(r) ** cfg.k * math.cosh(r) ** (cfg.n - cfg.k)


def _log_tube_measure(cfg: TubeConfig, r: float) -> float:
    return cfg.k * math.log(math.sinh(r)) + (cfg.n - cfg.k) * math.log(math.cosh(r))


def solve_conserved(cfg: TubeConfig, r0: float, t: float, tol: float = 1e-13) -> float:
    """Root r of sinh^k r cosh^(n-k) r = e^-t sinh^k r0 cosh^(n-k) r0 for k >= 1.

    Newton on the log form, safeguarded by a bisection bracket.
    """
    if cfg.k < 1:
        raise ValueError("the conserved-quantity root is unique only for k >= 1")
    target = _log_tube_measure(cfg, r0) - t

    def g(r):
        return _log_tube_measure(cfg, r) - target

    hi = r0
    lo = r0 * math.exp(-t / cfg.k)
    while g(lo) > 0:
        hi = lo
        lo *= 0.5
    if g(lo) == 0:
        return lo
    r = 0.5 * (lo + hi)
    for _ in range(200):
        gr = g(r)
        if gr == 0:
            return r
        if gr > 0:
            hi = r
        else:
            lo = r
        slope = cfg.k / math.tanh(r) + (cfg.n - cfg.k) * math.tanh(r)
        step = gr / slope
        candidate = r - step
        if not lo < candidate < hi:
            candidate = 0.5 * (lo + hi)
        if abs(candidate - r) <= tol or hi - lo <= tol:
            return candidate
        r = candidate
    raise ArithmeticError("conserved-quantity root did not converge")


def hmcf_closed_form(cfg: TubeConfig, r0: float, t: float) -> float:
    """Exact radius at time t under harmonic mean curvature flow from r0.

    For k = 0 (geodesic spheres) the sphere collapses at t = n ln cosh r0 and
    0.0 is returned from then on.
    """
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t!r}")
    if not 0 < r0 <= R_MAX:
        raise TubeDomainError(f"r0 must lie in (0, {R_MAX}], got {r0!r}")
    n, k = cfg.n, cfg.k
    if t == 0:
        return r0
    if k == 0:
        c = math.exp(-t / n) * math.cosh(r0)
        return math.acosh(c) if c > 1 else 0.0
    if (n, k) == (2, 1):
        return 0.5 * math.asinh(math.exp(-t) * math.sinh(2 * r0))
    if k == n:
        return math.asinh(math.exp(-t / n) * math.sinh(r0))
    return solve_conserved(cfg, r0, t)


@dataclass(frozen=True)
class Sample:
    t: float
    r: float
    F: float
    H: float
    K: float
    area_factor: float
    conserved: float


@dataclass(frozen=True)
class Termination:
    kind: str  # reached_t_max | extinction | error
    time: float | None = None
    message: str = ""


@dataclass(frozen=True)
class Trajectory:
    problem: FlowProblem
    samples: tuple[Sample, ...]
    termination: Termination

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(s, name) for s in self.samples])

    @property
    def t_ext(self) -> float | None:
        return self.termination.time if self.termination.kind == "extinction" else None


def make_sample(problem: FlowProblem, t: float, r: float) -> Sample:
    state = tube_state(problem.cfg, r, problem.speed)
    try:
        conserved = conserved_quantity(problem.cfg, r, t)
    except OverflowError:
        conserved = math.nan
    return Sample(t, r, state.F, state.H, state.K, state.area_factor, conserved)


def output_grid(t_max: float, out_step: float) -> list[float]:
    count = int(math.floor(t_max / out_step + 1e-9))
    grid = [i * out_step for i in range(count + 1)]
    if abs(grid[-1] - t_max) <= 1e-9 * max(1.0, t_max):
        grid[-1] = t_max
    return grid


def _bisect_floor(step, floor: float, tol: float) -> float:
    lo, hi = step.t0, step.t1
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if step(mid) > floor:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def remaining_time(problem: FlowProblem, r: float) -> float:
    """Time for the radial flow to travel from r down to 0, i.e. the integral
    of 1/h over (0, r).

    Raises IntegrationError if h is not positive on (0, r): the blow-up is
    then a singularity of the speed, not a collapse onto the core.
    """

    def inverse_speed(x):
        h = radial_speed_array(problem.cfg, problem.speed, x)
        if not np.all(h > 0):
            raise IntegrationError(f"speed blew up at r = {r!r} but is not positive on (0, r); no extinction")
        return 1.0 / h

    value, _ = quadrature.integrate(
        inverse_speed,
        0.0,
        r,
        abs_tol=1e-16,
        rel_tol=1e-10,
    )
    return value


def integrate(problem: FlowProblem, t_max: float, out_step: float) -> Trajectory:
    """Integrate dr/dt = -h(r) from r0 and sample on a uniform time grid.

    Stops at ``t_max`` or on extinction: either r drops below R_FLOOR (the
    crossing time is bisected on the dense output) or |dr/dt| exceeds
    SPEED_BLOWUP, in which case the remaining time is the quadrature of 1/h
    from 0 to the current radius.
    """
    if not t_max > 0 or not out_step > 0:
        raise ValueError("t_max and out_step must be positive")
    h0 = radial_speed(problem, problem.r0)
    if not math.isfinite(h0):
        raise IntegrationError(f"initial speed is not finite: {h0!r}")

    def rhs(t, r):
        if not r > 0:
            raise StageRejected
        try:
            return -radial_speed(problem, r)
        except TubeDomainError:
            if r <= 0:
                raise StageRejected from None
            raise

    grid = output_grid(t_max, out_step)
    samples = [make_sample(problem, 0.0, problem.r0)]
    next_i = 1
    last = (0.0, problem.r0)

    def emit_until(step, t_stop, inclusive=True):
        nonlocal next_i
        while next_i < len(grid) and (grid[next_i] < t_stop or (inclusive and grid[next_i] == t_stop)):
            t = grid[next_i]
            r = step.y1 if t == step.t1 else step(t)
            samples.append(make_sample(problem, t, r))
            next_i += 1

    try:
        for step in dopri5(rhs, 0.0, problem.r0, t_max, RK_RTOL, RK_ATOL):
            if step.y1 < R_FLOOR:
                t_ext = _bisect_floor(step, R_FLOOR, T_EXT_TOL)
                emit_until(step, t_ext, inclusive=False)
                return Trajectory(problem, tuple(samples), Termination("extinction", t_ext))
            emit_until(step, step.t1)
            last = (step.t1, step.y1)
            if abs(step.f1) > SPEED_BLOWUP:
                t_ext = step.t1 + remaining_time(problem, step.y1)
                return Trajectory(problem, tuple(samples), Termination("extinction", t_ext))
    except (GeoflowError, ArithmeticError) as exc:
        state = exc.state if isinstance(exc, IntegrationError) and exc.state else last
        return Trajectory(
            problem,
            tuple(samples),
            Termination("error", state[0], f"{type(exc).__name__}: {exc}; last good state t={state[0]!r}, r={state[1]!r}"),
        )
    return Trajectory(problem, tuple(samples), Termination("reached_t_max", t_max))
