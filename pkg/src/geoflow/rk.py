"""Adaptive Dormand-Prince 5(4) integration of a scalar ODE y' = f(t, y).

Steps are accepted on the fifth-order solution (local extrapolation) and
each accepted step carries Shampine's quartic continuous extension, so the
solution can be sampled anywhere inside it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator

from .errors import IntegrationError

C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0)
A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
)
B = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84)
# fifth-order minus embedded fourth-order weights; 7th entry is the FSAL stage
E = (-71 / 57600, 0.0, 71 / 16695, -71 / 1920, 17253 / 339200, -22 / 525, 1 / 40)
P = (
    (1.0, -8048581381 / 2820520608, 8663915743 / 2820520608, -12715105075 / 11282082432),
    (0.0, 0.0, 0.0, 0.0),
    (0.0, 131558114200 / 32700410799, -68118460800 / 10900136933, 87487479700 / 32700410799),
    (0.0, -1754552775 / 470086768, 14199869525 / 1410260304, -10690763975 / 1880347072),
    (0.0, 127303824393 / 49829197408, -318862633887 / 49829197408, 701980252875 / 199316789632),
    (0.0, -282668133 / 205662961, 2019193451 / 616988883, -1453857185 / 822651844),
    (0.0, 40617522 / 29380423, -110615467 / 29380423, 69997945 / 29380423),
)

SAFETY = 0.9
MIN_FACTOR = 0.2
MAX_FACTOR = 10.0
REJECT_FACTOR = 0.25


class StageRejected(Exception):
    """Raised by a right-hand side that cannot be evaluated at a trial stage
    (e.g. the stage left the domain); the step is retried with a smaller h."""


@dataclass(frozen=True)
class Step:
    t0: float
    t1: float
    y0: float
    y1: float
    f1: float
    q: tuple[float, float, float, float]

    def __call__(self, t: float) -> float:
        h = self.t1 - self.t0
        theta = (t - self.t0) / h
        q0, q1, q2, q3 = self.q
        return self.y0 + h * theta * (q0 + theta * (q1 + theta * (q2 + theta * q3)))


def _initial_step(fun, t0, y0, f0, rtol, atol, span) -> float:
    scale = atol + rtol * abs(y0)
    d0, d1 = abs(y0) / scale, abs(f0) / scale
    h0 = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
    h0 = min(h0, span)
    try:
        f1 = fun(t0 + h0, y0 + h0 * f0)
    except StageRejected:
        return h0 * 1e-3
    d2 = abs(f1 - f0) / scale / h0
    if max(d1, d2) <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** (1 / 5)
    return min(100 * h0, h1, span)


def dopri5(
    fun: Callable[[float, float], float],
    t0: float,
    y0: float,
    t_end: float,
    rtol: float,
    atol: float,
) -> Iterator[Step]:
    """Yield accepted steps from ``t0`` until ``t_end`` is reached exactly.

    The caller may stop iterating at any time. Raises IntegrationError when
    the step size underflows.
    """
    t, y = t0, y0
    f = fun(t, y)
    h = _initial_step(fun, t, y, f, rtol, atol, t_end - t0)
    while t < t_end:
        min_step = 10 * math.ulp(max(abs(t), 1.0))
        if h < min_step:
            raise IntegrationError("step size underflow", (t, y))
        last = t + h >= t_end
        if last:
            h = t_end - t
        K = [f, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]
        try:
            for s in range(1, 6):
                ys = y + h * sum(a * k for a, k in zip(A[s], K))
                K[s] = fun(t + C[s] * h, ys)
            y_new = y + h * sum(b * k for b, k in zip(B, K))
            t_new = t_end if last else t + h
            K[6] = fun(t_new, y_new)
        except StageRejected:
            h *= REJECT_FACTOR
            continue
        err = h * sum(e * k for e, k in zip(E, K))
        scale = atol + rtol * max(abs(y), abs(y_new))
        ratio = abs(err) / scale
        if not math.isfinite(ratio):
            h *= REJECT_FACTOR
            continue
        if ratio > 1.0:
            h *= max(MIN_FACTOR, SAFETY * ratio ** -0.2)
            continue
        q = tuple(sum(K[i] * P[i][j] for i in range(7)) for j in range(4))
        yield Step(t, t_new, y, y_new, K[6], q)
        factor = MAX_FACTOR if ratio == 0 else min(MAX_FACTOR, SAFETY * ratio**-0.2)
        t, y, f = t_new, y_new, K[6]
        h *= factor
