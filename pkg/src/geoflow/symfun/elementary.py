"""Elementary symmetric polynomials of principal curvatures."""

from __future__ import annotations

import math
from typing import Sequence

LambdaVector = tuple[float, ...]


def as_lambda_vector(values: Sequence[float]) -> LambdaVector:
    vec = tuple(float(v) for v in values)
    if not vec:
        raise ValueError("a curvature vector needs at least one entry")
    if not all(math.isfinite(v) for v in vec):
        raise ValueError(f"non-finite principal curvature in {vec}")
    return vec


def elementary_recurrence(values):
    """Coefficients of prod(x + v) for v in ``values``, lowest degree first.

    One pass, O(n^2). Entries of ``values`` may be floats, numpy arrays or
    any type closed under + and *; the result has len(values) + 1 entries.
    """
    e = [1.0] + [0.0] * len(values)
    for i, v in enumerate(values):
        for j in range(i + 1, 0, -1):
            e[j] = e[j] + v * e[j - 1]
    return e


def eval_elementary(lambdas: Sequence[float]) -> list[float]:
    """Return ``[S0, S1, ..., Sn]`` for the given curvatures.

    The input is sorted first so the result does not depend on the order of
    ``lambdas`` even at the level of rounding.
    """
    vec = as_lambda_vector(lambdas)
    return [float(s) for s in elementary_recurrence(sorted(vec))]
