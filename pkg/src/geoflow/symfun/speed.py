"""Speed functions f(lambda) built from elementary symmetric polynomials."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..constants import DEFAULT_SEED, FIRST_ORDER_TOL, PARABOLIC_RANGE
from ..errors import SpeedEvaluationError
from .ast import BinOp, Builtin, Neg, Node, Num, Pow, Sym, to_text, walk
from .dual import GradDual
from .elementary import as_lambda_vector, elementary_recurrence, eval_elementary
from .parser import parse_tree


@dataclass(frozen=True)
class SpeedExpr:
    root: Node

    @property
    def text(self) -> str:
        return to_text(self.root)

    def __str__(self) -> str:
        return self.text

    @property
    def max_index(self) -> int:
        """Largest ``Sm`` index referenced explicitly (builtins excluded)."""
        return max((node.index for node in walk(self.root) if isinstance(node, Sym)), default=0)

    def is_harmonic(self, n: int) -> bool:
        """True for ``harmonic`` and for the literal form ``Sn/S(n-1)``."""
        return self.root == Builtin("harmonic") or self.root == BinOp("/", Sym(n), Sym(n - 1))


HARMONIC = SpeedExpr(Builtin("harmonic"))


def parse_speed(text: str) -> SpeedExpr:
    return SpeedExpr(parse_tree(text))


def as_speed(speed: SpeedExpr | str) -> SpeedExpr:
    return speed if isinstance(speed, SpeedExpr) else parse_speed(speed)


def _has_zero(x) -> bool:
    if isinstance(x, GradDual):
        return x.value == 0.0
    return bool(np.any(np.asarray(x) == 0.0))


def _divide(num, den, what: str):
    if _has_zero(den):
        raise SpeedEvaluationError(f"division by zero: {what} vanishes")
    return num / den


def _evaluate(node: Node, S, n: int):
    if isinstance(node, Num):
        return float(node.value)
    if isinstance(node, Sym):
        if node.index > n:
            raise SpeedEvaluationError(f"S{node.index} is undefined for n = {n}")
        return S[node.index]
    if isinstance(node, Builtin):
        if node.name == "mean":
            return S[1] / n
        if _has_zero(S[n]):
            raise SpeedEvaluationError("harmonic mean undefined: a principal curvature is zero")
        return _divide(S[n], S[n - 1], f"S{n - 1} in harmonic")
    if isinstance(node, Neg):
        return -_evaluate(node.operand, S, n)
    if isinstance(node, Pow):
        base = _evaluate(node.base, S, n)
        if node.exponent < 0 and _has_zero(base):
            raise SpeedEvaluationError(f"division by zero: {to_text(node.base)} vanishes in {to_text(node)}")
        return base**node.exponent
    if isinstance(node, BinOp):
        left = _evaluate(node.left, S, n)
        right = _evaluate(node.right, S, n)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        return _divide(left, right, to_text(node.right))
    raise TypeError(f"not an expression node: {node!r}")


def eval_on_elementary(expr: SpeedExpr, S, n: int):
    """Evaluate on precomputed ``[S0..Sn]``; entries may be numpy arrays."""
    return _evaluate(expr.root, S, n)


def eval_speed(expr: SpeedExpr, lambdas: Sequence[float]) -> float:
    vec = as_lambda_vector(lambdas)
    return float(_evaluate(expr.root, eval_elementary(vec), len(vec)))


def grad_speed(expr: SpeedExpr, lambdas: Sequence[float]) -> tuple[float, ...]:
    """Gradient of f with respect to each principal curvature.

    Exact up to rounding: the product recurrence and the expression tree are
    both evaluated in forward-mode dual arithmetic.
    """
    vec = as_lambda_vector(lambdas)
    n = len(vec)
    order = sorted(range(n), key=lambda i: vec[i])
    seeded = [GradDual.seed(vec[i], i, n) for i in order]
    S = elementary_recurrence(seeded)
    S[0] = GradDual(1.0, np.zeros(n))
    out = _evaluate(expr.root, S, n)
    if not isinstance(out, GradDual):  # constant expression
        return (0.0,) * n
    return tuple(float(g) for g in out.grad)


@dataclass(frozen=True)
class ParabolicityReport:
    verdict: str  # parabolic | backwards-parabolic | first-order | indefinite
    grad_min: float
    grad_max: float
    samples: int
    skipped: int
    seed: int


def check_parabolic(expr: SpeedExpr, n: int, samples: int, seed: int = DEFAULT_SEED) -> ParabolicityReport:
    """Classify the flow type of ``expr`` from gradients at seeded random points."""
    if n < 1 or samples < 1:
        raise ValueError("need n >= 1 and samples >= 1")
    rng = np.random.default_rng(seed)
    points = rng.uniform(*PARABOLIC_RANGE, size=(samples, n))
    grads = []
    skipped = 0
    for point in points:
        try:
            grads.append(grad_speed(expr, point))
        except SpeedEvaluationError:
            skipped += 1
    if not grads:
        raise SpeedEvaluationError(f"all {samples} parabolicity samples failed to evaluate")
    g = np.asarray(grads)
    lo, hi = float(g.min()), float(g.max())
    if np.all(np.abs(g) < FIRST_ORDER_TOL):
        verdict = "first-order"
    elif lo > 0:
        verdict = "parabolic"
    elif hi < 0:
        verdict = "backwards-parabolic"
    else:
        verdict = "indefinite"
    return ParabolicityReport(verdict, lo, hi, samples, skipped, seed)
