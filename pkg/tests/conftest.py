import random
from fractions import Fraction

import pytest

from geoflow.symfun import BinOp, Builtin, Neg, Num, Pow, Sym

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_report():
    def report(label: str, ok: bool, detail: str = "") -> None:
        _ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {label}" + (f"  ({detail})" if detail else ""))

    return report


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_tree(rng: random.Random, depth: int = 4, max_index: int = 32):
    """Random well-formed expression tree (no literal-zero divisors)."""
    if depth == 0 or rng.random() < 0.25:
        choice = rng.random()
        if choice < 0.45:
            return Sym(rng.randint(0, max_index))
        if choice < 0.6:
            return Builtin(rng.choice(["harmonic", "mean"]))
        return Num(Fraction(rng.randint(1, 9999), rng.choice([1, 2, 4, 5, 8, 10, 100, 1000])))
    kind = rng.random()
    if kind < 0.15:
        return Neg(random_tree(rng, depth - 1, max_index))
    if kind < 0.3:
        return Pow(random_tree(rng, depth - 1, max_index), rng.randint(-16, 16))
    op = rng.choice("+-*/")
    return BinOp(op, random_tree(rng, depth - 1, max_index), random_tree(rng, depth - 1, max_index))
