"""Expression tree for symmetric speed functions.

Leaves are rational constants, elementary symmetric polynomials ``S0..S32``
and the builtins ``harmonic`` and ``mean``. Nothing else can name a principal
curvature, so every tree is symmetric in the curvatures by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Sym:
    index: int


@dataclass(frozen=True)
class Builtin:
    name: str  # "harmonic" | "mean"


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * /
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int


Node = Union[Num, Sym, Builtin, Neg, BinOp, Pow]

BUILTINS = ("harmonic", "mean")


def format_decimal(value: Fraction) -> str:
    """Exact decimal text for a non-negative fraction with a 2^a 5^b denominator."""
    den = value.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        raise ValueError(f"{value} has no finite decimal expansion")
    places = max(twos, fives)
    if places == 0:
        return str(value.numerator)
    digits = str(value.numerator * 10**places // value.denominator).rjust(places + 1, "0")
    return f"{digits[:-places]}.{digits[-places:]}".rstrip("0").rstrip(".")


def to_text(node: Node) -> str:
    """Render ``node`` so that parsing the result gives back an equal tree."""
    if isinstance(node, Num):
        return format_decimal(node.value)
    if isinstance(node, Sym):
        return f"S{node.index}"
    if isinstance(node, Builtin):
        return node.name
    if isinstance(node, Neg):
        return "-" + _atom_text(node.operand)
    if isinstance(node, Pow):
        return f"{_atom_text(node.base)} ^ {node.exponent}"
    if isinstance(node, BinOp):
        return f"{_operand_text(node.left)} {node.op} {_operand_text(node.right)}"
    raise TypeError(f"not an expression node: {node!r}")


def _atom_text(node: Node) -> str:
    if isinstance(node, (BinOp, Pow)):
        return f"({to_text(node)})"
    return to_text(node)


def _operand_text(node: Node) -> str:
    if isinstance(node, BinOp):
        return f"({to_text(node)})"
    return to_text(node)


def walk(node: Node):
    """Yield every node of the tree, parents before children."""
    yield node
    if isinstance(node, Neg):
        yield from walk(node.operand)
    elif isinstance(node, Pow):
        yield from walk(node.base)
    elif isinstance(node, BinOp):
        yield from walk(node.left)
        yield from walk(node.right)
