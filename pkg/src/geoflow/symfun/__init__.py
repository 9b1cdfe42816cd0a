from .ast import BinOp, Builtin, Neg, Node, Num, Pow, Sym, to_text
from .elementary import LambdaVector, eval_elementary
from .parser import parse_tree
from .speed import (
    HARMONIC,
    ParabolicityReport,
    SpeedExpr,
    as_speed,
    check_parabolic,
    eval_on_elementary,
    eval_speed,
    grad_speed,
    parse_speed,
)

__all__ = [
    "BinOp",
    "Builtin",
    "HARMONIC",
    "LambdaVector",
    "Neg",
    "Node",
    "Num",
    "ParabolicityReport",
    "Pow",
    "SpeedExpr",
    "Sym",
    "as_speed",
    "check_parabolic",
    "eval_elementary",
    "eval_on_elementary",
    "eval_speed",
    "grad_speed",
    "parse_speed",
    "parse_tree",
    "to_text",
]
