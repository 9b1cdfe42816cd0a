"""Recursive-descent parser for speed expressions.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := factor (("*" | "/") factor)*
    factor := atom ("^" integer)?
    atom   := number | symbol | builtin | "(" expr ")" | "-" atom
    symbol := "S" integer
    builtin:= "harmonic" | "mean"

The exponent of ``^`` may carry a sign and is limited to ``|e| <= 16``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from ..constants import MAX_POWER, MAX_SYMBOL_INDEX
from ..errors import SpeedSyntaxError
from .ast import BUILTINS, BinOp, Builtin, Neg, Node, Num, Pow, Sym

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # num | sym | builtin | op | end
    text: str
    pos: int  # character offset


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise SpeedSyntaxError(f"unexpected character {text[pos]!r}", _byte_offset(text, pos))
        kind = m.lastgroup
        word = m.group()
        if kind == "name":
            if word in BUILTINS:
                kind = "builtin"
            elif re.fullmatch(r"S\d+", word):
                kind = "sym"
            else:
                raise SpeedSyntaxError(f"unknown identifier {word!r}", _byte_offset(text, pos))
        if kind != "ws":
            tokens.append(Token(kind, word, pos))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message: str, tok: Token | None = None) -> SpeedSyntaxError:
        tok = tok or self.tok
        return SpeedSyntaxError(message, _byte_offset(self.text, tok.pos))

    def accept(self, *ops: str) -> Token | None:
        if self.tok.kind == "op" and self.tok.text in ops:
            tok = self.tok
            self.i += 1
            return tok
        return None

    def expect(self, op: str) -> Token:
        tok = self.accept(op)
        if tok is None:
            found = self.tok.text or "end of input"
            raise self.error(f"expected {op!r}, found {found!r}")
        return tok

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r} after expression")
        return node

    def expr(self) -> Node:
        node = self.term()
        while (tok := self.accept("+", "-")) is not None:
            node = BinOp(tok.text, node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while (tok := self.accept("*", "/")) is not None:
            divisor_tok = self.tok
            rhs = self.factor()
            if tok.text == "/" and _is_zero_literal(rhs):
                raise self.error("division by literal zero", divisor_tok)
            node = BinOp(tok.text, node, rhs)
        return node

    def factor(self) -> Node:
        base_tok = self.tok
        node = self.atom()
        if self.accept("^") is None:
            return node
        sign = 1
        if (s := self.accept("-", "+")) is not None:
            sign = -1 if s.text == "-" else 1
        tok = self.tok
        if tok.kind != "num" or not tok.text.isdigit():
            raise self.error("exponent must be an integer literal")
        self.i += 1
        exponent = sign * int(tok.text)
        if abs(exponent) > MAX_POWER:
            raise self.error(f"exponent {exponent} outside [-{MAX_POWER}, {MAX_POWER}]", tok)
        if exponent < 0 and _is_zero_literal(node):
            raise self.error("division by literal zero", base_tok)
        return Pow(node, exponent)

    def atom(self) -> Node:
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            return Num(Fraction(tok.text))
        if tok.kind == "sym":
            self.i += 1
            index = int(tok.text[1:])
            if index > MAX_SYMBOL_INDEX:
                raise self.error(f"symbol index {index} exceeds {MAX_SYMBOL_INDEX}", tok)
            return Sym(index)
        if tok.kind == "builtin":
            self.i += 1
            return Builtin(tok.text)
        if self.accept("("):
            node = self.expr()
            self.expect(")")
            return node
        if self.accept("-"):
            return Neg(self.atom())
        found = tok.text or "end of input"
        raise self.error(f"expected a number, symbol, builtin or '(', found {found!r}")


def _is_zero_literal(node: Node) -> bool:
    return isinstance(node, Num) and node.value == 0


def parse_tree(text: str) -> Node:
    if not text or not text.strip():
        raise SpeedSyntaxError("empty expression", 0)
    return _Parser(text).parse()
