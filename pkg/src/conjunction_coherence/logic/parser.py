"""Parser and printer for the formula grammar used in assessment documents.

Grammar (``!`` binds tighter than ``&``, which binds tighter than ``|``)::

    expr    := term ("|" term)*
    term    := factor ("&" factor)*
    factor  := "!" factor | "(" expr ")" | "TRUE" | "FALSE" | IDENT
"""
from __future__ import annotations

import re
from typing import List, Optional, Sequence, Tuple

from ..errors import InputError
from .models import FALSE, TRUE, And, Atom, AtomRef, Const, EventExpr, Not, Or

_TOKEN_RE = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[!&|()]))")


def _tokenize(text: str) -> List[Tuple[str, int]]:
    tokens: List[Tuple[str, int]] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN_RE.match(text, pos)
        if not match:
            stripped = len(text) - len(text[pos:].lstrip())
            raise InputError(f"Unexpected character {text[stripped]!r} at position {stripped} in {text!r}")
        token = match.group("ident") or match.group("op")
        tokens.append((token, match.start(match.lastgroup)))
        pos = match.end()
    return tokens


class _Parser:
    def __init__(self, text: str, known: Optional[Sequence[str]]) -> None:
        self.text = text
        self.tokens = _tokenize(text)
        self.index = 0
        self.known = set(known) if known is not None else None

    def _peek(self) -> Optional[str]:
        if self.index < len(self.tokens):
            return self.tokens[self.index][0]
        return None

    def _position(self) -> int:
        if self.index < len(self.tokens):
            return self.tokens[self.index][1]
        return len(self.text)

    def _advance(self) -> str:
        token = self.tokens[self.index][0]
        self.index += 1
        return token

    def _error(self, message: str) -> InputError:
        return InputError(f"{message} at position {self._position()} in {self.text!r}")

    def parse(self) -> EventExpr:
        if not self.tokens:
            raise InputError("Empty formula")
        expr = self._expr()
        if self._peek() is not None:
            raise self._error(f"Unexpected token {self._peek()!r}")
        return expr

    def _expr(self) -> EventExpr:
        operands = [self._term()]
        while self._peek() == "|":
            self._advance()
            operands.append(self._term())
        return operands[0] if len(operands) == 1 else Or(tuple(operands))

    def _term(self) -> EventExpr:
        operands = [self._factor()]
        while self._peek() == "&":
            self._advance()
            operands.append(self._factor())
        return operands[0] if len(operands) == 1 else And(tuple(operands))

    def _factor(self) -> EventExpr:
        token = self._peek()
        if token is None:
            raise self._error("Unexpected end of formula")
        if token == "!":
            self._advance()
            return Not(self._factor())
        if token == "(":
            self._advance()
            expr = self._expr()
            if self._peek() != ")":
                raise self._error("Expected ')'")
            self._advance()
            return expr
        if token in ("&", "|", ")"):
            raise self._error(f"Unexpected token {token!r}")
        self._advance()
        if token == "TRUE":
            return TRUE
        if token == "FALSE":
            return FALSE
        if self.known is not None and token not in self.known:
            raise InputError(f"Unknown atom {token!r} in formula {self.text!r}")
        return AtomRef(token)


def parse_formula(text: str, atoms: Optional[Sequence[Atom | str]] = None) -> EventExpr:
    """Parse *text*; when *atoms* is given every referenced atom must be declared."""
    known = None
    if atoms is not None:
        known = [a.name if isinstance(a, Atom) else a for a in atoms]
    return _Parser(text, known).parse()


_PRECEDENCE = {Or: 1, And: 2, Not: 3}


def render_formula(expr: EventExpr) -> str:
    """Canonical text for *expr*; ``parse_formula`` reads it back unchanged."""
    return _render(expr, 0)


def _render(expr: EventExpr, parent: int) -> str:
    if isinstance(expr, Const):
        return "TRUE" if expr.value else "FALSE"
    if isinstance(expr, AtomRef):
        return expr.name
    if isinstance(expr, Not):
        return "!" + _render(expr.operand, _PRECEDENCE[Not])
    if isinstance(expr, (And, Or)):
        level = _PRECEDENCE[type(expr)]
        joiner = " & " if isinstance(expr, And) else " | "
        # Nested operands of the same kind keep their parentheses so the
        # tree shape survives a round trip.
        text = joiner.join(_render(op, level + 1) for op in expr.operands)
        return f"({text})" if level < parent else text
    raise InputError(f"Cannot render {expr!r}")
