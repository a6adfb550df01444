"""Evaluate the rational-function strings stored in the C-matrix fixture.

The fixture writes entries the way they are printed, e.g.
``-(p^6(p+1))/((p-1)(p^2+2p+2))``: juxtaposition multiplies, ``^`` takes an
integer exponent, bare or parenthesized as in ``p^(11)``, and ``/``
associates to the left with the same precedence as multiplication.
The only variable is ``p``.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Optional

_TOKEN = re.compile(r"\s*(?:(\d+)|(p)|([-+*/^()]))")


def tokenize(text: str) -> List[str]:
    """Split an expression into numbers, ``p`` and operator characters."""
    tokens: List[str] = []
    position = 0
    stripped = text.rstrip()
    while position < len(stripped):
        match = _TOKEN.match(stripped, position)
        if match is None:
            raise ValueError(f"Unexpected character {stripped[position]!r} in {text!r}")
        tokens.append(match.group(match.lastindex or 0))
        position = match.end()
    return tokens


class ExpressionEvaluator:
    """Recursive-descent evaluator over exact rationals.

    Grammar::

        expr    := term (('+' | '-') term)*
        term    := unary (('*' | '/')? unary)*
        unary   := '-' unary | power
        power   := atom ('^' '-'? (NUMBER | '(' expr ')'))?
        atom    := NUMBER | 'p' | '(' expr ')'
    """

    def __init__(self, text: str, p: Fraction) -> None:
        self.text = text
        self.p = p
        self.tokens = tokenize(text)
        self.position = 0

    def evaluate(self) -> Fraction:
        value = self._expr()
        if self._peek() is not None:
            raise ValueError(f"Trailing input at token {self._peek()!r} in {self.text!r}")
        return value

    def _peek(self) -> Optional[str]:
        return self.tokens[self.position] if self.position < len(self.tokens) else None

    def _take(self, expected: Optional[str] = None) -> str:
        token = self._peek()
        if token is None:
            raise ValueError(f"Unexpected end of {self.text!r}")
        if expected is not None and token != expected:
            raise ValueError(f"Expected {expected!r}, found {token!r} in {self.text!r}")
        self.position += 1
        return token

    def _expr(self) -> Fraction:
        value = self._term()
        while self._peek() in ('+', '-'):
            if self._take() == '+':
                value += self._term()
            else:
                value -= self._term()
        return value

    def _starts_atom(self) -> bool:
        token = self._peek()
        return token is not None and (token.isdigit() or token in ('p', '('))

    def _term(self) -> Fraction:
        value = self._unary()
        while True:
            token = self._peek()
            if token == '*':
                self._take()
                value *= self._unary()
            elif token == '/':
                self._take()
                divisor = self._unary()
                if divisor == 0:
                    raise ZeroDivisionError(f"Division by zero in {self.text!r} at p = {self.p}")
                value /= divisor
            elif self._starts_atom():
                value *= self._unary()
            else:
                return value

    def _unary(self) -> Fraction:
        if self._peek() == '-':
            self._take()
            return -self._unary()
        return self._power()

    def _power(self) -> Fraction:
        base = self._atom()
        if self._peek() != '^':
            return base
        self._take()
        sign = 1
        if self._peek() == '-':
            self._take()
            sign = -1
        token = self._peek()
        if token is not None and token != '(' and not token.isdigit():
            raise ValueError(f"Exponent must be an integer in {self.text!r}")
        exponent = self._atom()
        if exponent.denominator != 1:
            raise ValueError(f"Exponent {exponent} is not an integer in {self.text!r}")
        return base ** (sign * int(exponent))

    def _atom(self) -> Fraction:
        token = self._take()
        if token.isdigit():
            return Fraction(int(token))
        if token == 'p':
            return self.p
        if token == '(':
            value = self._expr()
            self._take(')')
            return value
        raise ValueError(f"Unexpected token {token!r} in {self.text!r}")


def evaluate_expression(text: str, p: int) -> Fraction:
    """Value of a fixture expression at an integer p."""
    return ExpressionEvaluator(text, Fraction(p)).evaluate()
