"""Concrete text syntax for formulas.

Grammar, loosest binding first::

    imp   := or ( '->' imp )?            right associative
    or    := and ( '|' and )*
    and   := until ( '&' until )*
    until := unary ( 'U' until )?        right associative
    unary := ( '!' | 'X' | 'F' | 'G' ) unary | atom
    atom  := 'p' | 'p<INT>' | 'true' | 'false' | '(' imp ')'

``#`` starts a comment that runs to the end of the line.  Derived tokens are
expanded while parsing, so the result only contains primitive nodes.  The
printer emits primitives with minimal parentheses; ``true`` is the single
derived token it produces.
"""
from __future__ import annotations

import io
import re
from dataclasses import dataclass
from typing import Iterator, TextIO

from .formula import (
    FALSUM, TOP, Falsum, Formula, Implies, Next, Until, Var,
    always, and_, eventually, neg, or_,
)

__all__ = ["ParseError", "parse", "format_formula", "write_formula"]


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    line: int
    column: int


_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r\f\v]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<arrow>->)
  | (?P<op>[!&|()])
  | (?P<word>[A-Za-z_][A-Za-z0-9_]*)
""", re.VERBOSE)

_KEYWORDS = {"X", "F", "G", "U", "true", "false"}
_VAR_RE = re.compile(r"p([0-9]*)\Z")


def _tokenize(text: str) -> Iterator[_Token]:
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        column = pos - line_start + 1
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, column)
        kind = m.lastgroup
        value = m.group()
        pos = m.end()
        if kind == "nl":
            line += 1
            line_start = pos
        elif kind in ("ws", "comment"):
            continue
        elif kind == "word":
            if value in _KEYWORDS:
                yield _Token(value, value, line, column)
            elif _VAR_RE.match(value):
                yield _Token("var", value, line, column)
            else:
                raise ParseError(f"unknown identifier {value!r}", line, column)
        else:
            yield _Token(value, value, line, column)
    yield _Token("eof", "", line, pos - line_start + 1)


class _Parser:
    def __init__(self, text: str):
        self.tokens = list(_tokenize(text))
        self.pos = 0

    @property
    def current(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def error(self, message: str) -> ParseError:
        token = self.current
        found = "end of input" if token.kind == "eof" else repr(token.text)
        return ParseError(f"{message}, found {found}", token.line, token.column)

    def parse(self) -> Formula:
        if self.current.kind == "eof":
            raise ParseError("empty input", self.current.line, self.current.column)
        f = self.implication()
        if self.current.kind != "eof":
            raise self.error("expected end of input")
        return f

    def implication(self) -> Formula:
        operands = [self.disjunction()]
        while self.current.kind == "->":
            self.advance()
            operands.append(self.disjunction())
        f = operands.pop()
        while operands:
            f = Implies(operands.pop(), f)
        return f

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.current.kind == "|":
            self.advance()
            f = or_(f, self.conjunction())
        return f

    def conjunction(self) -> Formula:
        f = self.until()
        while self.current.kind == "&":
            self.advance()
            f = and_(f, self.until())
        return f

    def until(self) -> Formula:
        operands = [self.unary()]
        while self.current.kind == "U":
            self.advance()
            operands.append(self.unary())
        f = operands.pop()
        while operands:
            f = Until(operands.pop(), f)
        return f

    def unary(self) -> Formula:
        ops = []
        while self.current.kind in ("!", "X", "F", "G"):
            ops.append(self.advance().kind)
        f = self.atom()
        for op in reversed(ops):
            if op == "!":
                f = neg(f)
            elif op == "X":
                f = Next(f)
            elif op == "F":
                f = eventually(f)
            else:
                f = always(f)
        return f

    def atom(self) -> Formula:
        token = self.current
        if token.kind == "var":
            self.advance()
            digits = _VAR_RE.match(token.text).group(1)
            index = int(digits) if digits else 1
            if index < 1:
                raise ParseError("variable index must be at least 1", token.line, token.column)
            return Var(index)
        if token.kind == "true":
            self.advance()
            return TOP
        if token.kind == "false":
            self.advance()
            return FALSUM
        if token.kind == "(":
            self.advance()
            f = self.implication()
            if self.current.kind != ")":
                raise self.error("expected ')'")
            self.advance()
            return f
        raise self.error("expected a formula")


def parse(text: str) -> Formula:
    """Parse ``text`` into a formula; raises :class:`ParseError` on bad input."""
    return _Parser(text).parse()


_IMP, _UNTIL, _UNARY, _ATOM = 1, 4, 5, 6


def _level(f: Formula) -> int:
    if isinstance(f, Implies):
        return _ATOM if f is TOP else _IMP
    if isinstance(f, Until):
        return _UNTIL
    if isinstance(f, Next):
        return _UNARY
    return _ATOM


def _tokens(f: Formula) -> Iterator[str]:
    # explicit stack: formulas produced by the reduction are too deep for recursion
    stack: list = [(f, 0)]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            yield item
            continue
        g, minimum = item
        if _level(g) < minimum:
            stack.extend([")", (g, 0), "("])
            continue
        if g is TOP:
            yield "true"
        elif isinstance(g, Falsum):
            yield "false"
        elif isinstance(g, Var):
            yield "p" if g.index == 1 else f"p{g.index}"
        elif isinstance(g, Next):
            stack.extend([(g.body, _UNARY), "X "])
        elif isinstance(g, Until):
            stack.extend([(g.rhs, _UNTIL), " U ", (g.lhs, _UNTIL + 1)])
        else:
            stack.extend([(g.rhs, _IMP), " -> ", (g.lhs, _IMP + 1)])


def write_formula(f: Formula, out: TextIO, chunk: int = 1 << 16) -> None:
    """Stream the canonical text of ``f`` to ``out`` without building one string."""
    buf: list[str] = []
    size = 0
    for token in _tokens(f):
        buf.append(token)
        size += len(token)
        if size >= chunk:
            out.write("".join(buf))
            buf.clear()
            size = 0
    out.write("".join(buf))


def format_formula(f: Formula) -> str:
    out = io.StringIO()
    write_formula(f, out)
    return out.getvalue()
