"""Recursive-descent parser.

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := atom ('^' INT)? | '-' factor
    atom   := INT | 'q' ('^' '-'? INT)? | call | '(' expr ')'

Pochhammer-style calls take monomial arguments separated by ';', mirroring
the (a; q)_n notation.  ``poch(a1, a2, ...; q^k; n)`` is shorthand for the
product of the single-argument symbols.
"""

from __future__ import annotations

import dataclasses
from typing import Callable

from . import ast
from .lexer import Kind, Token, tokenize


class ParseError(ValueError):
    def __init__(self, message: str, offset: int, expected: tuple[str, ...] = ()):
        detail = f" (expected {', '.join(expected)})" if expected else ""
        super().__init__(f"{message} at offset {offset}{detail}")
        self.message = message
        self.offset = offset
        self.expected = expected


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.toks = tokens
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def advance(self) -> Token:
        t = self.toks[self.i]
        if t.kind is not Kind.EOF:
            self.i += 1
        return t

    def accept(self, kind: Kind) -> Token | None:
        if self.tok.kind is kind:
            return self.advance()
        return None

    def expect(self, kind: Kind, *also: str) -> Token:
        if self.tok.kind is not kind:
            shown = self.tok.text or "end of input"
            raise ParseError(f"unexpected {shown!r}", self.tok.start, (kind.value,) + also)
        return self.advance()

    # -- grammar ------------------------------------------------------------

    def parse(self) -> ast.Expr:
        e = self.expr()
        if self.tok.kind is not Kind.EOF:
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.start, ("+", "-", "*", "/", "end of input"))
        return e

    def expr(self) -> ast.Expr:
        start = self.tok.start
        left = self.term()
        while self.tok.kind in (Kind.PLUS, Kind.MINUS):
            op = self.advance()
            right = self.term()
            cls = ast.Add if op.kind is Kind.PLUS else ast.Sub
            left = cls(left, right, span=(start, self.toks[self.i - 1].end))
        return left

    def term(self) -> ast.Expr:
        start = self.tok.start
        left = self.factor()
        while self.tok.kind in (Kind.STAR, Kind.SLASH):
            op = self.advance()
            right = self.factor()
            cls = ast.Mul if op.kind is Kind.STAR else ast.Div
            left = cls(left, right, span=(start, self.toks[self.i - 1].end))
        return left

    def factor(self) -> ast.Expr:
        start = self.tok.start
        if self.accept(Kind.MINUS):
            child = self.factor()
            return ast.Neg(child, span=(start, self.toks[self.i - 1].end))
        node = self.atom()
        if self.accept(Kind.CARET):
            n = int(self.expect(Kind.INT).text)
            node = ast.Pow(node, n, span=(start, self.toks[self.i - 1].end))
        return node

    def atom(self) -> ast.Expr:
        t = self.tok
        if t.kind is Kind.INT:
            self.advance()
            return ast.Const(int(t.text), span=t.span)
        if t.kind is Kind.Q:
            self.advance()
            j = 1
            if self.accept(Kind.CARET):
                j = self.signed_int()
            return ast.Mono(1, j, span=(t.start, self.toks[self.i - 1].end))
        if t.kind is Kind.LPAREN:
            self.advance()
            e = self.expr()
            self.expect(Kind.RPAREN)
            return e
        if t.kind is Kind.IDENT:
            return self.call()
        raise ParseError(
            f"unexpected {t.text or 'end of input'!r}", t.start, ("INT", "q", "(", "function name", "-")
        )

    # -- pieces -------------------------------------------------------------

    def signed_int(self) -> int:
        neg = self.accept(Kind.MINUS) is not None
        v = int(self.expect(Kind.INT).text)
        return -v if neg else v

    def mono_arg(self) -> tuple[int, int]:
        """'-'? ('q' ('^' '-'? INT)? | '1') -> (sign, exponent)."""
        sign = -1 if self.accept(Kind.MINUS) else 1
        if self.accept(Kind.Q):
            a = self.signed_int() if self.accept(Kind.CARET) else 1
            return sign, a
        t = self.tok
        if t.kind is Kind.INT and t.text == "1":
            self.advance()
            return sign, 0
        raise ParseError("expected a monomial argument", t.start, ("q", "q^INT", "1"))

    def base_arg(self) -> int:
        self.expect(Kind.Q, "q^INT")
        k = int(self.expect(Kind.INT).text) if self.accept(Kind.CARET) else 1
        if k < 1:
            raise ParseError("base exponent must be positive", self.toks[self.i - 1].start)
        return k

    def int_args(self, name: str, count: int) -> list[int]:
        vals = []
        for idx in range(count):
            if idx:
                self._sep(Kind.COMMA, name, count)
            vals.append(self.signed_int())
        return vals

    def _sep(self, kind: Kind, name: str, arity: int | str) -> None:
        if self.tok.kind is not kind:
            raise ParseError(
                f"wrong number of arguments to {name} (takes {arity})", self.tok.start, (kind.value,)
            )
        self.advance()

    def call(self) -> ast.Expr:
        name_tok = self.advance()
        name = name_tok.text
        handler = _CALLS.get(name)
        if handler is None:
            raise ParseError(f"unknown function {name!r}", name_tok.start, tuple(sorted(_CALLS)))
        self.expect(Kind.LPAREN)
        node = handler(self, name)
        if self.tok.kind is Kind.EOF:
            raise ParseError(f"unclosed call to {name}", self.tok.start, (")",))
        if self.tok.kind is not Kind.RPAREN:
            raise ParseError(f"too many arguments to {name}", self.tok.start, (")",))
        end = self.advance().end
        return _with_span(node, (name_tok.start, end))

    # -- individual functions ----------------------------------------------

    def _poch(self, name: str) -> ast.Expr:
        args = [self.mono_arg()]
        while self.accept(Kind.COMMA):
            args.append(self.mono_arg())
        self._sep(Kind.SEMI, name, "args; q^k; n|inf")
        k = self.base_arg()
        self._sep(Kind.SEMI, name, "args; q^k; n|inf")
        if self.accept(Kind.INF):
            nodes = [ast.PochInf(s, a, k) for s, a in args]
        else:
            n = int(self.expect(Kind.INT, "inf").text)
            nodes = [ast.PochFin(s, a, k, n) for s, a in args]
        out = nodes[0]
        for nd in nodes[1:]:
            out = ast.Mul(out, nd)
        return out

    def _mono_base(self, cls: type, name: str) -> ast.Expr:
        sign, a = self.mono_arg()
        self._sep(Kind.SEMI, name, "z; q^k")
        return cls(sign, a, self.base_arg())

    def _dissect(self, name: str) -> ast.Expr:
        child = self.expr()
        self._sep(Kind.COMMA, name, 3)
        ell = int(self.expect(Kind.INT).text)
        self._sep(Kind.COMMA, name, 3)
        d = int(self.expect(Kind.INT).text)
        if ell < 1 or not 0 <= d < ell:
            raise ParseError("dissect needs ell >= 1 and 0 <= d < ell", self.toks[self.i - 1].start)
        return ast.Dissect(child, ell, d)

    def _subpow(self, name: str) -> ast.Expr:
        child = self.expr()
        self._sep(Kind.COMMA, name, 2)
        k = int(self.expect(Kind.INT).text)
        if k < 1:
            raise ParseError("subpow needs a positive power", self.toks[self.i - 1].start)
        return ast.SubPow(child, k)


def _with_span(node: ast.Expr, span: ast.Span) -> ast.Expr:
    return dataclasses.replace(node, span=span)


_CALLS: dict[str, Callable[[_Parser, str], ast.Expr]] = {
    "poch": _Parser._poch,
    "P": lambda p, name: p._mono_base(ast.BigP, name),
    "theta": lambda p, name: p._mono_base(ast.Theta, name),
    "P0": lambda p, name: ast.PZero(*p.int_args(name, 1)),
    "sigma": lambda p, name: ast.SigmaAB(*p.int_args(name, 3)),
    "sigma0": lambda p, name: ast.Sigma0B(*p.int_args(name, 2)),
    "S2": lambda p, name: ast.S2(*p.int_args(name, 2)),
    "g": lambda p, name: ast.G(*p.int_args(name, 2)),
    "rankgf": lambda p, name: ast.RankGF(*p.int_args(name, 2)),
    "mult": lambda p, name: ast.Multiplier(),
    "dissect": _Parser._dissect,
    "subpow": _Parser._subpow,
}


def parse_tokens(tokens: list[Token]) -> ast.Expr:
    parser = _Parser(tokens)
    try:
        return parser.parse()
    except RecursionError:
        raise ParseError("expression nested too deeply", parser.tok.start) from None


def parse(src: str) -> ast.Expr:
    return parse_tokens(tokenize(src))
