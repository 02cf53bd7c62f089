"""Tokenizer and recursive descent parser for Janus source text.

Binding strength, tightest first:

    * / %
    + - ^
    < > <= >= = == !=
    &
    |
    &&
    ||

all left-associative.  `=` and `==` are interchangeable spellings of the
equality comparison.  Sequencing is juxtaposition and parses to a right comb
of Seq nodes.  `//` starts a line comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .syntax import (
    INT32_MAX,
    INT32_MIN,
    ArrayAssign,
    Binop,
    Call,
    Const,
    Diagnostic,
    If,
    Index,
    Loop,
    ModOp,
    Program,
    ScalarAssign,
    Seq,
    Skip,
    Span,
    Statement,
    Uncall,
    Var,
    seq_of,
)

KEYWORDS = {
    "if", "then", "else", "fi", "from", "do", "loop", "until",
    "call", "uncall", "skip", "procedure",
}

# Terminators of a statement sequence.
_SEQ_FOLLOW = {"else", "fi", "loop", "until", "procedure"}

_TOKEN_RE = re.compile(
    r"""
      (?P<ws>\s+|//[^\n]*)
    | (?P<num>\d+)
    | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
    | (?P<op>\+=|-=|\^=|<=|>=|==|!=|&&|\|\||[-+^*/%&|<>=\[\]()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # "num" | "ident" | "op" | "kw" | "eof"
    text: str
    span: Span


class ParseError(Exception):
    def __init__(self, message: str, span: Span):
        super().__init__(message)
        self.diagnostic = Diagnostic("error", message, span)


def tokenize(source: str):
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            span = Span(pos, pos + 1, line, pos - line_start + 1)
            raise ParseError(f"unexpected character {source[pos]!r}", span)
        text = m.group(0)
        span = Span(pos, m.end(), line, pos - line_start + 1)
        if m.lastgroup == "ws":
            for i, ch in enumerate(text):
                if ch == "\n":
                    line += 1
                    line_start = pos + i + 1
        elif m.lastgroup == "num":
            tokens.append(Token("num", text, span))
        elif m.lastgroup == "ident":
            kind = "kw" if text in KEYWORDS else "ident"
            tokens.append(Token(kind, text, span))
        else:
            tokens.append(Token("op", text, span))
        pos = m.end()
    tokens.append(Token("eof", "", Span(pos, pos, line, pos - line_start + 1)))
    return tokens


# Binary operator precedence: higher binds tighter.
_PRECEDENCE = {
    "||": 1,
    "&&": 2,
    "|": 3,
    "&": 4,
    "<": 5, ">": 5, "<=": 5, ">=": 5, "=": 5, "==": 5, "!=": 5,
    "+": 6, "-": 6, "^": 6,
    "*": 7, "/": 7, "%": 7,
}

_MOD_OPS = {"+=": ModOp.PLUS, "-=": ModOp.MINUS, "^=": ModOp.XOR}


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    @property
    def cur(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind, text=None) -> Token:
        tok = self.cur
        if tok.kind != kind or (text is not None and tok.text != text):
            want = text if text is not None else kind
            raise ParseError(f"expected {want!r}, found {tok.text or 'end of input'!r}", tok.span)
        return self.advance()

    def at(self, kind, text=None) -> bool:
        tok = self.cur
        return tok.kind == kind and (text is None or tok.text == text)

    # -- expressions --

    def parse_expr(self, min_prec=1):
        left = self.parse_primary()
        while True:
            tok = self.cur
            prec = _PRECEDENCE.get(tok.text) if tok.kind == "op" else None
            if prec is None or prec < min_prec:
                return left
            self.advance()
            right = self.parse_expr(prec + 1)
            span = Span(left.span.start, right.span.end, left.span.line, left.span.col)
            op = "=" if tok.text == "==" else tok.text
            left = Binop(span=span, op=op, left=left, right=right)

    def parse_primary(self):
        tok = self.cur
        if tok.kind == "num":
            self.advance()
            return self._const(int(tok.text), tok.span)
        if tok.kind == "op" and tok.text == "-" and self.tokens[self.i + 1].kind == "num":
            self.advance()
            num = self.advance()
            span = Span(tok.span.start, num.span.end, tok.span.line, tok.span.col)
            return self._const(-int(num.text), span)
        if tok.kind == "ident":
            self.advance()
            if self.at("op", "["):
                self.advance()
                idx = self.parse_expr()
                close = self.expect("op", "]")
                span = Span(tok.span.start, close.span.end, tok.span.line, tok.span.col)
                return Index(span=span, name=tok.text, index=idx)
            return Var(span=tok.span, name=tok.text)
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            e = self.parse_expr()
            self.expect("op", ")")
            return e
        raise ParseError(f"expected expression, found {tok.text or 'end of input'!r}", tok.span)

    def _const(self, value, span):
        if not INT32_MIN <= value <= INT32_MAX:
            raise ParseError(f"constant {value} outside 32-bit range", span)
        return Const(span=span, value=value)

    # -- statements --

    def parse_stmt_seq(self) -> Statement:
        stmts = [self.parse_stmt()]
        while not self._at_seq_end():
            stmts.append(self.parse_stmt())
        return seq_of(stmts)

    def _at_seq_end(self) -> bool:
        tok = self.cur
        return tok.kind == "eof" or (tok.kind == "kw" and tok.text in _SEQ_FOLLOW)

    def parse_stmt(self) -> Statement:
        tok = self.cur
        if tok.kind == "kw":
            if tok.text == "skip":
                self.advance()
                return Skip(span=tok.span)
            if tok.text in ("call", "uncall"):
                self.advance()
                name = self.expect("ident")
                span = Span(tok.span.start, name.span.end, tok.span.line, tok.span.col)
                cls = Call if tok.text == "call" else Uncall
                return cls(span=span, name=name.text)
            if tok.text == "if":
                return self.parse_if()
            if tok.text == "from":
                return self.parse_loop()
            raise ParseError(f"unexpected keyword {tok.text!r}", tok.span)
        if tok.kind == "ident":
            return self.parse_assignment()
        raise ParseError(f"expected statement, found {tok.text or 'end of input'!r}", tok.span)

    def parse_assignment(self) -> Statement:
        name = self.expect("ident")
        index = None
        if self.at("op", "["):
            self.advance()
            index = self.parse_expr()
            self.expect("op", "]")
        tok = self.cur
        if tok.kind != "op" or tok.text not in _MOD_OPS:
            raise ParseError(f"expected '+=', '-=' or '^=', found {tok.text!r}", tok.span)
        self.advance()
        expr = self.parse_expr()
        span = Span(name.span.start, expr.span.end, name.span.line, name.span.col)
        if index is None:
            return ScalarAssign(span=span, name=name.text, op=_MOD_OPS[tok.text], expr=expr)
        return ArrayAssign(span=span, name=name.text, index=index, op=_MOD_OPS[tok.text], expr=expr)

    def parse_if(self) -> Statement:
        kw = self.expect("kw", "if")
        test = self.parse_expr()
        self.expect("kw", "then")
        then = self.parse_stmt_seq()
        self.expect("kw", "else")
        orelse = self.parse_stmt_seq()
        self.expect("kw", "fi")
        assertion = self.parse_expr()
        span = Span(kw.span.start, assertion.span.end, kw.span.line, kw.span.col)
        return If(span=span, test=test, then=then, orelse=orelse, assertion=assertion)

    def parse_loop(self) -> Statement:
        kw = self.expect("kw", "from")
        assertion = self.parse_expr()
        self.expect("kw", "do")
        do = self.parse_stmt_seq()
        self.expect("kw", "loop")
        loop = self.parse_stmt_seq()
        self.expect("kw", "until")
        test = self.parse_expr()
        span = Span(kw.span.start, test.span.end, kw.span.line, kw.span.col)
        return Loop(span=span, assertion=assertion, do=do, loop=loop, test=test)

    def parse_program(self, strict_grammar=False) -> Program:
        main = self.parse_stmt_seq()
        procedures = []
        seen = {}
        while self.at("kw", "procedure"):
            self.advance()
            name = self.expect("ident")
            if name.text in seen:
                raise ParseError(f"duplicate procedure name {name.text!r}", name.span)
            seen[name.text] = True
            body = self.parse_stmt_seq()
            procedures.append((name.text, body))
        eof = self.expect("eof")
        if strict_grammar and not procedures:
            raise ParseError("strict grammar requires at least one procedure", eof.span)
        return Program(main=main, procedures=tuple(procedures))


def parse(source: str, strict_grammar: bool = False) -> Program:
    """Parse Janus source text; raises ParseError with a spanned diagnostic."""
    return _Parser(tokenize(source)).parse_program(strict_grammar=strict_grammar)


def parse_expression(source: str):
    parser = _Parser(tokenize(source))
    e = parser.parse_expr()
    parser.expect("eof")
    return e
