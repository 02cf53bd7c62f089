"""Abstract syntax for Janus programs.

Statements carry a source span and a unique node id.  Node ids give every
statement a stable identity that survives labeling and lets the reversible
engine's loop frames refer to subterms without copying them.  Structural
equality (`same_stmt` / `same_expr`) deliberately ignores spans and ids.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum

_node_ids = itertools.count(1)


def fresh_node_id() -> int:
    return next(_node_ids)


@dataclass(frozen=True)
class Span:
    start: int
    end: int
    line: int = 0
    col: int = 0

    def __str__(self):
        return f"{self.line}:{self.col}"


DUMMY_SPAN = Span(0, 0)


class ModOp(Enum):
    """The three invertible assignment operators."""

    PLUS = "+"
    MINUS = "-"
    XOR = "^"


# --- expressions ---------------------------------------------------------


@dataclass(frozen=True)
class Expression:
    span: Span = field(default=DUMMY_SPAN, compare=False)


@dataclass(frozen=True)
class Const(Expression):
    value: int = 0


@dataclass(frozen=True)
class Var(Expression):
    name: str = ""


@dataclass(frozen=True)
class Index(Expression):
    name: str = ""
    index: Expression = None


@dataclass(frozen=True)
class Binop(Expression):
    op: str = ""
    left: Expression = None
    right: Expression = None


# --- statements ----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Statement:
    span: Span = field(default=DUMMY_SPAN)
    node_id: int = field(default_factory=fresh_node_id)


@dataclass(frozen=True, eq=False)
class ScalarAssign(Statement):
    name: str = ""
    op: ModOp = ModOp.PLUS
    expr: Expression = None


@dataclass(frozen=True, eq=False)
class ArrayAssign(Statement):
    name: str = ""
    index: Expression = None
    op: ModOp = ModOp.PLUS
    expr: Expression = None


@dataclass(frozen=True, eq=False)
class If(Statement):
    test: Expression = None
    then: Statement = None
    orelse: Statement = None
    assertion: Expression = None


@dataclass(frozen=True, eq=False)
class Loop(Statement):
    # from `assertion` do `do` loop `loop` until `test`
    assertion: Expression = None
    do: Statement = None
    loop: Statement = None
    test: Expression = None


@dataclass(frozen=True, eq=False)
class Call(Statement):
    name: str = ""


@dataclass(frozen=True, eq=False)
class Uncall(Statement):
    name: str = ""


@dataclass(frozen=True, eq=False)
class Skip(Statement):
    pass


@dataclass(frozen=True, eq=False)
class Seq(Statement):
    first: Statement = None
    rest: Statement = None


@dataclass(frozen=True, eq=False)
class Start(Statement):
    """Unit entry marker; never appears in user source."""


@dataclass(frozen=True, eq=False)
class Stop(Statement):
    """Unit exit marker; never appears in user source."""


@dataclass(frozen=True)
class Program:
    main: Statement
    procedures: tuple = ()  # tuple of (name, Statement)

    def proc_names(self):
        return [name for name, _ in self.procedures]


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "error" | "warning"
    message: str
    span: Span = DUMMY_SPAN

    def __str__(self):
        return f"{self.severity}: {self.message} (at {self.span})"


INT32_MIN = -(2**31)
INT32_MAX = 2**31 - 1

# Inverse-procedure names use a superscript suffix that cannot be written in
# source (identifiers are ASCII), so user procedures can never collide.
INVERSE_SUFFIX = "⁻¹"


def inverse_name(name: str) -> str:
    if name.endswith(INVERSE_SUFFIX):
        return name[: -len(INVERSE_SUFFIX)]
    return name + INVERSE_SUFFIX


def surface_name(name: str) -> str:
    """Rendered spelling: the internal suffix becomes "_inv"."""
    if name.endswith(INVERSE_SUFFIX):
        return name[: -len(INVERSE_SUFFIX)] + "_inv"
    return name


def seq_of(stmts) -> Statement:
    """Right-associated sequence of one or more statements."""
    stmts = list(stmts)
    if not stmts:
        raise ValueError("empty sequence")
    out = stmts[-1]
    for s in reversed(stmts[:-1]):
        out = Seq(span=s.span, first=s, rest=out)
    return out


def seq_items(s: Statement):
    """Flatten nested Seq nodes into a list of non-Seq statements."""
    if isinstance(s, Seq):
        return seq_items(s.first) + seq_items(s.rest)
    return [s]


def same_expr(a: Expression, b: Expression) -> bool:
    if type(a) is not type(b):
        return False
    if isinstance(a, Const):
        return a.value == b.value
    if isinstance(a, Var):
        return a.name == b.name
    if isinstance(a, Index):
        return a.name == b.name and same_expr(a.index, b.index)
    if isinstance(a, Binop):
        return (
            a.op == b.op
            and same_expr(a.left, b.left)
            and same_expr(a.right, b.right)
        )
    raise TypeError(a)


def same_stmt(a: Statement, b: Statement) -> bool:
    """Structural equality modulo spans and node ids."""
    if type(a) is not type(b):
        return False
    if isinstance(a, ScalarAssign):
        return a.name == b.name and a.op == b.op and same_expr(a.expr, b.expr)
    if isinstance(a, ArrayAssign):
        return (
            a.name == b.name
            and a.op == b.op
            and same_expr(a.index, b.index)
            and same_expr(a.expr, b.expr)
        )
    if isinstance(a, If):
        return (
            same_expr(a.test, b.test)
            and same_stmt(a.then, b.then)
            and same_stmt(a.orelse, b.orelse)
            and same_expr(a.assertion, b.assertion)
        )
    if isinstance(a, Loop):
        return (
            same_expr(a.assertion, b.assertion)
            and same_stmt(a.do, b.do)
            and same_stmt(a.loop, b.loop)
            and same_expr(a.test, b.test)
        )
    if isinstance(a, (Call, Uncall)):
        return a.name == b.name
    if isinstance(a, (Skip, Start, Stop)):
        return True
    if isinstance(a, Seq):
        return same_stmt(a.first, b.first) and same_stmt(a.rest, b.rest)
    raise TypeError(a)


def same_program(a: Program, b: Program) -> bool:
    if len(a.procedures) != len(b.procedures):
        return False
    if not same_stmt(a.main, b.main):
        return False
    for (na, sa), (nb, sb) in zip(a.procedures, b.procedures):
        if na != nb or not same_stmt(sa, sb):
            return False
    return True
