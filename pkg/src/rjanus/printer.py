"""Pretty-printer.  parse(render(p)) is structurally equal to p."""

from __future__ import annotations

from .parser import _PRECEDENCE
from .syntax import (
    ArrayAssign,
    Binop,
    Call,
    Const,
    Expression,
    If,
    Index,
    Loop,
    Program,
    ScalarAssign,
    Seq,
    Skip,
    Start,
    Statement,
    Stop,
    Uncall,
    Var,
    seq_items,
    surface_name,
)


def render_expr(e: Expression, parent_prec: int = 0) -> str:
    if isinstance(e, Const):
        return str(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Index):
        return f"{e.name}[{render_expr(e.index)}]"
    if isinstance(e, Binop):
        prec = _PRECEDENCE[e.op]
        # Left-associative: the right child needs parens at equal precedence.
        text = "{} {} {}".format(
            render_expr(e.left, prec), e.op, render_expr(e.right, prec + 1)
        )
        if prec < parent_prec:
            return f"({text})"
        return text
    raise TypeError(e)


def render_stmt(s: Statement, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(s, Seq):
        return "\n".join(render_stmt(item, indent) for item in seq_items(s))
    if isinstance(s, ScalarAssign):
        return f"{pad}{s.name} {s.op.value}= {render_expr(s.expr)}"
    if isinstance(s, ArrayAssign):
        return f"{pad}{s.name}[{render_expr(s.index)}] {s.op.value}= {render_expr(s.expr)}"
    if isinstance(s, If):
        return (
            f"{pad}if {render_expr(s.test)} then\n"
            f"{render_stmt(s.then, indent + 1)}\n"
            f"{pad}else\n"
            f"{render_stmt(s.orelse, indent + 1)}\n"
            f"{pad}fi {render_expr(s.assertion)}"
        )
    if isinstance(s, Loop):
        return (
            f"{pad}from {render_expr(s.assertion)} do\n"
            f"{render_stmt(s.do, indent + 1)}\n"
            f"{pad}loop\n"
            f"{render_stmt(s.loop, indent + 1)}\n"
            f"{pad}until {render_expr(s.test)}"
        )
    if isinstance(s, Call):
        return f"{pad}call {surface_name(s.name)}"
    if isinstance(s, Uncall):
        return f"{pad}uncall {surface_name(s.name)}"
    if isinstance(s, Skip):
        return f"{pad}skip"
    if isinstance(s, Start):
        return f"{pad}start"
    if isinstance(s, Stop):
        return f"{pad}stop"
    raise TypeError(s)


def render(p: Program) -> str:
    """Render a program back to concrete syntax.

    Inverse-procedure names are spelled with an "_inv" suffix; a collision
    with a user-declared name of that spelling is an error.
    """
    surface = [surface_name(name) for name, _ in p.procedures]
    dupes = {n for n in surface if surface.count(n) > 1}
    if dupes:
        raise ValueError(f"procedure name collision when rendering: {sorted(dupes)}")
    parts = [render_stmt(p.main)]
    for name, body in p.procedures:
        parts.append(f"procedure {surface_name(name)}\n{render_stmt(body, 1)}")
    return "\n\n".join(parts) + "\n"


def stmt_summary(s: Statement) -> str:
    """One-line description of an elementary block, for CFG/UI labels."""
    if isinstance(s, ScalarAssign):
        return f"{s.name} {s.op.value}= {render_expr(s.expr)}"
    if isinstance(s, ArrayAssign):
        return f"{s.name}[{render_expr(s.index)}] {s.op.value}= {render_expr(s.expr)}"
    if isinstance(s, Call):
        return f"call {surface_name(s.name)}"
    if isinstance(s, Uncall):
        return f"uncall {surface_name(s.name)}"
    if isinstance(s, Skip):
        return "skip"
    if isinstance(s, Start):
        return "start"
    if isinstance(s, Stop):
        return "stop"
    raise TypeError(s)
